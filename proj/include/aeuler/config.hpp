#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "aeuler/dynamics.hpp"
#include "aeuler/grid.hpp"
#include "aeuler/vortex.hpp"

namespace aeuler {

/// Flat "dotted.key = value" text; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path);

/// Parameters of one forced-dissipative run. Defaults are used by the
/// reference experiments; every value can be overridden from a file.
struct RunConfig {
  int grid_n = 256;

  double k_alpha = 0.0;    // 0 means alpha = 0 (Euler)
  double nu = 1.0 / (85.0 * 85.0);
  double delta = 0.1;

  bool forcing_enabled = true;
  double forcing_k_lo = 10.0;
  double forcing_k_hi = 10.001;
  double forcing_amplitude = 1.0;

  double t_end = 20.0;
  double rtol = 1e-6;
  double atol = 1e-8;
  double dt_initial = 1e-3;
  std::uint64_t seed = 1;
  double perturbation = 5e-2;  // modulus of the seed noise on unforced modes
  int perturbation_k = 20;     // noise covers 1 <= |k| <= perturbation_k

  double series_interval = 0.1;
  double spectrum_interval = 0.1;
  double checkpoint_interval = 5.0;
  std::string output_dir = "run";

  /// Throws ConfigError on unknown keys or unparsable values.
  static RunConfig from_key_values(const std::map<std::string, std::string>& kv);
  static RunConfig from_file(const std::filesystem::path& path);

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  GridSpec grid() const { return GridSpec(grid_n); }
  PhysicsParams physics() const;
  StepController controller() const;
  std::string to_text() const;
};

/// Parameters of a Lagrangian blob run.
struct VortexConfig {
  BlobKernel kernel;
  std::string blobs;  // "x y gamma; x y gamma; ..."
  double t_end = 1.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  double dt_initial = 1e-3;
  double sample_interval = 0.0;
  std::string output_dir = "vortex";

  static VortexConfig from_key_values(const std::map<std::string, std::string>& kv);
  static VortexConfig from_file(const std::filesystem::path& path);
  VortexSystem system() const;
  StepController controller() const;
};

}  // namespace aeuler
