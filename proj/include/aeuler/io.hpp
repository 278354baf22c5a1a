#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aeuler/diagnostics.hpp"
#include "aeuler/grid.hpp"
#include "aeuler/spectral_field.hpp"

namespace aeuler {

/// Binary restart file, little-endian:
///   "AEU2" | u32 version | u32 n |
///   f64 domain_length, alpha, nu, delta, forcing_k_lo, forcing_k_hi,
///       forcing_amplitude, t, dt_next, dt_last |
///   n * (n/2 + 1) coefficients as interleaved f64 (re, im), row-major.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  double alpha = 0.0;
  double nu = 0.0;
  double delta = 0.0;
  double forcing_k_lo = 0.0;
  double forcing_k_hi = 0.0;
  double forcing_amplitude = 0.0;
  double t = 0.0;
  double dt_next = 0.0;
  double dt_last = 0.0;
  SpectralField omega;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::filesystem::path& path);

inline constexpr const char* kSeriesHeader = "t,E,Z,E_H1,Z_H2,dt";

std::string format_series_row(const DiagnosticsRecord& r);
std::vector<DiagnosticsRecord> read_series(const std::filesystem::path& path);

/// "# t = <time>" line, "k,E_k" header, then one row per shell 1..k_max.
void write_spectrum(const std::filesystem::path& path, const Spectrum& spectrum);
Spectrum read_spectrum(const std::filesystem::path& path);
/// All snapshot files spectrum_*.csv under run_dir/spectra, ordered by time.
std::vector<Spectrum> read_spectrum_snapshots(const std::filesystem::path& run_dir);

/// Shortest round-trip decimal representation used in all text outputs.
std::string format_double(double v);

}  // namespace aeuler
