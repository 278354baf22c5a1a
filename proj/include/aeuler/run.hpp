#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "aeuler/config.hpp"
#include "aeuler/diagnostics.hpp"
#include "aeuler/dynamics.hpp"

namespace aeuler {

struct RunSummary {
  EvolutionState final_state;
  std::vector<DiagnosticsRecord> series;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::filesystem::path output_dir;
};

/// Wraps the integrator failure that ended a run; the last committed state
/// has been written to `checkpoint`.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, std::filesystem::path checkpoint)
      : std::runtime_error(what), checkpoint_(std::move(checkpoint)) {}
  const std::filesystem::path& checkpoint() const { return checkpoint_; }

 private:
  std::filesystem::path checkpoint_;
};

/// Integrates config from its initial condition, or from a checkpoint, to
/// t_end. Writes series.csv, spectra/spectrum_*.csv and checkpoints/ under
/// the output directory.
RunSummary run(const RunConfig& config, const std::optional<std::filesystem::path>& resume = {});

/// True when config.output_dir holds a completed run of exactly this
/// configuration (same config.txt, final checkpoint at t_end).
bool finished_run_exists(const RunConfig& config);

/// Time-averages the snapshots of a run directory; writes the CSV when
/// `out` is set.
Spectrum spectrum_command(const std::filesystem::path& run_dir, double t_lo, double t_hi,
                          const std::optional<std::filesystem::path>& out = {});

SlopeFit slope_command(const std::filesystem::path& spectrum_file, int k_lo, int k_hi);

struct ResolutionEntry {
  double fraction = 1.0;
  int n = 0;
  int k_max = 0;
  Spectrum spectrum;               // time-averaged
  std::vector<double> deviation;   // |log10(E / E_full)| per shell 1..k_max
  double enstrophy_deviation = 0;  // RMS deviation over the enstrophy range
};

struct ResolutionReport {
  int enstrophy_k_lo = 14;
  int enstrophy_k_hi = 0;
  std::vector<ResolutionEntry> entries;  // full resolution first
};

/// Grid size used for a resolution fraction: the nearest even integer.
int reduced_grid_size(int n, double fraction);

/// Runs config at full resolution and at each fraction of it with identical
/// physics, then compares time-averaged spectra over [t_lo, t_hi]. Runs go
/// to out_dir/n<N>; a directory that already holds the finished run is
/// reused instead of recomputed. The enstrophy range is [14, k_max/2] of
/// the full run, clipped to each reduced run's k_max.
ResolutionReport compare_resolution(const RunConfig& config, const std::vector<double>& fractions,
                                    double t_lo, double t_hi, const std::filesystem::path& out_dir);

struct InvariantDrift {
  std::string name;
  double initial = 0.0;
  double final = 0.0;
  double relative_drift = 0.0;
};

struct VortexReport {
  std::vector<TrajectorySample> trajectory;
  std::vector<InvariantDrift> drifts;  // circulation, impulse_x, impulse_y, angular_impulse, hamiltonian
};

VortexReport vortex_command(const VortexConfig& config);

/// CLI entry point: run, spectrum, slope, compare-resolution, vortex.
/// Returns 0 on success, 2 on configuration errors, 3 on numerical abort.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aeuler
