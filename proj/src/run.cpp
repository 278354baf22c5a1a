#include "aeuler/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "aeuler/cash_karp.hpp"
#include "aeuler/errors.hpp"
#include "aeuler/io.hpp"
#include "aeuler/spectral.hpp"

namespace aeuler {

namespace {

// Output events fire at integer multiples of their interval.
struct Schedule {
  double interval;
  long index;  // of the next event

  Schedule(double interval_, double t)
      : interval(interval_), index(static_cast<long>(std::floor(t / interval_ + 1e-9)) + 1) {}
  double next() const { return static_cast<double>(index) * interval; }
};

std::string numbered(const std::string& stem, long index, const std::string& ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06ld%s", stem.c_str(), index, ext.c_str());
  return buf;
}

DiagnosticsRecord record(const EvolutionState& s, double alpha, double dt) {
  const Energies e = energies(s.omega, alpha);
  return {s.t, e.E, e.Z, e.E_H1, e.Z_H2, dt};
}

Checkpoint make_checkpoint(const RunConfig& config, const PhysicsParams& p, const EvolutionState& s,
                           double dt_next, double dt_last) {
  Checkpoint c{.omega = s.omega};
  c.alpha = p.alpha;
  c.nu = p.nu;
  c.delta = p.delta;
  c.forcing_k_lo = config.forcing_k_lo;
  c.forcing_k_hi = config.forcing_k_hi;
  c.forcing_amplitude = config.forcing_enabled ? config.forcing_amplitude : 0.0;
  c.t = s.t;
  c.dt_next = dt_next;
  c.dt_last = dt_last;
  return c;
}

void check_resume_compatible(const RunConfig& config, const PhysicsParams& p, const Checkpoint& c) {
  if (c.omega.grid() != config.grid()) throw ConfigError("checkpoint grid differs from grid.n");
  if (c.alpha != p.alpha || c.nu != p.nu || c.delta != p.delta) {
    throw ConfigError("checkpoint physics (alpha, nu, delta) differs from the configuration");
  }
  if (!(c.dt_next > 0.0)) throw ConfigError("checkpoint carries no usable step size");
}

}  // namespace

bool finished_run_exists(const RunConfig& config) {
  const auto dir = std::filesystem::path(config.output_dir);
  std::ifstream in(dir / "config.txt");
  if (!in) return false;
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text != config.to_text()) return false;
  try {
    return read_checkpoint(dir / "checkpoints" / "final.bin").t == config.t_end;
  } catch (const FormatError&) {
    return false;
  }
}

RunSummary run(const RunConfig& config, const std::optional<std::filesystem::path>& resume) {
  config.validate();
  const GridSpec grid = config.grid();
  const PhysicsParams params = config.physics();
  const Spectral spectral(grid);
  StepController ctl = config.controller();

  RunSummary summary{EvolutionState{SpectralField(grid), 0.0}, {}, 0, 0, config.output_dir};
  EvolutionState& state = summary.final_state;
  double dt_last = 0.0;
  if (resume) {
    const Checkpoint c = read_checkpoint(*resume);
    check_resume_compatible(config, params, c);
    state = EvolutionState{c.omega, c.t};
    ctl.dt = c.dt_next;
    dt_last = c.dt_last;
  } else {
    const ForcingSpec forcing = params.forcing.value_or(ForcingSpec{});
    state = initial_condition(grid, forcing, config.seed);
    add_seed_perturbation(state, forcing, config.perturbation, config.perturbation_k, config.seed);
  }
  if (config.t_end < state.t) throw ConfigError("run.t_end lies before the resumed time");

  const auto out_dir = std::filesystem::path(config.output_dir);
  std::filesystem::create_directories(out_dir / "spectra");
  std::filesystem::create_directories(out_dir / "checkpoints");
  {
    std::ofstream cfg(out_dir / "config.txt", std::ios::trunc);
    cfg << config.to_text();
  }
  // A resumed run keeps the history written before its checkpoint.
  std::vector<DiagnosticsRecord> history;
  if (resume && std::filesystem::exists(out_dir / "series.csv")) {
    try {
      for (const auto& r : read_series(out_dir / "series.csv")) {
        if (r.t < state.t) history.push_back(r);
      }
    } catch (const FormatError&) {
      history.clear();
    }
  }
  std::ofstream series(out_dir / "series.csv", std::ios::trunc);
  if (!series) throw ConfigError("cannot write to output directory " + out_dir.string());
  series << kSeriesHeader << "\n";
  for (const auto& r : history) series << format_series_row(r) << "\n";

  auto emit_row = [&] {
    summary.series.push_back(record(state, params.alpha, dt_last));
    series << format_series_row(summary.series.back()) << "\n";
  };
  auto emit_spectrum = [&](long index) {
    write_spectrum(out_dir / "spectra" / numbered("spectrum", index, ".csv"),
                   shell_spectrum(state.omega, state.t));
  };

  Schedule rows(config.series_interval, state.t);
  Schedule spectra(config.spectrum_interval, state.t);
  Schedule checkpoints(config.checkpoint_interval, state.t);

  emit_row();
  const double on_grid = state.t / config.spectrum_interval;
  if (std::abs(on_grid - std::round(on_grid)) < 1e-9) emit_spectrum(std::lround(on_grid));

  const RhsFunction<SpectralField> f = [&](double, const SpectralField& omega) {
    return rhs(spectral, omega, params);
  };
  PostStepHook<SpectralField> project;
  if (params.forcing) {
    project = [&](SpectralField& omega) { omega = apply_forcing(std::move(omega), *params.forcing); };
  }

  while (state.t < config.t_end) {
    const double target = std::min({config.t_end, rows.next(), spectra.next(), checkpoints.next()});
    try {
      const AdvanceLog log = advance(state.omega, state.t, f, ctl, target, project);
      summary.accepted_steps += log.accepted;
      summary.rejected_steps += log.rejected;
      if (log.accepted > 0) dt_last = log.last_dt;
    } catch (const std::runtime_error& e) {
      if (!dynamic_cast<const StiffnessError*>(&e) && !dynamic_cast<const DivergenceError*>(&e)) throw;
      const auto path = out_dir / "checkpoints" / "abort.bin";
      write_checkpoint(path, make_checkpoint(config, params, state, ctl.dt, dt_last));
      series.flush();
      throw NumericalAbort(e.what(), path);
    }
    if (state.t >= rows.next()) {
      emit_row();
      ++rows.index;
    } else if (state.t >= config.t_end) {
      emit_row();
    }
    if (state.t >= spectra.next()) {
      emit_spectrum(spectra.index);
      ++spectra.index;
    }
    if (state.t >= checkpoints.next()) {
      write_checkpoint(out_dir / "checkpoints" / numbered("ckpt", checkpoints.index, ".bin"),
                       make_checkpoint(config, params, state, ctl.dt, dt_last));
      ++checkpoints.index;
    }
  }
  write_checkpoint(out_dir / "checkpoints" / "final.bin",
                   make_checkpoint(config, params, state, ctl.dt, dt_last));
  return summary;
}

Spectrum spectrum_command(const std::filesystem::path& run_dir, double t_lo, double t_hi,
                          const std::optional<std::filesystem::path>& out) {
  const auto snapshots = read_spectrum_snapshots(run_dir);
  Spectrum mean = time_averaged_spectrum(snapshots, t_lo, t_hi);
  if (out) write_spectrum(*out, mean);
  return mean;
}

SlopeFit slope_command(const std::filesystem::path& spectrum_file, int k_lo, int k_hi) {
  return fit_slope(read_spectrum(spectrum_file), k_lo, k_hi);
}

int reduced_grid_size(int n, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("resolution fractions must lie in (0, 1]");
  const int m = 2 * static_cast<int>(std::lround(0.5 * fraction * n));
  if (m < 8) throw ConfigError("resolution fraction leaves fewer than 8 grid points");
  return m;
}

ResolutionReport compare_resolution(const RunConfig& config, const std::vector<double>& fractions,
                                    double t_lo, double t_hi, const std::filesystem::path& out_dir) {
  config.validate();
  auto averaged = [&](int n) {
    RunConfig c = config;
    c.grid_n = n;
    c.output_dir = (out_dir / ("n" + std::to_string(n))).string();
    c.validate();
    if (!finished_run_exists(c)) run(c);
    return spectrum_command(c.output_dir, t_lo, t_hi, out_dir / ("spectrum_n" + std::to_string(n) + ".csv"));
  };

  ResolutionReport report;
  const int n_full = config.grid_n;
  report.enstrophy_k_hi = GridSpec(n_full).k_max() / 2;
  const Spectrum full = averaged(n_full);

  auto make_entry = [&](double fraction, int n, const Spectrum& s) {
    ResolutionEntry e{fraction, n, GridSpec(n).k_max(), s, {}, 0.0};
    e.deviation.assign(static_cast<std::size_t>(e.k_max) + 1, 0.0);
    for (int k = 1; k <= std::min(e.k_max, full.k_max()); ++k) {
      const double a = s.energy[static_cast<std::size_t>(k)];
      const double b = full.energy[static_cast<std::size_t>(k)];
      e.deviation[static_cast<std::size_t>(k)] = (a > 0.0 && b > 0.0) ? std::abs(std::log10(a / b)) : 0.0;
    }
    const int hi = std::min(report.enstrophy_k_hi, e.k_max);
    double sum = 0.0;
    int count = 0;
    for (int k = report.enstrophy_k_lo; k <= hi; ++k) {
      const double d = e.deviation[static_cast<std::size_t>(k)];
      sum += d * d;
      ++count;
    }
    e.enstrophy_deviation = count > 0 ? std::sqrt(sum / count) : 0.0;
    return e;
  };

  report.entries.push_back(make_entry(1.0, n_full, full));
  for (double fraction : fractions) {
    const int n = reduced_grid_size(n_full, fraction);
    const Spectrum s = n == n_full ? averaged(n_full) : averaged(n);
    report.entries.push_back(make_entry(fraction, n, s));
  }

  std::ofstream out(out_dir / "resolution_report.csv", std::ios::trunc);
  out << "fraction,n,k_max,enstrophy_deviation\n";
  for (const auto& e : report.entries) {
    out << format_double(e.fraction) << "," << e.n << "," << e.k_max << ","
        << format_double(e.enstrophy_deviation) << "\n";
    std::ofstream dev(out_dir / ("deviation_n" + std::to_string(e.n) + ".csv"), std::ios::trunc);
    dev << "k,deviation\n";
    for (int k = 1; k <= e.k_max; ++k) {
      dev << k << "," << format_double(e.deviation[static_cast<std::size_t>(k)]) << "\n";
    }
  }
  return report;
}

VortexReport vortex_command(const VortexConfig& config) {
  VortexSystem system = config.system();
  StepController ctl = config.controller();

  struct Invariants {
    double circulation, px, py, angular, hamiltonian;
  };
  auto measure = [](const VortexSystem& s) {
    const Point p = linear_impulse(s);
    return Invariants{total_circulation(s), p.x, p.y, angular_impulse(s), blob_hamiltonian(s)};
  };
  const Invariants before = measure(system);

  VortexReport report;
  report.trajectory = evolve(system, config.t_end, ctl, config.sample_interval);
  const Invariants after = measure(system);

  auto drift = [](const std::string& name, double a, double b) {
    const double scale = std::abs(a);
    return InvariantDrift{name, a, b, scale > 0.0 ? std::abs(b - a) / scale : std::abs(b - a)};
  };
  report.drifts = {drift("circulation", before.circulation, after.circulation),
                   drift("impulse_x", before.px, after.px),
                   drift("impulse_y", before.py, after.py),
                   drift("angular_impulse", before.angular, after.angular),
                   drift("hamiltonian", before.hamiltonian, after.hamiltonian)};

  const auto out_dir = std::filesystem::path(config.output_dir);
  std::filesystem::create_directories(out_dir);
  std::ofstream traj(out_dir / "trajectory.csv", std::ios::trunc);
  traj << "t";
  for (std::size_t i = 1; i <= system.size(); ++i) traj << ",x" << i << ",y" << i;
  traj << "\n";
  for (const auto& sample : report.trajectory) {
    traj << format_double(sample.t);
    for (double v : sample.positions) traj << "," << format_double(v);
    traj << "\n";
  }
  std::ofstream inv(out_dir / "invariants.csv", std::ios::trunc);
  inv << "quantity,initial,final,relative_drift\n";
  for (const auto& d : report.drifts) {
    inv << d.name << "," << format_double(d.initial) << "," << format_double(d.final) << ","
        << format_double(d.relative_drift) << "\n";
  }
  return report;
}

}  // namespace aeuler
