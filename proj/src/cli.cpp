#include <CLI11.hpp>

#include <ostream>

#include "aeuler/errors.hpp"
#include "aeuler/io.hpp"
#include "aeuler/run.hpp"

namespace aeuler {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void print_fit(std::ostream& out, const SlopeFit& fit) {
  out << "slope " << format_double(fit.slope) << "\n"
      << "intercept " << format_double(fit.intercept) << "\n"
      << "residual " << format_double(fit.residual) << "\n"
      << "shells_used";
  for (int k : fit.shells_used) out << " " << k;
  out << "\nshells_excluded";
  for (int k : fit.shells_excluded) out << " " << k;
  out << "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forced-dissipative averaged Euler (Euler-alpha) turbulence and vortex-blob solver",
               "aeuler"};
  app.require_subcommand(1);

  std::string config_path, resume_path, out_dir;
  std::uint64_t seed = 0;
  auto* run_cmd = app.add_subcommand("run", "integrate a configured run");
  run_cmd->add_option("--config", config_path, "configuration file")->required();
  run_cmd->add_option("--resume", resume_path, "checkpoint to continue from");
  run_cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "random seed (overrides run.seed)");

  std::string run_dir, spectrum_out;
  double t_lo = 5.0, t_hi = 20.0;
  auto* spec_cmd = app.add_subcommand("spectrum", "time-average spectrum snapshots of a run");
  spec_cmd->add_option("run_dir", run_dir, "run output directory")->required();
  spec_cmd->add_option("--t-lo", t_lo, "window start");
  spec_cmd->add_option("--t-hi", t_hi, "window end");
  spec_cmd->add_option("--out", spectrum_out, "output CSV (default <run_dir>/spectrum_avg.csv)");

  std::string spectrum_file;
  int k_lo = 3, k_hi = 8;
  auto* slope_cmd = app.add_subcommand("slope", "fit a power law to a spectrum");
  slope_cmd->add_option("spectrum_file", spectrum_file, "spectrum CSV")->required();
  slope_cmd->add_option("--k-lo", k_lo, "first shell");
  slope_cmd->add_option("--k-hi", k_hi, "last shell");

  std::vector<double> fractions{0.75, 0.5};
  auto* cmp_cmd = app.add_subcommand("compare-resolution", "rerun at reduced resolutions");
  cmp_cmd->add_option("--config", config_path, "configuration file")->required();
  cmp_cmd->add_option("--fractions", fractions, "resolution fractions")->delimiter(',');
  cmp_cmd->add_option("--t-lo", t_lo, "averaging window start");
  cmp_cmd->add_option("--t-hi", t_hi, "averaging window end");
  cmp_cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");

  auto* vortex_cmd = app.add_subcommand("vortex", "integrate a point-vortex or blob system");
  vortex_cmd->add_option("--config", config_path, "configuration file")->required();
  vortex_cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) {
      RunConfig config = RunConfig::from_file(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (*seed_opt) config.seed = seed;
      std::optional<std::filesystem::path> resume;
      if (!resume_path.empty()) resume = resume_path;
      const RunSummary s = run(config, resume);
      out << "completed t=" << format_double(s.final_state.t) << " accepted=" << s.accepted_steps
          << " rejected=" << s.rejected_steps << " output=" << s.output_dir.string() << "\n";
    } else if (*spec_cmd) {
      const std::filesystem::path dest =
          spectrum_out.empty() ? std::filesystem::path(run_dir) / "spectrum_avg.csv"
                               : std::filesystem::path(spectrum_out);
      spectrum_command(run_dir, t_lo, t_hi, dest);
      out << "wrote " << dest.string() << "\n";
    } else if (*slope_cmd) {
      print_fit(out, slope_command(spectrum_file, k_lo, k_hi));
    } else if (*cmp_cmd) {
      RunConfig config = RunConfig::from_file(config_path);
      const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(config.output_dir)
                                                           : std::filesystem::path(out_dir);
      const ResolutionReport r = compare_resolution(config, fractions, t_lo, t_hi, dir);
      out << "fraction n k_max enstrophy_deviation\n";
      for (const auto& e : r.entries) {
        out << format_double(e.fraction) << " " << e.n << " " << e.k_max << " "
            << format_double(e.enstrophy_deviation) << "\n";
      }
    } else if (*vortex_cmd) {
      VortexConfig config = VortexConfig::from_file(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      const VortexReport r = vortex_command(config);
      out << "quantity initial final relative_drift\n";
      for (const auto& d : r.drifts) {
        out << d.name << " " << format_double(d.initial) << " " << format_double(d.final) << " "
            << format_double(d.relative_drift) << "\n";
      }
    }
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << " (state saved to " << e.checkpoint().string() << ")\n";
    return kExitNumerical;
  } catch (const StiffnessError& e) {
    err << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DivergenceError& e) {
    err << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SingularityError& e) {
    err << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace aeuler
