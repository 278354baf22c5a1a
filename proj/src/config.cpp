#include "aeuler/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aeuler/errors.hpp"
#include "aeuler/io.hpp"

namespace aeuler {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + v + "' is not a number");
  }
  if (used != v.size() || !std::isfinite(d)) throw ConfigError(key + ": '" + v + "' is not a finite number");
  return d;
}

long long parse_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + v + "' is not an integer");
  }
  if (used != v.size()) throw ConfigError(key + ": '" + v + "' is not an integer");
  return i;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": '" + v + "' is not a boolean");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);
    }
  }
  return kv;
}

std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path) {
  return parse_key_values(read_text(path));
}

RunConfig RunConfig::from_key_values(const std::map<std::string, std::string>& kv) {
  RunConfig c;
  for (const auto& [key, v] : kv) {
    if (key == "grid.n") {
      c.grid_n = static_cast<int>(parse_integer(key, v));
    } else if (key == "physics.k_alpha") {
      c.k_alpha = parse_double(key, v);
    } else if (key == "physics.nu") {
      c.nu = parse_double(key, v);
    } else if (key == "physics.delta") {
      c.delta = parse_double(key, v);
    } else if (key == "forcing.enabled") {
      c.forcing_enabled = parse_bool(key, v);
    } else if (key == "forcing.k_lo") {
      c.forcing_k_lo = parse_double(key, v);
    } else if (key == "forcing.k_hi") {
      c.forcing_k_hi = parse_double(key, v);
    } else if (key == "forcing.amplitude") {
      c.forcing_amplitude = parse_double(key, v);
    } else if (key == "run.t_end") {
      c.t_end = parse_double(key, v);
    } else if (key == "run.rtol") {
      c.rtol = parse_double(key, v);
    } else if (key == "run.atol") {
      c.atol = parse_double(key, v);
    } else if (key == "run.dt_initial") {
      c.dt_initial = parse_double(key, v);
    } else if (key == "run.seed") {
      const long long s = parse_integer(key, v);
      if (s < 0) throw ConfigError("run.seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "run.perturbation") {
      c.perturbation = parse_double(key, v);
    } else if (key == "run.perturbation_k") {
      c.perturbation_k = static_cast<int>(parse_integer(key, v));
    } else if (key == "output.series_interval") {
      c.series_interval = parse_double(key, v);
    } else if (key == "output.spectrum_interval") {
      c.spectrum_interval = parse_double(key, v);
    } else if (key == "output.checkpoint_interval") {
      c.checkpoint_interval = parse_double(key, v);
    } else if (key == "output.dir") {
      c.output_dir = v;
    } else {
      throw ConfigError("unknown configuration key " + key);
    }
  }
  c.validate();
  return c;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  return from_key_values(read_key_value_file(path));
}

void RunConfig::validate() const {
  if (grid_n < 8 || grid_n % 2 != 0) throw ConfigError("grid.n must be an even integer >= 8");
  if (!(k_alpha >= 0.0)) throw ConfigError("physics.k_alpha must be >= 0 (0 means Euler)");
  if (!(nu >= 0.0)) throw ConfigError("physics.nu must be >= 0");
  if (!(delta >= 0.0)) throw ConfigError("physics.delta must be >= 0");
  if (!(t_end >= 0.0)) throw ConfigError("run.t_end must be >= 0");
  if (!(rtol > 0.0)) throw ConfigError("run.rtol must be > 0");
  if (!(atol >= 0.0)) throw ConfigError("run.atol must be >= 0");
  if (!(dt_initial > 0.0)) throw ConfigError("run.dt_initial must be > 0");
  if (!(perturbation >= 0.0)) throw ConfigError("run.perturbation must be >= 0");
  if (perturbation_k < 0) throw ConfigError("run.perturbation_k must be >= 0");
  if (!(series_interval > 0.0)) throw ConfigError("output.series_interval must be > 0");
  if (!(spectrum_interval > 0.0)) throw ConfigError("output.spectrum_interval must be > 0");
  if (!(checkpoint_interval > 0.0)) throw ConfigError("output.checkpoint_interval must be > 0");
  if (output_dir.empty()) throw ConfigError("output.dir must not be empty");
  if (forcing_enabled) {
    // Throws ConfigError for an empty band or one past the dealiasing radius.
    ForcingSpec::band(grid(), forcing_k_lo, forcing_k_hi, forcing_amplitude, seed);
  }
}

PhysicsParams RunConfig::physics() const {
  PhysicsParams p;
  p.alpha = alpha_from_k_alpha(k_alpha);
  p.nu = nu;
  p.delta = delta;
  if (forcing_enabled) {
    p.forcing = ForcingSpec::band(grid(), forcing_k_lo, forcing_k_hi, forcing_amplitude, seed);
  }
  return p;
}

StepController RunConfig::controller() const {
  StepController c;
  c.rtol = rtol;
  c.atol = atol;
  c.dt = dt_initial;
  return c;
}

std::string RunConfig::to_text() const {
  std::ostringstream o;
  o << "grid.n = " << grid_n << "\n"
    << "physics.k_alpha = " << format_double(k_alpha) << "\n"
    << "physics.nu = " << format_double(nu) << "\n"
    << "physics.delta = " << format_double(delta) << "\n"
    << "forcing.enabled = " << (forcing_enabled ? "true" : "false") << "\n"
    << "forcing.k_lo = " << format_double(forcing_k_lo) << "\n"
    << "forcing.k_hi = " << format_double(forcing_k_hi) << "\n"
    << "forcing.amplitude = " << format_double(forcing_amplitude) << "\n"
    << "run.t_end = " << format_double(t_end) << "\n"
    << "run.rtol = " << format_double(rtol) << "\n"
    << "run.atol = " << format_double(atol) << "\n"
    << "run.dt_initial = " << format_double(dt_initial) << "\n"
    << "run.seed = " << seed << "\n"
    << "run.perturbation = " << format_double(perturbation) << "\n"
    << "run.perturbation_k = " << perturbation_k << "\n"
    << "output.series_interval = " << format_double(series_interval) << "\n"
    << "output.spectrum_interval = " << format_double(spectrum_interval) << "\n"
    << "output.checkpoint_interval = " << format_double(checkpoint_interval) << "\n"
    << "output.dir = " << output_dir << "\n";
  return o.str();
}

VortexConfig VortexConfig::from_key_values(const std::map<std::string, std::string>& kv) {
  VortexConfig c;
  for (const auto& [key, v] : kv) {
    if (key == "vortex.kernel") {
      if (v == "point") {
        c.kernel.kind = KernelKind::point;
      } else if (v == "bessel_k0") {
        c.kernel.kind = KernelKind::bessel_k0;
      } else {
        throw ConfigError("vortex.kernel must be 'point' or 'bessel_k0'");
      }
    } else if (key == "vortex.alpha") {
      c.kernel.alpha = parse_double(key, v);
    } else if (key == "vortex.blobs") {
      c.blobs = v;
    } else if (key == "vortex.t_end") {
      c.t_end = parse_double(key, v);
    } else if (key == "vortex.rtol") {
      c.rtol = parse_double(key, v);
    } else if (key == "vortex.atol") {
      c.atol = parse_double(key, v);
    } else if (key == "vortex.dt_initial") {
      c.dt_initial = parse_double(key, v);
    } else if (key == "vortex.sample_interval") {
      c.sample_interval = parse_double(key, v);
    } else if (key == "output.dir") {
      c.output_dir = v;
    } else {
      throw ConfigError("unknown vortex configuration key " + key);
    }
  }
  if (!(c.kernel.alpha >= 0.0)) throw ConfigError("vortex.alpha must be >= 0");
  if (c.kernel.kind == KernelKind::bessel_k0 && c.kernel.alpha == 0.0) {
    throw ConfigError("vortex.alpha must be > 0 for the bessel_k0 kernel");
  }
  if (!(c.t_end >= 0.0)) throw ConfigError("vortex.t_end must be >= 0");
  if (!(c.rtol > 0.0) || !(c.atol >= 0.0)) throw ConfigError("vortex tolerances must be positive");
  if (!(c.dt_initial > 0.0)) throw ConfigError("vortex.dt_initial must be > 0");
  if (!(c.sample_interval >= 0.0)) throw ConfigError("vortex.sample_interval must be >= 0");
  if (c.system().size() == 0) throw ConfigError("vortex.blobs lists no blobs");
  return c;
}

VortexConfig VortexConfig::from_file(const std::filesystem::path& path) {
  return from_key_values(read_key_value_file(path));
}

VortexSystem VortexConfig::system() const {
  VortexSystem s;
  s.kernel = kernel;
  std::istringstream list(blobs);
  std::string item;
  while (std::getline(list, item, ';')) {
    if (trim(item).empty()) continue;
    std::istringstream fields(item);
    double x = 0.0, y = 0.0, g = 0.0;
    std::string extra;
    if (!(fields >> x >> y >> g) || (fields >> extra)) {
      throw ConfigError("vortex.blobs entry '" + trim(item) + "' is not 'x y gamma'");
    }
    s.add({x, y}, g);
  }
  return s;
}

StepController VortexConfig::controller() const {
  StepController c;
  c.rtol = rtol;
  c.atol = atol;
  c.dt = dt_initial;
  return c;
}

}  // namespace aeuler
