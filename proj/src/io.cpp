#include "aeuler/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "aeuler/errors.hpp"

namespace aeuler {

namespace {

constexpr std::array<char, 4> kMagic{'A', 'E', 'U', '2'};

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<unsigned char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), b.size());
}

void put_f64(std::ostream& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), b.size());
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) throw FormatError("truncated checkpoint");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) throw FormatError("truncated checkpoint");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::filesystem::path& path) {
  std::size_t used = 0;
  try {
    const double d = std::stod(s, &used);
    if (used == s.size()) return d;
  } catch (const std::exception&) {
  }
  throw FormatError(path.string() + ": bad number '" + s + "'");
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write checkpoint " + path.string());
    const GridSpec& g = c.omega.grid();
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, Checkpoint::kVersion);
    put_u32(out, static_cast<std::uint32_t>(g.n()));
    for (double d : {g.domain_length(), c.alpha, c.nu, c.delta, c.forcing_k_lo, c.forcing_k_hi,
                     c.forcing_amplitude, c.t, c.dt_next, c.dt_last}) {
      put_f64(out, d);
    }
    for (const Complex& z : c.omega.values()) {
      put_f64(out, z.real());
      put_f64(out, z.imag());
    }
    if (!out) throw FormatError("failed writing checkpoint " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open checkpoint " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError(path.string() + " is not a checkpoint (bad magic)");
  }
  const std::uint32_t version = get_u32(in);
  if (version != Checkpoint::kVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto n = static_cast<int>(get_u32(in));
  const double length = get_f64(in);
  GridSpec grid(n, length);
  Checkpoint c{.omega = SpectralField(grid)};
  c.alpha = get_f64(in);
  c.nu = get_f64(in);
  c.delta = get_f64(in);
  c.forcing_k_lo = get_f64(in);
  c.forcing_k_hi = get_f64(in);
  c.forcing_amplitude = get_f64(in);
  c.t = get_f64(in);
  c.dt_next = get_f64(in);
  c.dt_last = get_f64(in);
  for (Complex& z : c.omega.values()) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    z = Complex{re, im};
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError(path.string() + ": trailing bytes");
  return c;
}

std::string format_series_row(const DiagnosticsRecord& r) {
  return format_double(r.t) + "," + format_double(r.E) + "," + format_double(r.Z) + "," +
         format_double(r.E_H1) + "," + format_double(r.Z_H2) + "," + format_double(r.dt);
}

std::vector<DiagnosticsRecord> read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open series file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) {
    throw FormatError(path.string() + ": missing header '" + kSeriesHeader + "'");
  }
  std::vector<DiagnosticsRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 6) throw FormatError(path.string() + ": expected 6 columns");
    rows.push_back({to_double(f[0], path), to_double(f[1], path), to_double(f[2], path),
                    to_double(f[3], path), to_double(f[4], path), to_double(f[5], path)});
  }
  return rows;
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& s) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write spectrum " + path.string());
  out << "# t = " << format_double(s.t) << "\n";
  out << "k,E_k\n";
  for (int k = 1; k <= s.k_max(); ++k) {
    out << k << "," << format_double(s.energy[static_cast<std::size_t>(k)]) << "\n";
  }
}

Spectrum read_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open spectrum " + path.string());
  Spectrum s;
  s.energy.push_back(0.0);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# t = ", 0) == 0) {
      s.t = to_double(line.substr(6), path);
      continue;
    }
    if (line[0] == '#') continue;
    if (!header) {
      if (line != "k,E_k") throw FormatError(path.string() + ": missing header 'k,E_k'");
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 2) throw FormatError(path.string() + ": expected 2 columns");
    const auto k = static_cast<std::size_t>(to_double(f[0], path));
    if (k != s.energy.size()) throw FormatError(path.string() + ": shells must be consecutive from 1");
    s.energy.push_back(to_double(f[1], path));
  }
  if (!header) throw FormatError(path.string() + ": empty spectrum file");
  return s;
}

std::vector<Spectrum> read_spectrum_snapshots(const std::filesystem::path& run_dir) {
  const auto dir = run_dir / "spectra";
  if (!std::filesystem::is_directory(dir)) {
    throw FormatError("no spectra directory in " + run_dir.string());
  }
  std::vector<Spectrum> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("spectrum_", 0) == 0 && entry.path().extension() == ".csv") {
      out.push_back(read_spectrum(entry.path()));
    }
  }
  std::sort(out.begin(), out.end(), [](const Spectrum& a, const Spectrum& b) { return a.t < b.t; });
  return out;
}

}  // namespace aeuler
