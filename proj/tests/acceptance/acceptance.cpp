// Acceptance checks, one line per criterion. Long runs live under the work
// directory and are reused when a finished run with the same configuration
// is already there.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aeuler/cash_karp.hpp"
#include "aeuler/config.hpp"
#include "aeuler/diagnostics.hpp"
#include "aeuler/dynamics.hpp"
#include "aeuler/io.hpp"
#include "aeuler/run.hpp"
#include "aeuler/spectral.hpp"
#include "aeuler/vortex.hpp"
#include "support/oracles.hpp"
#include "support/quadrature.hpp"

namespace fs = std::filesystem;
using namespace aeuler;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1 ------------------------------------------------------------------------

Outcome inviscid_conservation() {
  const GridSpec g(128);
  const Spectral sp(g);
  std::ostringstream d;
  bool ok = true;
  for (double alpha : {1.0 / 21.0, 0.0}) {
    PhysicsParams p;
    p.alpha = alpha;
    auto omega = sp.dealias(testing::random_field(g, 101));
    const Energies e0 = energies(omega, alpha);
    const RhsFunction<SpectralField> f = [&](double, const SpectralField& w) { return rhs(sp, w, p); };
    StepController ctl;
    ctl.rtol = 1e-10;
    ctl.atol = 1e-14;
    ctl.dt = 1e-4;
    double t = 0.0;
    advance(omega, t, f, ctl, 1.0);
    const Energies e1 = energies(omega, alpha);
    const double de = alpha > 0 ? rel(e1.E_H1, e0.E_H1) : rel(e1.E, e0.E);
    const double dz = alpha > 0 ? rel(e1.Z_H2, e0.Z_H2) : rel(e1.Z, e0.Z);
    ok = ok && de < 1e-8 && dz < 1e-8;
    d << (alpha > 0 ? "alpha=1/21 E_H1 " : "alpha=0 E ") << fmt(de) << (alpha > 0 ? " Z_H2 " : " Z ") << fmt(dz)
      << "; ";
  }
  return {ok, d.str() + "limit 1e-8"};
}

// 2 ------------------------------------------------------------------------

Outcome galerkin_oracle() {
  double worst = 0.0;
  for (int n : {32, 64}) {
    const GridSpec g(n);
    const Spectral sp(g);
    for (double alpha : {0.0, 0.05, 0.1}) {
      PhysicsParams p;
      p.alpha = alpha;
      p.nu = 0.02;
      p.delta = 0.1;
      for (std::uint64_t s = 0; s < 10; ++s) {
        const auto omega = sp.dealias(testing::random_field(g, 1000 + s));
        const auto a = rhs(sp, omega, p);
        const auto b = testing::galerkin_rhs(omega, p);
        worst = std::max(worst, max_abs_difference(a, b) / max_abs(b));
      }
    }
  }
  return {worst < 1e-10, "max relative difference " + fmt(worst) + " over 60 states; limit 1e-10"};
}

// 3 ------------------------------------------------------------------------

struct Scalar {
  std::vector<double> v;
  std::span<double> values() { return v; }
  std::span<const double> values() const { return v; }
};

Outcome cash_karp_order() {
  const RhsFunction<Scalar> f = [](double, const Scalar& y) { return Scalar{{-y.v[0]}}; };
  std::vector<double> lh, le;
  for (int steps : {8, 16, 32, 64}) {
    Scalar y{{1.0}};
    double t = 0.0;
    integrate_fixed(y, t, f, 1.0 / steps, static_cast<std::size_t>(steps));
    lh.push_back(std::log(1.0 / steps));
    le.push_back(std::log(std::abs(y.v[0] - std::exp(-1.0))));
  }
  const double mx = (lh[0] + lh[1] + lh[2] + lh[3]) / 4;
  const double my = (le[0] + le[1] + le[2] + le[3]) / 4;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < 4; ++i) {
    sxy += (lh[i] - mx) * (le[i] - my);
    sxx += (lh[i] - mx) * (lh[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope >= 4.5 && slope <= 5.5, "slope " + fmt(slope) + " in [4.5, 5.5]"};
}

// 4, 5, 6, 8 ----------------------------------------------------------------

const std::vector<int> kAlphas = {0, 42, 21, 14};  // increasing alpha

RunConfig reference_config(const fs::path& work, int k_alpha) {
  RunConfig c;
  c.grid_n = 256;
  c.k_alpha = k_alpha;
  c.t_end = 20.0;
  c.output_dir = (work / ("alpha" + std::to_string(k_alpha)) / "n256").string();
  return c;
}

const RunConfig& ensure_run(const RunConfig& c) {
  if (!finished_run_exists(c)) {
    std::cout << "  running k_alpha=" << c.k_alpha << " n=" << c.grid_n << " -> " << c.output_dir << std::endl;
    run(c);
  }
  return c;
}

double window_mean(const std::vector<DiagnosticsRecord>& rows, double lo, double hi, double DiagnosticsRecord::*m) {
  double sum = 0.0;
  int count = 0;
  for (const auto& r : rows) {
    if (r.t >= lo - 1e-9 && r.t <= hi + 1e-9) {
      sum += r.*m;
      ++count;
    }
  }
  return sum / count;
}

Outcome mean_energy_trend(const fs::path& work) {
  std::vector<double> e, z;
  for (int k : kAlphas) {
    const auto rows = read_series(fs::path(ensure_run(reference_config(work, k)).output_dir) / "series.csv");
    e.push_back(window_mean(rows, 10, 20, &DiagnosticsRecord::E));
    z.push_back(window_mean(rows, 10, 20, &DiagnosticsRecord::Z));
  }
  bool increasing = true;
  for (std::size_t i = 1; i < e.size(); ++i) increasing = increasing && e[i] > e[i - 1];
  bool below = true;
  for (std::size_t i = 1; i < z.size(); ++i) below = below && z[i] < z[0];
  const double zmax = *std::max_element(z.begin() + 1, z.end());
  const double zmin = *std::min_element(z.begin() + 1, z.end());
  const double spread = zmax / zmin - 1.0;
  std::ostringstream d;
  d << "<E> k_alpha 0/42/21/14: " << fmt(e[0]) << " " << fmt(e[1]) << " " << fmt(e[2]) << " " << fmt(e[3])
    << (increasing ? " increasing" : " NOT increasing") << "; <Z>: " << fmt(z[0]) << " " << fmt(z[1]) << " "
    << fmt(z[2]) << " " << fmt(z[3]) << (below ? " below alpha=0" : " NOT below alpha=0") << ", spread "
    << fmt(spread) << " (limit 0.25)";
  return {increasing && below && spread <= 0.25, d.str()};
}

std::vector<Spectrum> averaged_spectra(const fs::path& work) {
  std::vector<Spectrum> s;
  for (int k : kAlphas) s.push_back(spectrum_command(ensure_run(reference_config(work, k)).output_dir, 5, 20));
  return s;
}

Outcome spectrum_trend(const fs::path& work) {
  const auto s = averaged_spectra(work);
  std::vector<int> bad_low, bad_high;
  for (int k = 3; k <= 8; ++k) {
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!(s[i].energy[k] > s[i - 1].energy[k])) {
        bad_low.push_back(k);
        break;
      }
    }
  }
  for (int k = 14; k <= 40; ++k) {
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!(s[i].energy[k] < s[i - 1].energy[k])) {
        bad_high.push_back(k);
        break;
      }
    }
  }
  std::ostringstream d;
  d << "shells [3,8] increasing with alpha: " << (6 - bad_low.size()) << "/6; shells [14,40] decreasing: "
    << (27 - bad_high.size()) << "/27";
  if (!bad_low.empty() || !bad_high.empty()) {
    d << "; failing shells";
    for (int k : bad_low) d << " " << k;
    for (int k : bad_high) d << " " << k;
  }
  return {bad_low.empty() && bad_high.empty(), d.str()};
}

Outcome slope_bracketing(const fs::path& work) {
  const auto s = averaged_spectra(work);
  const int hi = GridSpec(256).k_max() / 2;
  const double energy14 = fit_slope(s[3], 3, 8).slope;
  std::vector<double> z;
  for (const auto& sp : s) z.push_back(fit_slope(sp, 14, hi).slope);
  const bool bracket = energy14 >= -3.0 - 0.4 && energy14 <= -5.0 / 3.0 + 0.4;
  bool steeper = true;
  for (std::size_t i = 1; i < z.size(); ++i) steeper = steeper && z[i] < z[0];
  std::ostringstream d;
  d << "energy slope k_alpha=14 " << fmt(energy14) << " in [-3.4, -1.267]; enstrophy slopes [14," << hi
    << "] k_alpha 0/42/21/14: " << fmt(z[0]) << " " << fmt(z[1]) << " " << fmt(z[2]) << " " << fmt(z[3])
    << (steeper ? " (nonzero alpha steeper)" : " (NOT all steeper)");
  return {bracket && steeper, d.str()};
}

Outcome resolution_trend(const fs::path& work) {
  std::ostringstream d;
  bool ok = true;
  std::vector<bool> orders;
  for (int k : {0, 21}) {
    const RunConfig c = reference_config(work, k);
    const auto r = compare_resolution(c, {0.75, 0.5}, 5, 20, work / ("alpha" + std::to_string(k)));
    const double d75 = r.entries[1].enstrophy_deviation;
    const double d50 = r.entries[2].enstrophy_deviation;
    orders.push_back(d50 > d75);
    ok = ok && d50 > d75;
    d << "k_alpha=" << k << " dev75 " << fmt(d75) << " dev50 " << fmt(d50) << "; ";
  }
  ok = ok && orders[0] == orders[1];
  d << (ok ? "50% exceeds 75% for both" : "ordering check failed");
  return {ok, d.str()};
}

// 7 ------------------------------------------------------------------------

Outcome slope_table() {
  using S = Subrange;
  using R = Regime;
  const Rational got[4] = {predicted_slope(S::enstrophy_cascade, R::alpha_much_smaller).b(),
                           predicted_slope(S::enstrophy_cascade, R::alpha_much_larger).b(),
                           predicted_slope(S::energy_cascade, R::alpha_much_smaller).b(),
                           predicted_slope(S::energy_cascade, R::alpha_much_larger).b()};
  const Rational want[4] = {Rational(-3), Rational(-17, 3), Rational(-5, 3), Rational(-3)};
  std::ostringstream d;
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    ok = ok && got[i] == want[i];
    d << got[i].num << "/" << got[i].den << (i < 3 ? " " : "");
  }
  return {ok, "{" + d.str() + "}"};
}

// 9 ------------------------------------------------------------------------

Outcome vortex_checks() {
  std::ostringstream d;
  // shielded Gaussian: zero net circulation, so the periodic images and the
  // far field of the plane both vanish
  const GridSpec g(128);
  const Spectral sp(g);
  const double alpha = 1.0 / 21.0;
  const double sigma = 0.4;
  const double h = g.spacing();
  std::vector<double> q(g.physical_size());
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      const double dx = i * h - kPi, dy = j * h - kPi;
      const double s = (dx * dx + dy * dy) / (sigma * sigma);
      q[static_cast<std::size_t>(i) * g.n() + j] = (1.0 - s) * std::exp(-s);
    }
  }
  const auto omega = sp.helmholtz_inverse(sp.forward_transform(q), alpha);
  const auto [u1h, u2h] = sp.velocity_from_streamfunction(sp.poisson_solve(omega));
  const auto u1 = sp.inverse_transform(u1h);
  const auto u2 = sp.inverse_transform(u2h);
  const VortexSystem blobs = sample_field_to_blobs(q, g, BlobKernel{KernelKind::bessel_k0, alpha});
  std::vector<Point> query;
  std::vector<std::size_t> index;
  for (int i = 0; i < g.n(); i += 2) {
    for (int j = 0; j < g.n(); j += 2) {
      query.push_back({i * h, j * h});
      index.push_back(static_cast<std::size_t>(i) * g.n() + j);
    }
  }
  const auto ub = velocity_field(blobs, query);
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < query.size(); ++m) {
    const double a = ub[m].x - u1[index[m]], b = ub[m].y - u2[index[m]];
    num += a * a + b * b;
    den += u1[index[m]] * u1[index[m]] + u2[index[m]] * u2[index[m]];
  }
  const double l2 = std::sqrt(num / den);
  d << "patch velocity rel L2 " << fmt(l2) << " (limit 1e-2); ";

  // two point vortices rotate rigidly about their centre of circulation
  const double g1 = 1.0, g2 = 0.5, sep = 1.0;
  const double period = 4 * kPi * kPi * sep * sep / (g1 + g2);
  VortexSystem pair;
  pair.add({0.3, -0.2}, g1);
  pair.add({1.3, -0.2}, g2);
  StepController ctl;
  ctl.rtol = 1e-12;
  ctl.atol = 1e-14;
  const auto traj = evolve(pair, period, ctl, period / 64);
  double swept = 0.0;
  double prev = 0.0;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const auto& p = traj[s].positions;
    const double ang = std::atan2(p[3] - p[1], p[2] - p[0]);
    if (s > 0) swept += std::remainder(ang - prev, 2 * kPi);
    prev = ang;
  }
  const double period_err = std::abs(swept - 2 * kPi) / (2 * kPi);
  d << "pair period rel error " << fmt(period_err) << " (limit 1e-4); ";

  // invariants of a smoothed-kernel system over the same time span
  VortexSystem sys;
  sys.kernel = BlobKernel{KernelKind::bessel_k0, alpha};
  sys.add({0.2, 0.1}, 1.0);
  sys.add({0.9, -0.3}, 0.7);
  sys.add({-0.5, 0.6}, -0.4);
  sys.add({0.05, 0.15}, 0.3);
  const double c0 = total_circulation(sys);
  const Point p0 = linear_impulse(sys);
  const double a0 = angular_impulse(sys);
  const double h0 = blob_hamiltonian(sys);
  StepController c2;
  c2.rtol = 1e-12;
  c2.atol = 1e-14;
  evolve(sys, period, c2);
  const double drift = std::max({rel(total_circulation(sys), c0), rel(linear_impulse(sys).x, p0.x),
                                 rel(linear_impulse(sys).y, p0.y), rel(angular_impulse(sys), a0),
                                 rel(blob_hamiltonian(sys), h0)});
  d << "blob invariant drift " << fmt(drift) << " (limit 1e-8)";
  return {l2 <= 1e-2 && period_err <= 1e-4 && drift < 1e-8, d.str()};
}

// 10 -----------------------------------------------------------------------

Outcome parseval_and_jacobian() {
  const GridSpec g(64);
  const Spectral sp(g);
  const double cell = g.spacing() * g.spacing();
  double energy_err = 0.0, jac_err = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto omega = sp.dealias(testing::random_field(g, 500 + s));
    for (double alpha : {0.0, 0.05, 0.1}) {
      const Energies a = energies(omega, alpha);
      const Energies b = testing::quadrature_energies(sp, omega, alpha);
      energy_err = std::max({energy_err, rel(a.E, b.E), rel(a.Z, b.Z), rel(a.E_H1, b.E_H1), rel(a.Z_H2, b.Z_H2)});
      const auto psih = sp.poisson_solve(omega);
      const auto qh = sp.helmholtz(omega, alpha);
      const auto jac = sp.inverse_transform(sp.jacobian(psih, qh));
      const auto psi = sp.inverse_transform(psih);
      const auto q = sp.inverse_transform(qh);
      double i0 = 0, i1 = 0, i2 = 0, s0 = 0, s1 = 0, s2 = 0;
      for (std::size_t i = 0; i < jac.size(); ++i) {
        i0 += jac[i] * cell;
        i1 += psi[i] * jac[i] * cell;
        i2 += q[i] * jac[i] * cell;
        s0 += std::abs(jac[i]) * cell;
        s1 += std::abs(psi[i] * jac[i]) * cell;
        s2 += std::abs(q[i] * jac[i]) * cell;
      }
      jac_err = std::max({jac_err, std::abs(i0) / s0, std::abs(i1) / s1, std::abs(i2) / s2});
    }
  }
  return {energy_err < 1e-10 && jac_err < 1e-12,
          "energy rel error " + fmt(energy_err) + " (limit 1e-10); Jacobian integrals rel " + fmt(jac_err) +
              " (limit 1e-12)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string work = "acceptance_work";
  std::vector<int> only;
  app.add_option("--work", work, "directory for the long runs");
  app.add_option("--only", only, "criteria to run (default: all)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const fs::path dir(work);
  fs::create_directories(dir);
  const std::map<int, std::function<Outcome()>> checks = {
      {1, inviscid_conservation},
      {2, galerkin_oracle},
      {3, cash_karp_order},
      {4, [&] { return mean_energy_trend(dir); }},
      {5, [&] { return spectrum_trend(dir); }},
      {6, [&] { return slope_bracketing(dir); }},
      {7, slope_table},
      {8, [&] { return resolution_trend(dir); }},
      {9, vortex_checks},
      {10, parseval_and_jacobian},
  };
  const std::set<int> wanted(only.begin(), only.end());
  int failures = 0;
  for (const auto& [id, check] : checks) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " | " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
