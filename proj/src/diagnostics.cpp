#include "aeuler/diagnostics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "aeuler/errors.hpp"

namespace aeuler {

Energies energies(const SpectralField& omega, double alpha) {
  if (!(alpha >= 0.0)) throw ParameterError("alpha must be non-negative");
  const GridSpec& grid = omega.grid();
  const int n = grid.n();
  const int cols = grid.spectral_cols();
  const double a2 = alpha * alpha;
  Energies e;
  for (int row = 0; row < n; ++row) {
    const double k1 = grid.wavenumber(grid.row_wavenumber(row));
    for (int col = 0; col < cols; ++col) {
      if (row == 0 && col == 0) continue;
      const double k2 = grid.wavenumber(col);
      const double ksq = k1 * k1 + k2 * k2;
      const double w = (col == 0 || col == n / 2) ? 1.0 : 2.0;
      const double vort2 = std::norm(omega[static_cast<std::size_t>(row) * cols + col]) * w;
      const double h = 1.0 + a2 * ksq;
      // |u(k)|^2 = |k|^2 |psi(k)|^2 = |omega(k)|^2 / |k|^2
      e.E += vort2 / ksq;
      e.E_H1 += h * vort2 / ksq;
      e.Z += vort2;
      e.Z_H2 += h * h * vort2;
    }
  }
  const double half_area = 0.5 * grid.area();
  e.E *= half_area;
  e.E_H1 *= half_area;
  e.Z *= half_area;
  e.Z_H2 *= half_area;
  return e;
}

double Spectrum::total() const { return std::accumulate(energy.begin(), energy.end(), 0.0); }

Spectrum shell_spectrum(const SpectralField& omega, double t) {
  const GridSpec& grid = omega.grid();
  const int n = grid.n();
  const int cols = grid.spectral_cols();
  Spectrum s;
  s.t = t;
  s.energy.assign(static_cast<std::size_t>(grid.k_max()) + 1, 0.0);
  const double half_area = 0.5 * grid.area();
  for (int row = 0; row < n; ++row) {
    const int m1 = grid.row_wavenumber(row);
    for (int col = 0; col < cols; ++col) {
      if (row == 0 && col == 0) continue;
      const long mag2 = static_cast<long>(m1) * m1 + static_cast<long>(col) * col;
      const auto shell = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(mag2))));
      const Complex c = omega[static_cast<std::size_t>(row) * cols + col];
      if (c == Complex{0.0, 0.0}) continue;
      if (shell >= s.energy.size()) s.energy.resize(shell + 1, 0.0);
      const double k1 = grid.wavenumber(m1);
      const double k2 = grid.wavenumber(col);
      const double w = (col == 0 || col == n / 2) ? 1.0 : 2.0;
      s.energy[shell] += half_area * w * std::norm(c) / (k1 * k1 + k2 * k2);
    }
  }
  return s;
}

Spectrum time_averaged_spectrum(std::span<const Spectrum> snapshots, double t_lo, double t_hi) {
  Spectrum mean;
  std::size_t count = 0;
  double t_sum = 0.0;
  for (const auto& s : snapshots) {
    if (s.t < t_lo || s.t > t_hi) continue;
    if (count == 0) {
      mean.energy.assign(s.energy.size(), 0.0);
    } else if (s.energy.size() != mean.energy.size()) {
      throw SizeError("spectra with different shell counts cannot be averaged");
    }
    for (std::size_t k = 0; k < s.energy.size(); ++k) mean.energy[k] += s.energy[k];
    t_sum += s.t;
    ++count;
  }
  if (count == 0) {
    throw RangeError("no spectrum snapshot in time window [" + std::to_string(t_lo) + ", " +
                     std::to_string(t_hi) + "]");
  }
  for (auto& e : mean.energy) e /= static_cast<double>(count);
  mean.t = t_sum / static_cast<double>(count);
  return mean;
}

SlopeFit fit_slope(const Spectrum& spectrum, int k_lo, int k_hi) {
  if (k_lo >= k_hi) throw FitError("fit window needs k_lo < k_hi");
  SlopeFit fit;
  std::vector<double> x, y;
  for (int k = std::max(k_lo, 1); k <= std::min(k_hi, spectrum.k_max()); ++k) {
    const double e = spectrum.energy[static_cast<std::size_t>(k)];
    if (e > 0.0 && std::isfinite(e)) {
      fit.shells_used.push_back(k);
      x.push_back(std::log(static_cast<double>(k)));
      y.push_back(std::log(e));
    } else {
      fit.shells_excluded.push_back(k);
    }
  }
  if (x.size() < 3) {
    throw FitError("only " + std::to_string(x.size()) + " usable shells in [" +
                   std::to_string(k_lo) + ", " + std::to_string(k_hi) + "]");
  }
  const double m = static_cast<double>(x.size());
  const double x_mean = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - x_mean) * (x[i] - x_mean);
    sxy += (x[i] - x_mean) * (y[i] - y_mean);
  }
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw ParameterError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = g == 0 ? 0 : n / g;
  den = g == 0 ? 1 : d / g;
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
Rational operator-(Rational a) { return {-a.num, a.den}; }

namespace {

// Power of the Helmholtz factor (1 + alpha^2 L^-2) in the dimension balance.
Rational helmholtz_power(Subrange subrange, Rational a) {
  return subrange == Subrange::enstrophy_cascade ? Rational(2) * a : a;
}

// Length exponent contributed by E(k) ~ k^b and the rate's own length units.
Rational length_power(Subrange subrange, Rational a, Rational b) {
  return subrange == Subrange::enstrophy_cascade ? -b : Rational(2) * a - b;
}

Rational limit_length_power(Subrange subrange, Regime limit, Rational a) {
  if (limit == Regime::alpha_comparable) {
    throw ParameterError("the dimension balance has no single power law for alpha ~ L");
  }
  // alpha >> L: (alpha^2 L^-2)^p contributes L^(-2p).
  return limit == Regime::alpha_much_larger ? Rational(-2) * helmholtz_power(subrange, a) : Rational(0);
}

}  // namespace

DimensionMismatch dimension_mismatch(Subrange subrange, Regime limit, Rational a, Rational b) {
  const Rational rhs_time = Rational(-3) * a;
  const Rational rhs_length = limit_length_power(subrange, limit, a) + length_power(subrange, a, b);
  return {Rational(-2) - rhs_time, Rational(3) - rhs_length};
}

SlopePrediction predicted_slope(Subrange subrange, Regime regime) {
  // Time balance: -2 = -3a.
  const Rational a(2, 3);
  auto solve_b = [&](Regime limit) {
    // Length balance is affine in b with coefficient -1 in both subranges.
    const Rational rest = limit_length_power(subrange, limit, a) + length_power(subrange, a, Rational(0));
    return rest - Rational(3);
  };
  SlopePrediction p{subrange, regime, a, Rational(0), Rational(0)};
  if (regime == Regime::alpha_comparable) {
    p.b_steep = solve_b(Regime::alpha_much_larger);
    p.b_shallow = solve_b(Regime::alpha_much_smaller);
  } else {
    p.b_steep = p.b_shallow = solve_b(regime);
  }
  return p;
}

}  // namespace aeuler
