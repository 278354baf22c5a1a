#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aeuler/spectral_field.hpp"

namespace aeuler {

struct Energies {
  double E = 0.0;     // (1/2) int |u|^2
  double Z = 0.0;     // (1/2) int omega^2
  double E_H1 = 0.0;  // (1/2) int |u|^2 + alpha^2 |grad u|^2
  double Z_H2 = 0.0;  // (1/2) int ((1 - alpha^2 Laplacian) omega)^2
};

struct DiagnosticsRecord {
  double t = 0.0;
  double E = 0.0;
  double Z = 0.0;
  double E_H1 = 0.0;
  double Z_H2 = 0.0;
  double dt = 0.0;  // last accepted step
};

/// Integral invariants of omega, evaluated spectrally over the full domain.
Energies energies(const SpectralField& omega, double alpha);

/// Shell-summed kinetic energy; mode k belongs to shell round(|k|).
struct Spectrum {
  double t = 0.0;
  std::vector<double> energy;  // energy[k] for shells k = 0..k_max; shell 0 is empty

  int k_max() const { return static_cast<int>(energy.size()) - 1; }
  double total() const;
};

Spectrum shell_spectrum(const SpectralField& omega, double t = 0.0);

/// Per-shell mean over the snapshots with t_lo <= t <= t_hi. Throws
/// RangeError when the window is empty.
Spectrum time_averaged_spectrum(std::span<const Spectrum> snapshots, double t_lo, double t_hi);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural log of the prefactor
  double residual = 0.0;   // RMS residual in log E
  std::vector<int> shells_used;
  std::vector<int> shells_excluded;  // non-positive energy
};

/// Least-squares line through (log k, log E(k)) for shells in [k_lo, k_hi].
/// Throws FitError with fewer than three usable shells.
SlopeFit fit_slope(const Spectrum& spectrum, int k_lo, int k_hi);

/// Exact rational number for exponent bookkeeping.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

Rational operator+(Rational a, Rational b);
Rational operator-(Rational a, Rational b);
Rational operator*(Rational a, Rational b);
Rational operator/(Rational a, Rational b);
Rational operator-(Rational a);

enum class Subrange { enstrophy_cascade, energy_cascade };
enum class Regime { alpha_much_smaller, alpha_much_larger, alpha_comparable };

/// Dimensional-analysis prediction E(k) ~ rate^a k^b. In the comparable
/// regime the slope is only bracketed: b lies in [b_steep, b_shallow].
struct SlopePrediction {
  Subrange subrange;
  Regime regime;
  Rational a;
  Rational b_steep;
  Rational b_shallow;

  bool is_interval() const { return !(b_steep == b_shallow); }
  Rational b() const { return b_shallow; }
};

/// Exponent mismatch (time, length) of the dimension balance
///   L^3 T^-2 = T^(-3a) (1 + alpha^2 L^-2)^p L^q
/// with p = 2a, q = -b (enstrophy cascade) or p = a, q = 2a - b (energy
/// cascade), in the given limit. Zero in both components iff (a, b) balances.
struct DimensionMismatch {
  Rational time;
  Rational length;
};
DimensionMismatch dimension_mismatch(Subrange subrange, Regime limit, Rational a, Rational b);

SlopePrediction predicted_slope(Subrange subrange, Regime regime);

}  // namespace aeuler
