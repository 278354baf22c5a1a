#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "aeuler/diagnostics.hpp"
#include "aeuler/errors.hpp"
#include "aeuler/spectral.hpp"
#include "support/oracles.hpp"
#include "support/quadrature.hpp"

namespace aeuler {
namespace {

using testing::quadrature_energies;
using testing::random_field;

TEST(Energies, MatchQuadrature) {
  const GridSpec g(48);
  const Spectral sp(g);
  const auto omega = random_field(g, 21);
  for (double alpha : {0.0, 0.07}) {
    const auto a = energies(omega, alpha);
    const auto b = quadrature_energies(sp, omega, alpha);
    EXPECT_NEAR(a.E, b.E, 1e-10 * b.E);
    EXPECT_NEAR(a.Z, b.Z, 1e-10 * b.Z);
    EXPECT_NEAR(a.E_H1, b.E_H1, 1e-10 * b.E_H1);
    EXPECT_NEAR(a.Z_H2, b.Z_H2, 1e-10 * b.Z_H2);
  }
}

TEST(Energies, AlphaZeroReducesToPlainInvariants) {
  const GridSpec g(32);
  const auto e = energies(random_field(g, 2), 0.0);
  EXPECT_DOUBLE_EQ(e.E, e.E_H1);
  EXPECT_DOUBLE_EQ(e.Z, e.Z_H2);
  EXPECT_THROW(energies(random_field(g, 2), -1.0), ParameterError);
}

TEST(Energies, SingleModeClosedForm) {
  // omega = 2 cos(3x): u2 = (2/3) sin(3x), E = (1/2)(4/9)(1/2)(2 pi)^2
  const GridSpec g(32);
  SpectralField omega(g);
  omega.set_mode(3, 0, 1.0);
  const double area = 4 * std::numbers::pi * std::numbers::pi;
  const auto e = energies(omega, 0.1);
  EXPECT_NEAR(e.E, 0.5 * (4.0 / 9.0) * 0.5 * area, 1e-14);
  EXPECT_NEAR(e.Z, 0.5 * 4.0 * 0.5 * area, 1e-13);
  EXPECT_NEAR(e.E_H1, e.E * (1 + 0.09), 1e-14);
  EXPECT_NEAR(e.Z_H2, e.Z * 1.09 * 1.09, 1e-13);
}

TEST(Spectrum, ShellsSumToEnergy) {
  const GridSpec g(64);
  const auto omega = random_field(g, 4);
  const auto s = shell_spectrum(omega, 1.5);
  EXPECT_EQ(s.t, 1.5);
  EXPECT_EQ(s.k_max(), g.k_max());
  EXPECT_EQ(s.energy[0], 0.0);
  EXPECT_NEAR(s.total(), energies(omega, 0.0).E, 1e-12 * s.total());
}

TEST(Spectrum, ShellAssignmentRounds) {
  const GridSpec g(32);
  SpectralField omega(g);
  omega.set_mode(2, 2, 1.0);  // |k| = 2.83 -> shell 3
  omega.set_mode(1, 1, 1.0);  // |k| = 1.41 -> shell 1
  const auto s = shell_spectrum(omega);
  EXPECT_GT(s.energy[3], 0.0);
  EXPECT_GT(s.energy[1], 0.0);
  EXPECT_EQ(s.energy[2], 0.0);
}

TEST(Spectrum, TimeAverageWindow) {
  std::vector<Spectrum> snaps;
  for (int i = 0; i <= 4; ++i) snaps.push_back(Spectrum{double(i), {0.0, double(i), 2.0 * i}});
  const auto m = time_averaged_spectrum(snaps, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(m.energy[1], 2.0);
  EXPECT_DOUBLE_EQ(m.energy[2], 4.0);
  EXPECT_DOUBLE_EQ(m.t, 2.0);
  EXPECT_THROW(time_averaged_spectrum(snaps, 5.5, 6.0), RangeError);
  snaps.push_back(Spectrum{2.5, {0.0}});
  EXPECT_THROW(time_averaged_spectrum(snaps, 0.0, 4.0), SizeError);
}

TEST(SlopeFit, ExactPowerLaw) {
  Spectrum s;
  s.energy.assign(20, 0.0);
  for (int k = 1; k < 20; ++k) s.energy[k] = 3.0 * std::pow(k, -17.0 / 3.0);
  const auto fit = fit_slope(s, 3, 12);
  EXPECT_NEAR(fit.slope, -17.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::exp(fit.intercept), 3.0, 1e-11);
  EXPECT_LT(fit.residual, 1e-12);
  EXPECT_EQ(fit.shells_used.size(), 10u);
}

TEST(SlopeFit, ExcludesEmptyShellsAndNeedsThree) {
  Spectrum s;
  s.energy = {0.0, 1.0, 0.0, 1.0 / 9.0, 0.0, 0.04};
  const auto fit = fit_slope(s, 1, 5);
  EXPECT_EQ(fit.shells_excluded, (std::vector<int>{2, 4}));
  EXPECT_NEAR(fit.slope, -2.0, 1e-12);
  s.energy = {0.0, 1.0, 0.0, 0.0, 0.0, 0.04};
  EXPECT_THROW(fit_slope(s, 1, 5), FitError);
  EXPECT_THROW(fit_slope(s, 4, 4), FitError);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(4, -6), Rational(-2, 3));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_EQ(-Rational(5, 3), Rational(-5, 3));
  EXPECT_THROW(Rational(1, 0), ParameterError);
}

TEST(PredictedSlope, TruthTable) {
  using S = Subrange;
  using R = Regime;
  EXPECT_EQ(predicted_slope(S::enstrophy_cascade, R::alpha_much_smaller).b(), Rational(-3));
  EXPECT_EQ(predicted_slope(S::enstrophy_cascade, R::alpha_much_larger).b(), Rational(-17, 3));
  EXPECT_EQ(predicted_slope(S::energy_cascade, R::alpha_much_smaller).b(), Rational(-5, 3));
  EXPECT_EQ(predicted_slope(S::energy_cascade, R::alpha_much_larger).b(), Rational(-3));
  for (auto sub : {S::enstrophy_cascade, S::energy_cascade}) {
    for (auto reg : {R::alpha_much_smaller, R::alpha_much_larger}) {
      const auto p = predicted_slope(sub, reg);
      EXPECT_EQ(p.a, Rational(2, 3));
      EXPECT_FALSE(p.is_interval());
      const auto m = dimension_mismatch(sub, reg, p.a, p.b());
      EXPECT_EQ(m.time, Rational(0));
      EXPECT_EQ(m.length, Rational(0));
    }
  }
}

TEST(PredictedSlope, ComparableRegimeIsBracket) {
  const auto e = predicted_slope(Subrange::energy_cascade, Regime::alpha_comparable);
  EXPECT_TRUE(e.is_interval());
  EXPECT_EQ(e.b_steep, Rational(-3));
  EXPECT_EQ(e.b_shallow, Rational(-5, 3));
  const auto z = predicted_slope(Subrange::enstrophy_cascade, Regime::alpha_comparable);
  EXPECT_EQ(z.b_steep, Rational(-17, 3));
  EXPECT_EQ(z.b_shallow, Rational(-3));
}

TEST(PredictedSlope, MismatchDetectsWrongExponents) {
  const auto m = dimension_mismatch(Subrange::energy_cascade, Regime::alpha_much_smaller, Rational(2, 3),
                                    Rational(-3));
  EXPECT_NE(m.length, Rational(0));
  const auto t = dimension_mismatch(Subrange::energy_cascade, Regime::alpha_much_smaller, Rational(1),
                                    Rational(-5, 3));
  EXPECT_NE(t.time, Rational(0));
}

}  // namespace
}  // namespace aeuler
