#include "aeuler/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "aeuler/errors.hpp"

namespace aeuler {

double alpha_from_k_alpha(double k_alpha) {
  if (!(k_alpha >= 0.0)) throw ParameterError("k_alpha must be non-negative");
  return k_alpha == 0.0 ? 0.0 : 1.0 / k_alpha;
}

std::vector<double> forcing_phases(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> phases(count);
  for (auto& p : phases) {
    // 53 random bits, independent of the standard library's distributions.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    p = 2.0 * std::numbers::pi * u;
  }
  return phases;
}

ForcingSpec ForcingSpec::band(const GridSpec& grid, double k_lo, double k_hi, double amplitude,
                              std::uint64_t seed) {
  if (!(k_lo >= 0.0) || !(k_hi > k_lo)) throw ConfigError("forcing band needs 0 <= k_lo < k_hi");
  if (!(amplitude >= 0.0)) throw ConfigError("forcing amplitude must be non-negative");
  ForcingSpec spec;
  spec.k_lo = k_lo;
  spec.k_hi = k_hi;
  const int reach = static_cast<int>(std::ceil(k_hi));
  const int n = grid.n();
  for (int k1 = -reach; k1 <= reach; ++k1) {
    for (int k2 = 0; k2 <= reach; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;  // one of each conjugate pair
      const double mag = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
      if (mag < k_lo || mag >= k_hi) continue;
      if (mag > grid.k_max() || std::abs(k1) >= n / 2 || k2 >= n / 2) {
        throw ConfigError("forced mode (" + std::to_string(k1) + ", " + std::to_string(k2) +
                          ") lies outside the dealiasing radius k_max=" +
                          std::to_string(grid.k_max()));
      }
      spec.modes.push_back(ForcedMode{k1, k2, amplitude, 0.0});
    }
  }
  if (spec.modes.empty()) throw ConfigError("forcing band contains no lattice modes");
  const auto phases = forcing_phases(spec.modes.size(), seed);
  for (std::size_t i = 0; i < spec.modes.size(); ++i) spec.modes[i].reference_phase = phases[i];
  return spec;
}

SpectralField apply_dissipation(const Spectral& spectral, SpectralField omega,
                                const PhysicsParams& params) {
  if (!(params.nu >= 0.0) || !(params.delta >= 0.0)) {
    throw ParameterError("nu and delta must be non-negative");
  }
  const auto& ksq = spectral.wavenumbers().k_squared;
  omega[0] = 0.0;
  for (std::size_t i = 1; i < omega.size(); ++i) {
    const double s = params.nu * ksq[i];
    const double s2 = s * s;
    omega[i] *= -(params.delta / ksq[i] + s2 * s2);
  }
  return omega;
}

SpectralField rhs(const Spectral& spectral, const SpectralField& omega, const PhysicsParams& params) {
  if (!(params.nu >= 0.0) || !(params.delta >= 0.0)) {
    throw ParameterError("nu and delta must be non-negative");
  }
  const SpectralField psi = spectral.poisson_solve(omega);
  const SpectralField q = spectral.helmholtz(omega, params.alpha);
  SpectralField out = spectral.jacobian(psi, q);

  // -(1 - a^2 lap)^-1 J plus dissipation, dealiased, in one sweep.
  const auto& w = spectral.wavenumbers();
  const double a2 = params.alpha * params.alpha;
  const bool dissipative = params.nu > 0.0 || params.delta > 0.0;
  out[0] = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!w.keep[i]) {
      out[i] = 0.0;
      continue;
    }
    const double ksq = w.k_squared[i];
    Complex v = out[i] * (-1.0 / (1.0 + a2 * ksq));
    if (dissipative) {
      const double s = params.nu * ksq;
      const double s2 = s * s;
      v -= (params.delta / ksq + s2 * s2) * omega[i];
    }
    out[i] = v;
  }
  return out;
}

SpectralField apply_forcing(SpectralField omega, const ForcingSpec& spec) {
  for (const auto& mode : spec.modes) {
    const Complex c = omega.coeff(mode.k1, mode.k2);
    const double mod = std::abs(c);
    const Complex v = mod > 0.0 ? c * (mode.target / mod) : std::polar(mode.target, mode.reference_phase);
    omega.set_mode(mode.k1, mode.k2, v);
  }
  return omega;
}

EvolutionState initial_condition(const GridSpec& grid, const ForcingSpec& spec, std::uint64_t seed) {
  EvolutionState state{SpectralField(grid), 0.0};
  const auto phases = forcing_phases(spec.modes.size(), seed);
  for (std::size_t i = 0; i < spec.modes.size(); ++i) {
    const auto& mode = spec.modes[i];
    state.omega.set_mode(mode.k1, mode.k2, std::polar(mode.target, phases[i]));
  }
  return state;
}

void add_seed_perturbation(EvolutionState& state, const ForcingSpec& spec, double amplitude,
                           int k_limit, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw ParameterError("perturbation amplitude must be non-negative");
  if (amplitude == 0.0 || k_limit < 1) return;
  const GridSpec& grid = state.omega.grid();
  const int reach = std::min(k_limit, grid.k_max());
  auto forced = [&](int k1, int k2) {
    for (const auto& m : spec.modes) {
      if ((m.k1 == k1 && m.k2 == k2) || (m.k1 == -k1 && m.k2 == -k2)) return true;
    }
    return false;
  };
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int k1 = -reach; k1 <= reach; ++k1) {
    for (int k2 = 0; k2 <= reach; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;
      if (k1 * k1 + k2 * k2 > reach * reach || forced(k1, k2)) continue;
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      state.omega.set_mode(k1, k2, state.omega.coeff(k1, k2) +
                                       std::polar(amplitude, 2.0 * std::numbers::pi * u));
    }
  }
}

}  // namespace aeuler
