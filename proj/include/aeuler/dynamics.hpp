#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aeuler/grid.hpp"
#include "aeuler/spectral.hpp"
#include "aeuler/spectral_field.hpp"

namespace aeuler {

/// One forced wavenumber. Only one member of each (k, -k) pair is listed.
struct ForcedMode {
  int k1 = 0;
  int k2 = 0;
  double target = 1.0;           // modulus held fixed
  double reference_phase = 0.0;  // used when the current modulus is zero
};

/// Forcing by holding the moduli of all modes with k_lo <= |k| < k_hi fixed.
struct ForcingSpec {
  double k_lo = 10.0;
  double k_hi = 10.001;
  std::vector<ForcedMode> modes;

  /// Collects the forced band on `grid`. Reference phases are the ones
  /// initial_condition draws for the same seed. Throws ConfigError if the
  /// band is empty or reaches past the dealiasing radius.
  static ForcingSpec band(const GridSpec& grid, double k_lo, double k_hi, double amplitude,
                          std::uint64_t seed);
};

struct PhysicsParams {
  double alpha = 0.0;  // smoothing length; 0 is the Euler limit
  double nu = 0.0;     // hyperviscosity, operator (-nu Laplacian)^4
  double delta = 0.0;  // large-scale friction, coefficient of psi
  std::optional<ForcingSpec> forcing;
};

/// alpha = 1/k_alpha, with k_alpha = 0 meaning alpha = 0.
double alpha_from_k_alpha(double k_alpha);

struct EvolutionState {
  SpectralField omega;
  double t = 0.0;
};

/// d(omega)/dt = -(1 - a^2 L)^{-1} J[psi, (1 - a^2 L) omega] + D(omega), with
/// L the Laplacian and psi = L^{-1} omega. Forcing is not included; it is a
/// projection applied after accepted steps (see apply_forcing).
SpectralField rhs(const Spectral& spectral, const SpectralField& omega, const PhysicsParams& params);

/// Per mode: -delta omega/|k|^2 - (nu |k|^2)^4 omega, and zero at k = 0.
SpectralField apply_dissipation(const Spectral& spectral, SpectralField omega,
                                const PhysicsParams& params);

/// Resets the modulus of every forced mode to its target, keeping its phase.
SpectralField apply_forcing(SpectralField omega, const ForcingSpec& spec);

/// Zero vorticity except the forced modes, set to their targets with
/// pseudorandom phases drawn from `seed`.
EvolutionState initial_condition(const GridSpec& grid, const ForcingSpec& spec, std::uint64_t seed);

/// Adds modes of modulus `amplitude` with seeded random phases at every
/// unforced wavenumber with 1 <= |k| <= k_limit. The forced band alone is an
/// exact steady state (a single shell has J[psi, omega] = 0), so runs need
/// this seed to leave it.
void add_seed_perturbation(EvolutionState& state, const ForcingSpec& spec, double amplitude,
                           int k_limit, std::uint64_t seed);

/// The phase stream shared by ForcingSpec::band and initial_condition.
std::vector<double> forcing_phases(std::size_t count, std::uint64_t seed);

}  // namespace aeuler
