#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "aeuler/grid.hpp"
#include "aeuler/spectral_field.hpp"

namespace aeuler {

using RealField = std::vector<double>;

/// Transforms and diagonal operators on one periodic grid.
///
/// All member functions are const and safe to call concurrently; FFTW plans
/// are created once and executed through the new-array interface.
class Spectral {
 public:
  explicit Spectral(const GridSpec& grid);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;
  Spectral(Spectral&&) noexcept;
  Spectral& operator=(Spectral&&) noexcept;

  const GridSpec& grid() const { return grid_; }
  const WavenumberSet& wavenumbers() const { return waves_; }

  SpectralField forward_transform(std::span<const double> physical) const;
  /// Throws SymmetryError when the coefficients are not Hermitian.
  RealField inverse_transform(const SpectralField& f) const;

  SpectralField dealias(SpectralField f) const;
  SpectralField laplacian(SpectralField f) const;
  SpectralField derivative_x1(SpectralField f) const;
  SpectralField derivative_x2(SpectralField f) const;
  /// (1 - alpha^2 Laplacian) f
  SpectralField helmholtz(SpectralField f, double alpha) const;
  /// (1 - alpha^2 Laplacian)^{-1} f
  SpectralField helmholtz_inverse(SpectralField f, double alpha) const;
  /// Streamfunction with Laplacian(psi) = omega - mean(omega), zero mean.
  SpectralField poisson_solve(SpectralField omega) const;
  /// u1 = -d psi / dx2, u2 = d psi / dx1.
  std::pair<SpectralField, SpectralField> velocity_from_streamfunction(const SpectralField& psi) const;
  /// Dealiased J[a, b] = da/dx1 db/dx2 - da/dx2 db/dx1.
  SpectralField jacobian(const SpectralField& a, const SpectralField& b) const;

 private:
  struct Plans;

  void check_grid(const SpectralField& f) const;
  void check_hermitian(const SpectralField& f) const;
  void to_physical(const SpectralField& f, double* out) const;

  GridSpec grid_;
  WavenumberSet waves_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace aeuler
