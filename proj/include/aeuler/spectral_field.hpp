#pragma once

#include <complex>
#include <span>

#include "aeuler/aligned.hpp"
#include "aeuler/grid.hpp"

namespace aeuler {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar field. Coefficients are normalized
/// mode amplitudes: f(x) = sum_k c(k) exp(i k.x).
class SpectralField {
 public:
  explicit SpectralField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }

  /// Coefficient of any lattice wavenumber; negative k2 is read through
  /// Hermitian symmetry.
  Complex coeff(int k1, int k2) const;
  /// Sets c(k) = v and c(-k) = conj(v).
  void set_mode(int k1, int k2, Complex v);

  std::size_t index(int k1, int k2) const;

  std::span<Complex> values() { return coeffs_; }
  std::span<const Complex> values() const { return coeffs_; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  bool operator==(const SpectralField& other) const;

 private:
  GridSpec grid_;
  AlignedVector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Max abs coefficient difference.
double max_abs_difference(const SpectralField& a, const SpectralField& b);
double max_abs(const SpectralField& a);

}  // namespace aeuler
