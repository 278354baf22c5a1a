#include "aeuler/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aeuler/errors.hpp"

namespace aeuler {

SpectralField::SpectralField(const GridSpec& grid)
    : grid_(grid), coeffs_(grid.spectral_size(), Complex{0.0, 0.0}) {}

std::size_t SpectralField::index(int k1, int k2) const {
  const int n = grid_.n();
  if (k2 < 0 || k2 > n / 2 || k1 < -n / 2 || k1 > n / 2) {
    throw std::out_of_range("wavenumber (" + std::to_string(k1) + ", " + std::to_string(k2) +
                            ") outside the lattice of an n=" + std::to_string(n) + " grid");
  }
  const int row = k1 < 0 ? k1 + n : k1;
  return static_cast<std::size_t>(row) * grid_.spectral_cols() + k2;
}

Complex SpectralField::coeff(int k1, int k2) const {
  if (k2 < 0) {
    return std::conj(coeffs_[index(-k1, -k2)]);
  }
  return coeffs_[index(k1, k2)];
}

void SpectralField::set_mode(int k1, int k2, Complex v) {
  if (k2 < 0) {
    set_mode(-k1, -k2, std::conj(v));
    return;
  }
  const std::size_t i = index(k1, k2);
  const int n = grid_.n();
  if (k2 == 0 || k2 == n / 2) {
    const std::size_t j = index(-k1 == n / 2 ? -n / 2 : -k1, k2);
    if (i == j) {
      // Self-conjugate mode of a real field carries a real amplitude.
      coeffs_[i] = Complex{v.real(), 0.0};
      return;
    }
    coeffs_[j] = std::conj(v);
  }
  coeffs_[i] = v;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw SizeError("grid mismatch in field addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw SizeError("grid mismatch in field subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

bool SpectralField::operator==(const SpectralField& other) const {
  return grid_ == other.grid_ && std::equal(coeffs_.begin(), coeffs_.end(), other.coeffs_.begin());
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

double max_abs_difference(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw SizeError("grid mismatch in field comparison");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const SpectralField& a) {
  double m = 0.0;
  for (const auto& c : a.values()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace aeuler
