#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace aeuler {

/// Square periodic grid. Physical values are stored row-major with the first
/// index along x1; spectral coefficients use the real-to-complex half layout
/// of n rows (k1) by n/2 + 1 columns (k2 >= 0).
class GridSpec {
 public:
  /// k_max defaults to floor(n/3), the circular two-thirds rule.
  explicit GridSpec(int n, double domain_length = 2.0 * std::numbers::pi, int k_max = -1);

  int n() const { return n_; }
  double domain_length() const { return domain_length_; }
  int k_max() const { return k_max_; }

  int spectral_cols() const { return n_ / 2 + 1; }
  std::size_t physical_size() const { return static_cast<std::size_t>(n_) * n_; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * spectral_cols(); }
  double spacing() const { return domain_length_ / n_; }
  double area() const { return domain_length_ * domain_length_; }
  /// Physical wavenumber of integer lattice index m.
  double wavenumber(int m) const;

  /// Signed lattice wavenumber of spectral row i.
  int row_wavenumber(int row) const { return row <= n_ / 2 ? row : row - n_; }

  bool operator==(const GridSpec& other) const = default;

 private:
  int n_;
  double domain_length_;
  int k_max_;
};

/// Per-mode lookup tables over the half-spectrum layout.
struct WavenumberSet {
  explicit WavenumberSet(const GridSpec& grid);

  std::vector<int> m1, m2;          // integer lattice indices
  std::vector<double> k1, k2;       // physical wavenumbers
  std::vector<double> d1, d2;       // derivative multipliers, zero on Nyquist modes
  std::vector<double> k_squared;    // physical |k|^2
  std::vector<int> shell;           // round(|m|)
  std::vector<unsigned char> keep;  // 1 iff |m| <= k_max
  std::vector<double> weight;       // multiplicity in the full plane (1 or 2)
};

}  // namespace aeuler
