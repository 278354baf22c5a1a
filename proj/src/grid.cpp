#include "aeuler/grid.hpp"

#include <cmath>
#include <string>

#include "aeuler/errors.hpp"

namespace aeuler {

GridSpec::GridSpec(int n, double domain_length, int k_max)
    : n_(n), domain_length_(domain_length), k_max_(k_max < 0 ? n / 3 : k_max) {
  if (n <= 0 || n % 2 != 0) {
    throw ParameterError("grid size must be a positive even integer, got " + std::to_string(n));
  }
  if (!(domain_length > 0.0) || !std::isfinite(domain_length)) {
    throw ParameterError("domain length must be positive");
  }
  if (k_max_ <= 0 || k_max_ >= n / 2) {
    throw ParameterError("dealiasing radius must lie in (0, n/2), got " + std::to_string(k_max_));
  }
}

double GridSpec::wavenumber(int m) const { return 2.0 * std::numbers::pi / domain_length_ * m; }

WavenumberSet::WavenumberSet(const GridSpec& grid) {
  const int n = grid.n();
  const int cols = grid.spectral_cols();
  const std::size_t size = grid.spectral_size();
  m1.resize(size);
  m2.resize(size);
  k1.resize(size);
  k2.resize(size);
  d1.resize(size);
  d2.resize(size);
  k_squared.resize(size);
  shell.resize(size);
  keep.resize(size);
  weight.resize(size);

  const long kmax2 = static_cast<long>(grid.k_max()) * grid.k_max();
  for (int row = 0; row < n; ++row) {
    const int a = grid.row_wavenumber(row);
    for (int col = 0; col < cols; ++col) {
      const std::size_t i = static_cast<std::size_t>(row) * cols + col;
      const long mag2 = static_cast<long>(a) * a + static_cast<long>(col) * col;
      m1[i] = a;
      m2[i] = col;
      k1[i] = grid.wavenumber(a);
      k2[i] = grid.wavenumber(col);
      d1[i] = row == n / 2 ? 0.0 : k1[i];
      d2[i] = col == n / 2 ? 0.0 : k2[i];
      k_squared[i] = k1[i] * k1[i] + k2[i] * k2[i];
      shell[i] = static_cast<int>(std::lround(std::sqrt(static_cast<double>(mag2))));
      keep[i] = mag2 <= kmax2 ? 1 : 0;
      weight[i] = (col == 0 || col == n / 2) ? 1.0 : 2.0;
    }
  }
}

}  // namespace aeuler
