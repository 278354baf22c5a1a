#include "aeuler/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "aeuler/aligned.hpp"
#include "aeuler/errors.hpp"

namespace aeuler {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

constexpr double kHermitianTolerance = 1e-10;

}  // namespace

struct Spectral::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Plans(int n) {
    AlignedVector<double> real(static_cast<std::size_t>(n) * n);
    AlignedVector<Complex> spec(static_cast<std::size_t>(n) * (n / 2 + 1));
    std::lock_guard lock(planner_mutex());
    r2c = fftw_plan_dft_r2c_2d(n, n, real.data(), as_fftw(spec.data()), FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_2d(n, n, as_fftw(spec.data()), real.data(), FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Spectral::Spectral(const GridSpec& grid)
    : grid_(grid), waves_(grid), plans_(std::make_unique<Plans>(grid.n())) {}

Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

void Spectral::check_grid(const SpectralField& f) const {
  if (!(f.grid() == grid_)) {
    throw SizeError("field on n=" + std::to_string(f.grid().n()) + " grid passed to n=" +
                    std::to_string(grid_.n()) + " operator");
  }
}

void Spectral::check_hermitian(const SpectralField& f) const {
  const int n = grid_.n();
  const double scale = std::max(1.0, max_abs(f));
  const double tol = kHermitianTolerance * scale;
  for (int k2 : {0, n / 2}) {
    for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1) {
      const int mirror = k1 == n / 2 ? n / 2 : -k1;
      if (std::abs(f.coeff(k1, k2) - std::conj(f.coeff(mirror, k2))) > tol) {
        throw SymmetryError("coefficients at (" + std::to_string(k1) + ", " + std::to_string(k2) +
                            ") break Hermitian symmetry");
      }
    }
  }
}

SpectralField Spectral::forward_transform(std::span<const double> physical) const {
  if (physical.size() != grid_.physical_size()) {
    throw SizeError("physical array has " + std::to_string(physical.size()) + " values, expected " +
                    std::to_string(grid_.physical_size()));
  }
  AlignedVector<double> in(physical.begin(), physical.end());
  SpectralField out(grid_);
  fftw_execute_dft_r2c(plans_->r2c, in.data(), as_fftw(out.values().data()));
  out *= 1.0 / static_cast<double>(grid_.physical_size());
  return out;
}

void Spectral::to_physical(const SpectralField& f, double* out) const {
  // c2r overwrites its input.
  AlignedVector<Complex> scratch(f.values().begin(), f.values().end());
  fftw_execute_dft_c2r(plans_->c2r, as_fftw(scratch.data()), out);
}

RealField Spectral::inverse_transform(const SpectralField& f) const {
  check_grid(f);
  check_hermitian(f);
  AlignedVector<double> out(grid_.physical_size());
  to_physical(f, out.data());
  return RealField(out.begin(), out.end());
}

SpectralField Spectral::dealias(SpectralField f) const {
  check_grid(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!waves_.keep[i]) f[i] = 0.0;
  }
  return f;
}

SpectralField Spectral::laplacian(SpectralField f) const {
  check_grid(f);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= -waves_.k_squared[i];
  return f;
}

SpectralField Spectral::derivative_x1(SpectralField f) const {
  check_grid(f);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= Complex{0.0, waves_.d1[i]};
  return f;
}

SpectralField Spectral::derivative_x2(SpectralField f) const {
  check_grid(f);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= Complex{0.0, waves_.d2[i]};
  return f;
}

SpectralField Spectral::helmholtz(SpectralField f, double alpha) const {
  check_grid(f);
  if (!(alpha >= 0.0)) throw ParameterError("alpha must be non-negative");
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= 1.0 + a2 * waves_.k_squared[i];
  return f;
}

SpectralField Spectral::helmholtz_inverse(SpectralField f, double alpha) const {
  check_grid(f);
  if (!(alpha >= 0.0)) throw ParameterError("alpha must be non-negative");
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] /= 1.0 + a2 * waves_.k_squared[i];
  return f;
}

SpectralField Spectral::poisson_solve(SpectralField omega) const {
  check_grid(omega);
  omega[0] = 0.0;
  for (std::size_t i = 1; i < omega.size(); ++i) omega[i] /= -waves_.k_squared[i];
  return omega;
}

std::pair<SpectralField, SpectralField> Spectral::velocity_from_streamfunction(
    const SpectralField& psi) const {
  check_grid(psi);
  SpectralField u1 = derivative_x2(psi);
  u1 *= -1.0;
  return {std::move(u1), derivative_x1(psi)};
}

SpectralField Spectral::jacobian(const SpectralField& a, const SpectralField& b) const {
  check_grid(a);
  check_grid(b);
  const std::size_t np = grid_.physical_size();
  const std::size_t ns = grid_.spectral_size();
  // Per-thread scratch keeps the pointwise product allocation-free; the
  // buffers only ever grow.
  thread_local AlignedVector<double> phys;
  thread_local AlignedVector<Complex> spec;
  if (phys.size() < 4 * np) phys.resize(4 * np);
  if (spec.size() < ns) spec.resize(ns);
  double* a1 = phys.data();
  double* a2 = a1 + np;
  double* b1 = a2 + np;
  double* b2 = b1 + np;

  auto derivative = [&](const SpectralField& f, const std::vector<double>& d, double* dest) {
    for (std::size_t i = 0; i < ns; ++i) spec[i] = Complex{-d[i] * f[i].imag(), d[i] * f[i].real()};
    fftw_execute_dft_c2r(plans_->c2r, as_fftw(spec.data()), dest);
  };
  derivative(a, waves_.d1, a1);
  derivative(a, waves_.d2, a2);
  derivative(b, waves_.d1, b1);
  derivative(b, waves_.d2, b2);
  for (std::size_t i = 0; i < np; ++i) a1[i] = a1[i] * b2[i] - a2[i] * b1[i];

  SpectralField out(grid_);
  fftw_execute_dft_r2c(plans_->r2c, a1, as_fftw(out.values().data()));
  const double scale = 1.0 / static_cast<double>(np);
  for (std::size_t i = 0; i < ns; ++i) {
    out[i] = waves_.keep[i] ? out[i] * scale : Complex{0.0, 0.0};
  }
  return out;
}

}  // namespace aeuler
