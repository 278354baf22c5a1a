#include "aeuler/vortex.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aeuler/bessel.hpp"
#include "aeuler/errors.hpp"

namespace aeuler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Beyond this ratio x K1(x) and K0(x) are below 1e-16 relative to the
// logarithmic part and are dropped.
constexpr double kFarField = 40.0;

bool is_point(const BlobKernel& kernel) {
  if (!(kernel.alpha >= 0.0)) throw ParameterError("blob smoothing length must be non-negative");
  return kernel.kind == KernelKind::point || kernel.alpha == 0.0;
}

}  // namespace

double tangential_speed(const BlobKernel& kernel, double r, double gamma) {
  if (!(r >= 0.0)) throw ParameterError("distance must be non-negative");
  if (is_point(kernel)) {
    if (r == 0.0) throw SingularityError("point-vortex kernel evaluated at zero separation");
    return gamma / (kTwoPi * r);
  }
  if (r == 0.0) return 0.0;
  const double x = r / kernel.alpha;
  const double core = x > kFarField ? 1.0 : one_minus_x_bessel_k1(x);
  return gamma / (kTwoPi * r) * core;
}

double stream_green(const BlobKernel& kernel, double r) {
  if (!(r >= 0.0)) throw ParameterError("distance must be non-negative");
  if (is_point(kernel)) {
    if (r == 0.0) throw SingularityError("point-vortex Green's function evaluated at zero separation");
    return -std::log(r) / kTwoPi;
  }
  if (r == 0.0) {
    // log r + K0(r/alpha) -> log(2 alpha) - gamma_E
    return -(std::log(2.0 * kernel.alpha) - std::numbers::egamma) / kTwoPi;
  }
  const double x = r / kernel.alpha;
  const double k0 = x > kFarField ? 0.0 : bessel_k0(x);
  return -(std::log(r) + k0) / kTwoPi;
}

void VortexSystem::add(Point p, double gamma) {
  positions.push_back(p.x);
  positions.push_back(p.y);
  circulations.push_back(gamma);
}

namespace {

Point induced(const VortexSystem& system, Point p, std::size_t skip) {
  Point u;
  const bool point_kernel = is_point(system.kernel);
  for (std::size_t j = 0; j < system.size(); ++j) {
    const double gamma = system.circulations[j];
    if (j == skip || gamma == 0.0) continue;
    const double dx = p.x - system.positions[2 * j];
    const double dy = p.y - system.positions[2 * j + 1];
    const double r = std::hypot(dx, dy);
    if (r == 0.0) {
      if (point_kernel) {
        throw SingularityError("velocity requested at the center of point vortex " +
                               std::to_string(j));
      }
      continue;
    }
    const double s = tangential_speed(system.kernel, r, gamma) / r;
    u.x -= s * dy;
    u.y += s * dx;
  }
  return u;
}

}  // namespace

std::vector<Point> velocity_field(const VortexSystem& system, std::span<const Point> query) {
  std::vector<Point> out;
  out.reserve(query.size());
  for (const Point& p : query) out.push_back(induced(system, p, system.size()));
  return out;
}

std::vector<Point> blob_velocities(const VortexSystem& system) {
  std::vector<Point> out;
  out.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) out.push_back(induced(system, system.position(i), i));
  return out;
}

double blob_hamiltonian(const VortexSystem& system) {
  double h = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    for (std::size_t j = i + 1; j < system.size(); ++j) {
      const double r = std::hypot(system.positions[2 * i] - system.positions[2 * j],
                                  system.positions[2 * i + 1] - system.positions[2 * j + 1]);
      h -= system.circulations[i] * system.circulations[j] * stream_green(system.kernel, r);
    }
  }
  return h;
}

double total_circulation(const VortexSystem& system) {
  double g = 0.0;
  for (double c : system.circulations) g += c;
  return g;
}

Point linear_impulse(const VortexSystem& system) {
  Point p;
  for (std::size_t i = 0; i < system.size(); ++i) {
    p.x += system.circulations[i] * system.positions[2 * i];
    p.y += system.circulations[i] * system.positions[2 * i + 1];
  }
  return p;
}

double angular_impulse(const VortexSystem& system) {
  double a = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const Point x = system.position(i);
    a += system.circulations[i] * (x.x * x.x + x.y * x.y);
  }
  return a;
}

std::vector<TrajectorySample> evolve(VortexSystem& system, double t_end, StepController& controller,
                                     double sample_interval) {
  if (!(t_end >= 0.0)) throw ParameterError("t_end must be non-negative");
  if (system.positions.size() != 2 * system.circulations.size()) {
    throw SizeError("vortex positions and circulations disagree in count");
  }
  const RhsFunction<VortexSystem> f = [](double, const VortexSystem& y) {
    VortexSystem dydt = y;
    const auto u = blob_velocities(y);
    for (std::size_t i = 0; i < u.size(); ++i) {
      dydt.positions[2 * i] = u[i].x;
      dydt.positions[2 * i + 1] = u[i].y;
    }
    return dydt;
  };

  std::vector<TrajectorySample> samples{{0.0, system.positions}};
  double t = 0.0;
  std::size_t index = 0;
  while (t < t_end) {
    double target = t_end;
    if (sample_interval > 0.0) {
      target = std::min(t_end, static_cast<double>(++index) * sample_interval);
    }
    advance(system, t, f, controller, target);
    samples.push_back({t, system.positions});
  }
  return samples;
}

VortexSystem sample_field_to_blobs(std::span<const double> q, const GridSpec& grid,
                                   const BlobKernel& kernel) {
  if (q.size() != grid.physical_size()) {
    throw SizeError("vorticity array has " + std::to_string(q.size()) + " values, expected " +
                    std::to_string(grid.physical_size()));
  }
  const int n = grid.n();
  const double h = grid.spacing();
  const double cell = h * h;
  VortexSystem system;
  system.kernel = kernel;
  system.positions.reserve(2 * q.size());
  system.circulations.reserve(q.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      system.add({i * h, j * h}, q[static_cast<std::size_t>(i) * n + j] * cell);
    }
  }
  return system;
}

}  // namespace aeuler
