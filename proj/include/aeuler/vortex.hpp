#pragma once

#include <span>
#include <vector>

#include "aeuler/cash_karp.hpp"
#include "aeuler/grid.hpp"

namespace aeuler {

enum class KernelKind { point, bessel_k0 };

/// Smoothed Biot-Savart kernel. For bessel_k0 the stream Green's function
/// solves -Laplacian (1 - alpha^2 Laplacian) G = delta in the plane:
///   G(r) = -(log r + K0(r/alpha)) / (2 pi).
struct BlobKernel {
  KernelKind kind = KernelKind::point;
  double alpha = 0.0;
};

/// Azimuthal speed induced at distance r by a blob of circulation gamma.
/// Throws SingularityError for the point kernel at r = 0.
double tangential_speed(const BlobKernel& kernel, double r, double gamma);

/// Stream Green's function of unit circulation, with u_theta = -dG/dr.
double stream_green(const BlobKernel& kernel, double r);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// N blobs in the unbounded plane. The integrator advances positions only;
/// circulations are carried unchanged.
struct VortexSystem {
  std::vector<double> positions;     // x0, y0, x1, y1, ...
  std::vector<double> circulations;  // one per blob
  BlobKernel kernel;

  std::size_t size() const { return circulations.size(); }
  Point position(std::size_t i) const { return {positions[2 * i], positions[2 * i + 1]}; }
  void add(Point p, double gamma);

  std::span<double> values() { return positions; }
  std::span<const double> values() const { return positions; }
};

/// Direct summation of all blob contributions at each query point.
std::vector<Point> velocity_field(const VortexSystem& system, std::span<const Point> query);

/// Velocity of every blob induced by the others.
std::vector<Point> blob_velocities(const VortexSystem& system);

/// H = -sum_{i<j} G_i G_j G(|x_i - x_j|).
double blob_hamiltonian(const VortexSystem& system);

double total_circulation(const VortexSystem& system);
Point linear_impulse(const VortexSystem& system);
double angular_impulse(const VortexSystem& system);

struct TrajectorySample {
  double t = 0.0;
  std::vector<double> positions;
};

/// Advances the blob positions to t_end with the adaptive Cash-Karp
/// integrator, sampling every `sample_interval` (0: endpoints only).
std::vector<TrajectorySample> evolve(VortexSystem& system, double t_end, StepController& controller,
                                     double sample_interval = 0.0);

/// One blob per grid point carrying q(x_i) times the cell area.
VortexSystem sample_field_to_blobs(std::span<const double> q, const GridSpec& grid,
                                   const BlobKernel& kernel);

}  // namespace aeuler
