#include "aeuler/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "aeuler/errors.hpp"

namespace aeuler {

namespace {

constexpr double kEps = 1e-17;
constexpr int kMaxTerms = 500;
constexpr double kSeriesLimit = 2.0;

struct SeriesTerms {
  double k0_sum = 0.0;   // sum_{k>=1} t_k H_k
  double i0 = 0.0;       // sum_{k>=0} t_k
  double i1_sum = 0.0;   // sum_{k>=0} s_k, with I1 = (x/2) * i1_sum
  double k1_sum = 0.0;   // sum_{k>=0} s_k (H_k + H_{k+1} - 2 gamma)
};

// t_k = (x^2/4)^k / (k!)^2 and s_k = (x^2/4)^k / (k! (k+1)!).
SeriesTerms small_argument_series(double x) {
  const double y = 0.25 * x * x;
  const double gamma = std::numbers::egamma;
  SeriesTerms r;
  double t = 1.0;
  double s = 1.0;
  double h = 0.0;  // H_k
  r.i0 = 1.0;
  r.i1_sum = 1.0;
  r.k1_sum = 1.0 - 2.0 * gamma;  // k = 0: H_0 + H_1 - 2 gamma
  for (int k = 1; k < kMaxTerms; ++k) {
    t *= y / (static_cast<double>(k) * k);
    s *= y / (static_cast<double>(k) * (k + 1));
    h += 1.0 / k;
    const double h_next = h + 1.0 / (k + 1);
    r.i0 += t;
    r.k0_sum += t * h;
    r.i1_sum += s;
    r.k1_sum += s * (h + h_next - 2.0 * gamma);
    if (t < kEps * r.i0 && s < kEps * r.i1_sum) break;
  }
  return r;
}

// Steed's method (continued fraction CF2 with Temme's normalization sum) for
// order mu = 0; returns K0 and K1.
void large_argument_pair(double x, double& k0, double& k1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < kMaxTerms; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

void check_argument(double x) {
  if (!(x > 0.0)) throw ParameterError("modified Bessel K needs a positive argument");
}

}  // namespace

double bessel_k0(double x) {
  check_argument(x);
  if (x <= kSeriesLimit) {
    const SeriesTerms r = small_argument_series(x);
    return -(std::log(0.5 * x) + std::numbers::egamma) * r.i0 + r.k0_sum;
  }
  double k0 = 0.0, k1 = 0.0;
  large_argument_pair(x, k0, k1);
  return k0;
}

double bessel_k1(double x) {
  check_argument(x);
  if (x <= kSeriesLimit) {
    const SeriesTerms r = small_argument_series(x);
    const double i1 = 0.5 * x * r.i1_sum;
    return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * r.k1_sum;
  }
  double k0 = 0.0, k1 = 0.0;
  large_argument_pair(x, k0, k1);
  return k1;
}

double x_bessel_k1(double x) {
  if (x == 0.0) return 1.0;
  return x * bessel_k1(x);
}

double one_minus_x_bessel_k1(double x) {
  if (x == 0.0) return 0.0;
  check_argument(x);
  if (x <= kSeriesLimit) {
    const SeriesTerms r = small_argument_series(x);
    const double i1 = 0.5 * x * r.i1_sum;
    return -x * std::log(0.5 * x) * i1 + 0.25 * x * x * r.k1_sum;
  }
  return 1.0 - x * bessel_k1(x);
}

}  // namespace aeuler
