#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "aeuler/errors.hpp"

namespace aeuler {

/// A state the integrator can advance: copyable, exposing its degrees of
/// freedom as one contiguous span of real or complex values.
template <class S>
concept IntegrableState = std::copyable<S> && requires(S& s, const S& cs) {
  { s.values() };
  { cs.values() };
};

template <class S>
using RhsFunction = std::function<S(double t, const S& y)>;

template <class S>
using PostStepHook = std::function<void(S& y)>;

struct StepController {
  double rtol = 1e-6;
  double atol = 1e-10;
  double safety = 0.9;
  double min_shrink = 0.1;
  double max_grow = 5.0;
  double dt = 1e-3;
  double dt_min = 1e-12;

  void validate() const {
    if (!(rtol >= 0.0) || !(atol >= 0.0) || rtol + atol <= 0.0) {
      throw ParameterError("tolerances must be non-negative and not both zero");
    }
    if (!(min_shrink > 0.0 && min_shrink < 1.0 && max_grow > 1.0)) {
      throw ParameterError("step clamps need 0 < min_shrink < 1 < max_grow");
    }
    if (!(safety > 0.0 && safety <= 1.0)) throw ParameterError("safety factor must lie in (0, 1]");
    if (!(dt > 0.0) || !(dt_min >= 0.0)) throw ParameterError("step size must be positive");
  }
};

struct StepOutcome {
  bool accepted = false;
  double error_estimate = 0.0;  // normalized; accepted iff <= 1
  double dt_used = 0.0;
  double dt_next = 0.0;
};

template <class S>
struct CashKarpStep {
  S candidate;  // fifth-order solution
  S error;      // difference to the embedded fourth-order solution
};

namespace cash_karp {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 3.0 / 5.0, c5 = 1.0, c6 = 7.0 / 8.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 3.0 / 10.0, a42 = -9.0 / 10.0, a43 = 6.0 / 5.0;
inline constexpr double a51 = -11.0 / 54.0, a52 = 5.0 / 2.0, a53 = -70.0 / 27.0, a54 = 35.0 / 27.0;
inline constexpr double a61 = 1631.0 / 55296.0, a62 = 175.0 / 512.0, a63 = 575.0 / 13824.0,
                        a64 = 44275.0 / 110592.0, a65 = 253.0 / 4096.0;
inline constexpr double b1 = 37.0 / 378.0, b3 = 250.0 / 621.0, b4 = 125.0 / 594.0,
                        b6 = 512.0 / 1771.0;
inline constexpr double e1 = b1 - 2825.0 / 27648.0, e3 = b3 - 18575.0 / 48384.0,
                        e4 = b4 - 13525.0 / 55296.0, e5 = -277.0 / 14336.0, e6 = b6 - 0.25;

}  // namespace cash_karp

namespace detail {

template <class V>
bool all_finite(std::span<const V> v) {
  for (const auto& x : v) {
    if constexpr (std::is_floating_point_v<V>) {
      if (!std::isfinite(x)) return false;
    } else {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    }
  }
  return true;
}

// out = y + dt * sum_i w_i k_i, for the stages with nonzero weight.
template <class S>
S combine(const S& y, double dt, std::initializer_list<std::pair<double, const S*>> terms) {
  S out = y;
  auto o = out.values();
  for (const auto& [w, k] : terms) {
    if (w == 0.0) continue;
    auto kv = k->values();
    const double s = dt * w;
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += s * kv[i];
  }
  return out;
}

// |x| without the overflow guard of std::abs(complex), which costs a hypot.
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::sqrt(std::norm(z)); }

template <class S>
S zeros_like(const S& y) {
  S z = y;
  auto v = z.values();
  std::fill(v.begin(), v.end(), typename decltype(v)::value_type{});
  return z;
}

template <class S>
S evaluate(const RhsFunction<S>& f, double t, const S& y) {
  S k = f(t, y);
  auto v = std::as_const(k).values();
  if (!all_finite(v)) {
    throw DivergenceError("non-finite right-hand side at t=" + std::to_string(t));
  }
  return k;
}

}  // namespace detail

/// One Cash-Karp 5(4) step of size dt from (t, y).
template <IntegrableState S>
CashKarpStep<S> ck_step(const S& y, double t, const RhsFunction<S>& f, double dt) {
  using namespace cash_karp;
  if (!(dt > 0.0)) throw ParameterError("step size must be positive");
  const S k1 = detail::evaluate(f, t, y);
  const S k2 = detail::evaluate(f, t + c2 * dt, detail::combine(y, dt, {{a21, &k1}}));
  const S k3 = detail::evaluate(f, t + c3 * dt, detail::combine(y, dt, {{a31, &k1}, {a32, &k2}}));
  const S k4 = detail::evaluate(
      f, t + c4 * dt, detail::combine(y, dt, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const S k5 = detail::evaluate(
      f, t + c5 * dt, detail::combine(y, dt, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const S k6 = detail::evaluate(
      f, t + c6 * dt,
      detail::combine(y, dt, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));

  CashKarpStep<S> step{
      detail::combine(y, dt, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b6, &k6}}),
      detail::combine(detail::zeros_like(y), dt,
                      {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}})};
  return step;
}

/// RMS over all values of |error| / (atol + rtol * max(|y|, |y_new|)).
template <IntegrableState S>
double error_norm(const S& y, const CashKarpStep<S>& step, double rtol, double atol) {
  auto yv = y.values();
  auto cv = step.candidate.values();
  auto ev = step.error.values();
  if (ev.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double scale =
        atol + rtol * std::max(detail::magnitude(yv[i]), detail::magnitude(cv[i]));
    const double r = detail::magnitude(ev[i]) / scale;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(ev.size()));
}

struct AdvanceLog {
  std::vector<StepOutcome> steps;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double last_dt = 0.0;  // size of the last accepted step
};

/// Integrates y from t to t_target with error-controlled steps.
///
/// `y` and `t` are only updated by accepted steps, so on StiffnessError they
/// hold the last committed state. `ctl.dt` carries the proposed next step
/// across calls; a step shortened to land on t_target leaves it unchanged.
/// `post_step`, when set, runs after each accepted step and does not enter
/// the error estimate.
template <IntegrableState S>
AdvanceLog advance(S& y, double& t, const RhsFunction<S>& f, StepController& ctl, double t_target,
                   const PostStepHook<S>& post_step = {}) {
  ctl.validate();
  if (t_target < t) throw ParameterError("advance target lies in the past");
  AdvanceLog log;
  while (t < t_target) {
    const double remaining = t_target - t;
    const bool lands = remaining <= ctl.dt * (1.0 + 1e-12);
    const double dt = lands ? remaining : ctl.dt;

    CashKarpStep<S> step = ck_step(y, t, f, dt);
    const double err = error_norm(y, step, ctl.rtol, ctl.atol);
    StepOutcome outcome{err <= 1.0, err, dt, 0.0};

    if (outcome.accepted) {
      const double grow = err == 0.0 ? ctl.max_grow : ctl.safety * std::pow(err, -0.2);
      const double dt_next = dt * std::clamp(grow, ctl.min_shrink, ctl.max_grow);
      y = std::move(step.candidate);
      t = lands ? t_target : t + dt;
      if (post_step) post_step(y);
      if (!lands) {
        ctl.dt = dt_next;
      } else if (grow < 1.0) {
        ctl.dt = std::min(ctl.dt, dt_next);
      }
      outcome.dt_next = ctl.dt;
      log.last_dt = dt;
      ++log.accepted;
    } else {
      const double shrink = std::isfinite(err) ? ctl.safety * std::pow(err, -0.25) : ctl.min_shrink;
      ctl.dt = dt * std::clamp(shrink, ctl.min_shrink, 1.0);
      outcome.dt_next = ctl.dt;
      ++log.rejected;
      if (ctl.dt < ctl.dt_min) {
        log.steps.push_back(outcome);
        throw StiffnessError("step size " + std::to_string(ctl.dt) + " fell below dt_min at t=" +
                                 std::to_string(t),
                             t, ctl.dt);
      }
    }
    log.steps.push_back(outcome);
  }
  return log;
}

/// Fixed-step integration with the fifth-order solution; no error control.
template <IntegrableState S>
void integrate_fixed(S& y, double& t, const RhsFunction<S>& f, double dt, std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) {
    y = ck_step(y, t, f, dt).candidate;
    t += dt;
  }
}

}  // namespace aeuler
