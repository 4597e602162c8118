#pragma once

// Adaptive Dormand–Prince 5(4) integrator (FSAL, local extrapolation) for small fixed-size systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <span>

#include "soliton/errors.hpp"

namespace soliton::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-14;
  double initial_step = 0.0;  // <= 0: 1e-3 of the interval
  double min_step_relative = 1e-14;
  long max_steps = 5'000'000;
};

enum class StopReason { reached_end, observer_stop, step_underflow, max_steps };

struct IntegrationStats {
  StopReason reason = StopReason::reached_end;
  double t = 0.0;          // last accepted time
  double last_step = 0.0;  // last attempted step size
  long accepted = 0;
  long rejected = 0;
};

namespace detail {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
bool finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}
}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t_end (t_end > t0).
///
/// `f(t, y) -> State<N>` may throw DomainError; the step is then rejected and shrunk.
/// `observe(t, y, dydt, at_stop) -> bool` runs after every accepted step; returning false halts.
/// Every time in `stops` (ascending, inside (t0, t_end]) is landed on exactly.
template <std::size_t N, class Rhs, class Observer>
IntegrationStats integrate(Rhs&& f, double t0, State<N> y, double t_end, const StepControl& control,
                           Observer&& observe, std::span<const double> stops = {}) {
  using namespace detail;
  IntegrationStats stats;
  stats.t = t0;
  double t = t0;
  State<N> k1 = f(t, y);
  double h = control.initial_step > 0.0 ? control.initial_step : 1e-3 * (t_end - t0);
  std::size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= t0) ++next_stop;

  auto axpy = [](const State<N>& base, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> out = base;
    for (const auto& [coef, k] : terms)
      for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
    return out;
  };

  while (t < t_end) {
    if (stats.accepted + stats.rejected >= control.max_steps) {
      stats.reason = StopReason::max_steps;
      return stats;
    }
    const double h_min = control.min_step_relative * std::max(std::abs(t), 1.0);
    double target = t_end;
    if (next_stop < stops.size()) target = std::min(target, stops[next_stop]);
    bool lands = false;
    const double h_proposed = h;
    if (t + h >= target) {
      h = target - t;
      lands = true;
    }
    stats.last_step = h;
    if (h < h_min) {
      stats.reason = StopReason::step_underflow;
      return stats;
    }

    State<N> k2, k3, k4, k5, k6, k7, y_new;
    bool ok = true;
    try {
      k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
      k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
      k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      k6 = f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      k7 = f(t + h, y_new);
      ok = finite<N>(y_new) && finite<N>(k7);
    } catch (const DomainError&) {
      ok = false;
    }
    if (!ok) {
      h *= 0.25;
      ++stats.rejected;
      continue;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = control.atol + control.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }

    if (err <= 1.0) {
      t = lands ? target : t + h;
      y = y_new;
      k1 = k7;
      ++stats.accepted;
      stats.t = t;
      const bool at_stop = lands && next_stop < stops.size() && target == stops[next_stop];
      if (at_stop) ++next_stop;
      if (!observe(t, y, k1, at_stop)) {
        stats.reason = StopReason::observer_stop;
        return stats;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = lands ? std::max(h * factor, h_proposed) : h * factor;
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  stats.reason = StopReason::reached_end;
  return stats;
}

}  // namespace soliton::ode
