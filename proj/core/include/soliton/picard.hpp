#pragma once

#include <optional>
#include <vector>

namespace soliton {

/// Values of w at the uniform nodes r_i = i·R/(m−1).
struct GridFunction {
  double R = 0.0;
  std::vector<double> values;

  [[nodiscard]] int m() const { return static_cast<int>(values.size()); }
  [[nodiscard]] double node(int i) const { return i * R / (m() - 1); }
};

/// Samples f at the m nodes of [0, R].
template <class F>
GridFunction sample_grid(double R, int m, F&& f) {
  GridFunction g{R, std::vector<double>(static_cast<std::size_t>(m))};
  for (int i = 0; i < m; ++i) g.values[i] = f(g.node(i));
  return g;
}

/// R_1(n) = 12/(n²+5n+2), the right end of the w2 domain.
double picard_radius_R1(int n);

/// True when values[0] = 0 and w4 <= w <= w3 at every other node.
bool in_barrier_space(int n, const GridFunction& w);

struct OperatorResult {
  GridFunction image;
  int clamp_events = 0;
  double max_clamp = 0.0;            // largest distance moved by the clamp
  std::vector<int> clamped_nodes;    // nodes where the raw quadrature left [w4, w3]
};

/// T(w)(r) = ∫_0^r g(w/s)(1+w²) ds with g(x) = x(n−x)/(x−(n−1)(n−2)/4), by cumulative trapezoid.
/// The s = 0 integrand uses the slope w_1/r_1 clamped to the [w4, w3] slope band.
/// The result is clamped into [w4, w3]. Throws XViolationError if w/s <= (n−1)(n−2)/4 at a node.
OperatorResult operator_T(int n, const GridFunction& w);

struct PicardOptions {
  double R = 0.0;  // <= 0: R_1(n)
  int m = 2048;
  double tol = 1e-12;
  int max_iter = 2000;
  /// Damping θ in w ← (1−θ)w + θ T(w). Unset: 2/(2+|g'(c)|) with c the startup slope.
  std::optional<double> relaxation;
};

struct PicardIteration {
  double sup_change = 0.0;
  std::optional<double> contraction_ratio;  // sup_change / previous sup_change
  int clamp_events = 0;
};

struct PicardResult {
  int n = 0;
  double tol = 0.0;
  double relaxation = 1.0;
  GridFunction fixed_point;
  std::vector<PicardIteration> iterations;
  bool converged = false;

  [[nodiscard]] double max_contraction_ratio() const;
};

/// The undamped fixed-point map x ↦ g(x) has slope g'(c) = −(n+3q)/(n−q) at the startup slope c,
/// below −1 for every n; this is the damping that maps it to the symmetric contraction factor.
double default_relaxation(int n);

/// Iterates from the midpoint of [w4, min(w3, w2)] until the sup change drops below tol.
/// Throws ParameterError on bad inputs and ContractionFailure after three consecutive ratios >= 1.
PicardResult picard_solve(int n, const PicardOptions& options = {});

struct LipschitzEstimate {
  double C = 0.0;   // sup of ∂_w G_n / r over the sampled band
  double R2 = 0.0;  // √(2·0.99/C) when C > 0, +inf otherwise
  double argmax_r = 0.0;
  double argmax_w = 0.0;
  double fd_relative_error = 0.0;  // analytic vs central difference at the argmax
  int samples = 0;
};

/// Samples r ∈ (0, R_1], w ∈ [w4(r), w3(r)] on a tensor grid of about `samples` points.
LipschitzEstimate lipschitz_radius(int n, int samples = 10000);

}  // namespace soliton
