#include <gtest/gtest.h>

#include <cmath>

#include "soliton/barriers.hpp"
#include "soliton/errors.hpp"
#include "soliton/picard.hpp"
#include "soliton/profiles.hpp"

using namespace soliton;

namespace {

double rk_slope_at(int n, double r) {
  ProfileOptions o;
  o.r_max = r;
  return integrate_profile(SpeedSpec::harmonic(n), o).samples.back().du;
}

double sup_diff_against_rk(int n, const GridFunction& g) {
  ProfileOptions o;
  o.r_max = g.R;
  for (int i = 1; i < g.m(); ++i)
    if (g.node(i) > o.startup_radius) o.output_radii.push_back(g.node(i));
  const auto p = integrate_profile(SpeedSpec::harmonic(n), o);
  double worst = 0.0;
  std::size_t j = 1;
  for (int i = 1; i < g.m(); ++i) {
    if (g.node(i) <= o.startup_radius) continue;
    worst = std::max(worst, std::abs(g.values[i] - p.samples[j++].du));
  }
  return worst;
}

}  // namespace

TEST(OperatorT, W1GridAtThree) {
  const double R = 0.2;
  const auto w1 = Barrier::make(BarrierName::w1, 3);
  const auto g = sample_grid(R, 2001, [&](double r) { return w1(r); });
  const auto t = operator_T(3, g);
  EXPECT_EQ(t.clamp_events, 0);
  EXPECT_NEAR(t.image.values[1000], 0.175 + 343.0 / 192.0 * 1e-3, 1e-8);
  EXPECT_NEAR(t.image.values[1000], 0.1767865, 1e-7);
}

TEST(OperatorT, DegenerateGridIsNearIdentity) {
  const auto w1 = Barrier::make(BarrierName::w1, 4);
  const auto g = sample_grid(1e-6, 2, [&](double r) { return w1(r); });
  const auto t = operator_T(4, g);
  EXPECT_NEAR(t.image.values[1], g.values[1], 1e-9 * g.values[1] + 1e-15);
}

TEST(OperatorT, PreservesLowerBarrier) {
  for (int n = 3; n <= 6; ++n) {
    const auto w4 = Barrier::make(BarrierName::w4, n);
    const auto g = sample_grid(picard_radius_R1(n), 513, [&](double r) { return w4(r); });
    const auto t = operator_T(n, g);
    for (int i = 1; i < g.m(); ++i) EXPECT_GE(t.image.values[i], g.values[i]);
    EXPECT_TRUE(in_barrier_space(n, t.image));
  }
}

TEST(OperatorT, ClampsOnlyNearAxisAndShrinksWithM) {
  const int n = 3;
  const double R = picard_radius_R1(n);
  double prev = INFINITY;
  for (int m : {257, 1025, 4097}) {
    ProfileOptions o;
    o.r_max = R;
    GridFunction g{R, std::vector<double>(static_cast<std::size_t>(m), 0.0)};
    for (int i = 1; i < m; ++i)
      if (g.node(i) > o.startup_radius) o.output_radii.push_back(g.node(i));
    const auto p = integrate_profile(SpeedSpec::harmonic(n), o);
    std::size_t j = 1;
    for (int i = 1; i < m; ++i)
      g.values[i] = g.node(i) <= o.startup_radius ? startup_slope(SpeedSpec::harmonic(n)) * g.node(i)
                                                  : p.samples[j++].du;
    const auto t = operator_T(n, g);
    for (int node : t.clamped_nodes) EXPECT_LE(node, 2);
    EXPECT_LE(t.max_clamp, prev);
    prev = t.max_clamp;
  }
}

TEST(OperatorT, MidpointOfBandLeavesBandAwayFromAxis) {
  // Slope (w4 + w3)/2 near the axis lies below the fixed-point slope, so T overshoots w3.
  const int n = 3;
  const auto w4 = Barrier::make(BarrierName::w4, n), w3 = Barrier::make(BarrierName::w3, n);
  const auto g = sample_grid(picard_radius_R1(n), 257, [&](double r) { return 0.5 * (w4(r) + w3(r)); });
  const auto t = operator_T(n, g);
  EXPECT_GT(t.clamped_nodes.size(), 2u);
  for (int i = 0; i < t.image.m(); ++i) EXPECT_LE(t.image.values[i], w3(t.image.node(i)) + 1e-15);
}

TEST(OperatorT, XViolation) {
  const auto g = sample_grid(0.3, 65, [](double r) { return 0.4 * r; });
  EXPECT_THROW(operator_T(3, g), XViolationError);
}

TEST(Picard, ConvergesAndMatchesRk) {
  PicardOptions o;
  o.R = 0.3;
  const auto res = picard_solve(3, o);
  ASSERT_TRUE(res.converged);
  EXPECT_LT(sup_diff_against_rk(3, res.fixed_point), 1e-7);
  EXPECT_NEAR(res.fixed_point.values[1] / res.fixed_point.node(1), 1.75, 1e-3);
  EXPECT_NEAR(res.fixed_point.values.back(), rk_slope_at(3, 0.3), 1e-7);
}

TEST(Picard, DefaultRadiusContracts) {
  const auto res = picard_solve(3);
  ASSERT_TRUE(res.converged);
  EXPECT_DOUBLE_EQ(res.fixed_point.R, picard_radius_R1(3));
  EXPECT_LT(res.max_contraction_ratio(), 1.0);
  const auto w1 = Barrier::make(BarrierName::w1, 3), w2 = Barrier::make(BarrierName::w2, 3);
  const auto w3 = Barrier::make(BarrierName::w3, 3), w4 = Barrier::make(BarrierName::w4, 3);
  for (int i = 1; i < res.fixed_point.m(); ++i) {
    const double r = res.fixed_point.node(i), w = res.fixed_point.values[i];
    EXPECT_LT(w4(r), w);
    EXPECT_LT(w, w3(r));
    EXPECT_GE(w, w1(r) * (1 - 1e-9));
    EXPECT_LE(w, w2(r) * (1 + 1e-9));
  }
}

TEST(Picard, TrapezoidOrder) {
  PicardOptions a;
  a.m = 513;
  PicardOptions b = a;
  b.m = 2 * a.m - 1;
  PicardOptions c = b;
  c.m = 2 * b.m - 1;
  const auto fa = picard_solve(3, a).fixed_point, fb = picard_solve(3, b).fixed_point,
             fc = picard_solve(3, c).fixed_point;
  double d1 = 0.0, d2 = 0.0;
  for (int i = 0; i < fa.m(); ++i) {
    d1 = std::max(d1, std::abs(fa.values[i] - fb.values[2 * i]));
    d2 = std::max(d2, std::abs(fb.values[2 * i] - fc.values[4 * i]));
  }
  EXPECT_GT(d1 / d2, 3.0);
  EXPECT_LT(d1 / d2, 5.0);
}

TEST(Picard, LiteralIterationIsSlowerThanDamped) {
  PicardOptions o;
  o.m = 257;
  o.max_iter = 2000;
  const auto damped = picard_solve(3, o);
  o.relaxation = 1.0;
  const auto literal = picard_solve(3, o);
  ASSERT_TRUE(damped.converged);
  ASSERT_TRUE(literal.converged);
  EXPECT_GT(literal.iterations.size(), 3 * damped.iterations.size());
  double gap = 0.0;
  for (int i = 0; i < damped.fixed_point.m(); ++i)
    gap = std::max(gap, std::abs(literal.fixed_point.values[i] - damped.fixed_point.values[i]));
  EXPECT_LT(gap, 1e-10);
}

TEST(Picard, Preconditions) {
  PicardOptions o;
  o.m = 32;
  EXPECT_THROW(picard_solve(3, o), ParameterError);
  EXPECT_THROW(picard_solve(7), ParameterError);
  EXPECT_NEAR(picard_radius_R1(3), 12.0 / 26, 1e-15);
}

TEST(Lipschitz, BoundedAboveWithInfiniteRadius) {
  for (int n = 3; n <= 6; ++n) {
    const auto e = lipschitz_radius(n, 4000);
    EXPECT_TRUE(std::isfinite(e.C));
    EXPECT_GT(e.R2, 0.0);
    if (e.C > 0) {
      EXPECT_NEAR(e.C * e.R2 * e.R2 / 2, 0.99, 1e-12);
    } else {
      EXPECT_TRUE(std::isinf(e.R2));
    }
    EXPECT_LT(e.fd_relative_error, 1e-5);
  }
}

TEST(Lipschitz, AxisScaling) {
  // r²·∂_wG/r along w1 tends to g'(c) = −(n+3q)/(n−q).
  for (int n = 3; n <= 6; ++n) {
    const double c = (n * n + n + 2) / 8.0, q = harmonic_pole_slope(n);
    const double r = 1e-5;
    EXPECT_NEAR(r * rhs_G_dw(n, r, c * r), -(n + 3 * q) / (n - q), 1e-6) << n;
  }
}
