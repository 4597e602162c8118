#include <gtest/gtest.h>

#include <cmath>

#include "soliton/cones.hpp"
#include "soliton/errors.hpp"
#include "soliton/sampling.hpp"

using namespace soliton;

TEST(Cones, GammaKIsStrict) {
  const auto m = contains(ConeSpec::gamma_k(3, 2), {1, 1, -0.5});
  EXPECT_FALSE(m);
  EXPECT_NE(m.violated.find("S_2"), std::string::npos) << m.violated;
  EXPECT_TRUE(contains(ConeSpec::gamma_k(3, 2), {1, 1, -0.4}));
}

TEST(Cones, TwoConvexAndUniform) {
  EXPECT_TRUE(contains(ConeSpec::two_convex(3), {1, 1, 1}));
  EXPECT_FALSE(contains(ConeSpec::two_convex(3), {1, -1, 3}));
  EXPECT_TRUE(contains(ConeSpec::uniform_two_convex(3, 0.1), {-0.1, 1, 1}));
  EXPECT_FALSE(contains(ConeSpec::uniform_two_convex(3, 0.5), {-0.1, 1, 1}));
  EXPECT_FALSE(contains(ConeSpec::uniform_two_convex(3, 0.1), {0, 0, 0}));
}

TEST(Cones, GammaAlphaDeltaIsClosed) {
  const auto s = SpeedSpec::harmonic(3);
  // Umbilic 1.5: (δ+1)H = 2·4.5 = 9 and γ = 1, both exact in binary.
  EXPECT_TRUE(contains(ConeSpec::gamma_alpha_delta(9.0, 1.0, s), {1.5, 1.5, 1.5}));
  EXPECT_FALSE(contains(ConeSpec::gamma_alpha_delta(8.999, 1.0, s), {1.5, 1.5, 1.5}));
}

TEST(Cones, InvalidParameters) {
  EXPECT_THROW(ConeSpec::uniform_two_convex(3, 1.0), ParameterError);
  EXPECT_THROW(ConeSpec::gamma_alpha_delta(-1.0, 0.1, SpeedSpec::harmonic(3)), ParameterError);
  EXPECT_THROW(contains(ConeSpec::two_convex(3), {1, 1}), ParameterError);
}

TEST(Cones, CylRays) {
  const double s3 = 1.0 / std::sqrt(3.0);
  EXPECT_EQ(cyl_ray(3, 0), (CurvatureVector{s3, s3, s3}));
  EXPECT_EQ(cyl_ray(3, 2), (CurvatureVector{1, 0, 0}));
  EXPECT_EQ(cyl_ray(4, 1), (CurvatureVector{s3, s3, s3, 0}));
  EXPECT_THROW(cyl_ray(3, 3), ParameterError);
  EXPECT_THROW(cyl_ray(3, -1), ParameterError);
}

TEST(Cones, ScaleInvarianceAndNesting) {
  SphereSampler sampler(4, 3);
  const auto s = SpeedSpec::harmonic(4);
  const std::vector<ConeSpec> cones{ConeSpec::gamma_k(4, 1), ConeSpec::gamma_k(4, 2), ConeSpec::gamma_k(4, 3),
                                    ConeSpec::two_convex(4), ConeSpec::uniform_two_convex(4, 0.2),
                                    ConeSpec::gamma_alpha_delta(20.0, 0.1, s)};
  for (int i = 0; i < 2000; ++i) {
    const CurvatureVector x = sampler.next();
    for (const auto& c : cones)
      for (double scale : {0.25, 4.0}) EXPECT_EQ(bool(contains(c, x)), bool(contains(c, x.scaled(scale))));
    for (int k = 2; k <= 4; ++k)
      if (contains(ConeSpec::gamma_k(4, k), x)) EXPECT_TRUE(contains(ConeSpec::gamma_k(4, k - 1), x));
  }
}

TEST(Cones, UniformTwoConvexBoundsEntries) {
  SphereSampler sampler(3, 8);
  const double alpha = 5.0, delta = 0.2;
  int hits = 0;
  for (int i = 0; i < 5000; ++i) {
    const CurvatureVector x = sampler.next();
    if (!contains(ConeSpec::uniform_two_convex(3, 0.1), x) || x.mean_curvature() > alpha / (delta + 1)) continue;
    ++hits;
    for (double v : x.values()) EXPECT_LE(std::abs(v), alpha / (delta + 1));
  }
  EXPECT_GT(hits, 0);
}

TEST(Cones, SeparationPositiveForWideCone) {
  const auto sep = cone_separation(ConeSpec::gamma_alpha_delta(100.0, 0.1, SpeedSpec::harmonic(3)), 500, 1);
  EXPECT_EQ(sep.accepted, 500);
  EXPECT_GT(sep.separation, 0.0);
  EXPECT_LE(sep.separation, sep.to_axis_rays);
}

TEST(Cones, SeparationEmptyCone) {
  // H/γ >= 4.5 on the 2-convex sphere (minimum at the umbilic), so α = 1 admits nothing.
  EXPECT_THROW(cone_separation(ConeSpec::gamma_alpha_delta(1.0, 0.1, SpeedSpec::harmonic(3)), 50, 1),
               EmptyConeError);
  EXPECT_THROW(cone_separation(ConeSpec::gamma_alpha_delta(100.0, 0.1, SpeedSpec::harmonic(3)), 0, 1),
               ParameterError);
}

TEST(Cones, DistanceToRays) {
  EXPECT_NEAR(distance_to_axis_rays({1, 0, 0}), 0.0, 1e-15);
  const double s3 = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(distance_to_axis_rays({s3, s3, s3}), std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(distance_to_speed_boundary(SpeedSpec::sigma_k(3, 1), {s3, s3, s3}), 1.0, 1e-12);
}
