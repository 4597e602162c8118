#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "soliton/curvature.hpp"
#include "soliton/speeds.hpp"

namespace soliton {

/// Result of a membership test; `violated` names the failing condition.
struct Membership {
  bool inside = true;
  std::string violated;

  explicit operator bool() const { return inside; }
  static Membership yes() { return {}; }
  static Membership no(std::string why) { return {false, std::move(why)}; }
};

struct GammaK {
  int k = 1;
};
struct TwoConvex {};
struct GammaAlphaDelta {
  double alpha = 1.0;
  double delta = 1.0;
  SpeedSpec speed;
};
struct UniformTwoConvex {
  double beta = 0.5;
};

/// One of the cones Γ_k, the 2-convex cone, Γ_{α,δ} and the uniformly 2-convex cone, in ℝⁿ.
class ConeSpec {
 public:
  using Kind = std::variant<GammaK, TwoConvex, GammaAlphaDelta, UniformTwoConvex>;

  static ConeSpec gamma_k(int n, int k);
  static ConeSpec two_convex(int n);
  static ConeSpec gamma_alpha_delta(double alpha, double delta, SpeedSpec speed);
  static ConeSpec uniform_two_convex(int n, double beta);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const Kind& kind() const { return kind_; }

 private:
  ConeSpec(int n, Kind kind) : n_(n), kind_(std::move(kind)) {}

  int n_;
  Kind kind_;
};

/// Strict inequalities for Γ_k and the 2-convex cone; non-strict for Γ_{α,δ} and uniform
/// 2-convexity. No tolerance is applied. Throws ParameterError on a dimension mismatch.
Membership contains(const ConeSpec& cone, const CurvatureVector& lambda);

/// Membership in the open cone Γ on which `spec` is defined (intersection for products).
Membership speed_domain_contains(const SpeedSpec& spec, const CurvatureVector& lambda);

/// Unit generator of Cyl_j: n−j leading ones, j trailing zeros, normalised.
CurvatureVector cyl_ray(int n, int j);

/// Euclidean distance from a unit vector to the closest ray of Cyl_{n−1} = {t e_i : t > 0}.
double distance_to_axis_rays(const CurvatureVector& unit);

/// Distance from an interior point to ∂Γ of the speed. Exact for the polyhedral cones
/// (Γ_1, Γ_n, 2-convex); a directional bisection estimate (an upper bound) otherwise.
double distance_to_speed_boundary(const SpeedSpec& spec, const CurvatureVector& lambda);

struct ConeSeparation {
  double separation = 0.0;   // min over accepted samples
  double to_axis_rays = 0.0;  // min distance to Cyl_{n−1}
  double to_boundary = 0.0;   // min distance to ∂Γ
  int accepted = 0;
  int drawn = 0;
};

/// Sampled minimum distance of unit vectors in Γ_{α,δ} to Cyl_{n−1} and ∂Γ.
/// Throws ParameterError if samples < 1 or the cone is not Γ_{α,δ}, and EmptyConeError if
/// no drawn unit vector lies in the cone.
ConeSeparation cone_separation(const ConeSpec& cone, int samples, std::uint64_t seed);

}  // namespace soliton
