#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "soliton/curvature.hpp"

namespace soliton {

class SpeedSpec;

/// γ = S_k^{1/k} on the Gårding cone Γ_k.
struct SigmaKRoot {
  int k = 1;
  friend bool operator==(const SigmaKRoot&, const SigmaKRoot&) = default;
};

/// γ = (Σ_{i<j} 1/(λ_i+λ_j))^{-1} on the 2-convex cone.
struct HarmonicPairs {
  friend bool operator==(const HarmonicPairs&, const HarmonicPairs&) = default;
};

/// γ = (S_k/S_l)^{1/(k-l)} on Γ_k, 0 < l < k <= n.
struct Quotient {
  int k = 2;
  int l = 1;
  friend bool operator==(const Quotient&, const Quotient&) = default;
};

/// γ = Π f_i^{w_i} with Σ w_i = 1, on the intersection of the factor cones.
struct WeightedProduct {
  std::vector<SpeedSpec> factors;
  std::vector<double> weights;
  friend bool operator==(const WeightedProduct&, const WeightedProduct&);
};

/// Descriptor of a curvature speed γ together with the dimension n it acts on.
/// Construct through the named factories; they enforce the invariants.
class SpeedSpec {
 public:
  using Kind = std::variant<SigmaKRoot, HarmonicPairs, Quotient, WeightedProduct>;

  static SpeedSpec sigma_k(int n, int k);
  static SpeedSpec harmonic(int n);
  static SpeedSpec quotient(int n, int k, int l);
  static SpeedSpec product(std::vector<SpeedSpec> factors, std::vector<double> weights);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const Kind& kind() const { return kind_; }

  template <class T>
  [[nodiscard]] bool is() const { return std::holds_alternative<T>(kind_); }
  template <class T>
  [[nodiscard]] const T& as() const { return std::get<T>(kind_); }

  /// Stable short name, e.g. "sigma-k(2)", "harmonic", "quotient(3,1)".
  [[nodiscard]] std::string name() const;

  friend bool operator==(const SpeedSpec&, const SpeedSpec&) = default;

 private:
  SpeedSpec(int n, Kind kind) : n_(n), kind_(std::move(kind)) {}

  int n_ = 1;
  Kind kind_;
};

inline bool operator==(const WeightedProduct& a, const WeightedProduct& b) {
  return a.factors == b.factors && a.weights == b.weights;
}

struct SpeedDerivatives {
  double value = 0.0;
  Eigen::VectorXd gradient;  // γ̇^a
  Eigen::MatrixXd hessian;   // γ̈^{ab}
};

/// Unnormalised k-th elementary symmetric polynomial. Throws ParameterError unless 1 <= k <= n.
double eval_sigma_k(const CurvatureVector& lambda, int k);

/// γ(λ). Throws DomainError naming the violated cone condition when λ is outside Γ.
/// The result depends only on the multiset of entries (bit-for-bit permutation invariant).
double eval_speed(const SpeedSpec& spec, const CurvatureVector& lambda);

/// γ, its gradient and Hessian in λ, from closed-form derivative formulas.
SpeedDerivatives eval_derivatives(const SpeedSpec& spec, const CurvatureVector& lambda);

/// Second derivative of the matrix function A ↦ γ(λ(A)) at A = diag(λ) in direction T:
///   γ̈^{ab} T_aa T_bb + 2 Σ_{a<b} (γ̇^b − γ̇^a)/(λ_b − λ_a) |T_ab|².
/// Requires pairwise distinct λ (relative gap 1e-10), else DegenerateEigenvalueError.
double hessian_quadratic_form(const SpeedSpec& spec, const CurvatureVector& lambda,
                              const Eigen::MatrixXd& T);

enum class Property {
  symmetry,
  positivity,
  monotonicity,
  homogeneity,
  euler_relation,
  gradient_oracle,
  off_radial_concavity,
  radial_flatness,
  boundary_vanishing,
};

std::string to_string(Property p);

struct PropertyOutcome {
  Property property;
  double tolerance = 0.0;
  int passes = 0;
  int failures = 0;
  double worst = 0.0;  // largest observed violation measure
  std::optional<std::vector<double>> witness;  // first failing sample
};

struct PropertyReport {
  std::string speed;
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyOutcome> outcomes;

  [[nodiscard]] const PropertyOutcome& outcome(Property p) const;
  [[nodiscard]] bool satisfied(Property p) const { return outcome(p).failures == 0; }
  [[nodiscard]] int total_failures() const;
};

/// Seeded property suite over unit-norm interior points of the speed's cone.
/// Failures are reported, never thrown (apart from ParameterError on sample_count < 1).
PropertyReport check_properties(const SpeedSpec& spec, int sample_count, std::uint64_t seed);

}  // namespace soliton
