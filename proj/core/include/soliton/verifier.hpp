#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soliton/cones.hpp"
#include "soliton/profile_io.hpp"
#include "soliton/profiles.hpp"

namespace soliton {

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

using NamedValues = std::vector<std::pair<std::string, double>>;

struct Witness {
  std::string coordinate;  // "r" or "z"
  double at = 0.0;
  NamedValues values;
};

/// One named check. worst_violation <= tolerance exactly when status is pass.
struct CheckEntry {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double tolerance = 0.0;
  double worst_violation = 0.0;
  std::optional<Witness> witness;
  NamedValues stats;
  std::string note;
};

struct VerificationReport {
  std::optional<ProfileMetadata> profile;
  std::vector<std::pair<std::string, std::string>> context;
  std::vector<CheckEntry> checks;

  /// No check failed (skipped checks do not count against).
  [[nodiscard]] bool passed() const;
  void add(CheckEntry entry) { checks.push_back(std::move(entry)); }
  void add(std::vector<CheckEntry> entries);
};

/// max |γ(λ) − 1/√(1+u̇²)| over the samples; a sample outside Γ fails with a witness.
CheckEntry check_soliton(const ProfileSolution& profile, double tol = 1e-8);

struct ConvexityParams {
  double alpha = 0.0;
  double delta = 0.0;
  double beta = 0.0;
};

/// α = 1.05·sup (δ+1)H/γ and β = 0.9·inf (min pair sum)/H over the samples inside Γ.
ConvexityParams fit_convexity_params(const ProfileSolution& profile, double delta);

/// λ_min − (H − αγ) at one curvature vector.
double convexity_slack(const SpeedSpec& speed, const CurvatureVector& lambda, double alpha);

/// On samples with (δ+1)H <= αγ and λ_i+λ_j >= βH, asserts λ_min >= H − αγ − 1e-10.
CheckEntry check_convexity_estimate(const ProfileSolution& profile, const ConvexityParams& params);

/// Pointwise barrier orderings at relative tolerance 1e-9.
/// S_k^{1/k}: v1 <= u̇, u̇ <= v2 (k < n), u̇ <= v3 on its domain.
/// Harmonic: w1 <= u̇, w4 <= u̇, u̇ <= w2 and u̇ <= w3 on their domains, and w5 <= u̇ on the
/// final 10% before the blow-up radius (the predicted one when none was detected).
std::vector<CheckEntry> check_barriers(const ProfileSolution& profile);

/// H < 0, K > 0 and |√(λ1λ2) − |⟨ν,e3⟩|| <= tol along the cylindrical profile.
/// Heights below the reachable range are skipped.
std::vector<CheckEntry> check_sigma2_cylinder(std::span<const double> z_samples, double a = 0.0,
                                              double tol = 1e-9);

struct PinchingEstimate {
  double gradient_pinching = 0.0;  // sup max_a γ̇^a / min_a γ̇^a
  double hessian_sup = 0.0;        // sup of (second derivative in T)·H/|T|²
  int accepted = 0;
  int skipped = 0;
};

/// Samples unit vectors in `cone`, one random symmetric direction T per sample.
PinchingEstimate estimate_pinching_constants(const SpeedSpec& spec, const ConeSpec& cone, int samples,
                                             std::uint64_t seed);

}  // namespace soliton
