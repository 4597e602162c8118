#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "soliton/curvature.hpp"

namespace soliton {

/// Seeded source of uniformly distributed unit vectors in ℝⁿ (normalised Gaussians).
class SphereSampler {
 public:
  SphereSampler(int n, std::uint64_t seed) : n_(n), rng_(seed) {}

  CurvatureVector next();

  /// Rejection sampling: first unit vector accepted by `pred`, or nullopt after max_attempts.
  template <class Pred>
  std::optional<CurvatureVector> next_where(Pred&& pred, int max_attempts, int* drawn = nullptr) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      CurvatureVector x = next();
      if (drawn != nullptr) ++*drawn;
      if (pred(x)) return x;
    }
    return std::nullopt;
  }

  /// Symmetric matrix with independent standard normal entries on and above the diagonal.
  Eigen::MatrixXd symmetric_matrix();

  std::mt19937_64& engine() { return rng_; }

 private:
  int n_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace soliton
