#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace soliton {

/// Principal curvature vector λ = (λ_1, ..., λ_n). Derived scalars are computed
/// views of the stored entries and never cached.
class CurvatureVector {
 public:
  CurvatureVector() = default;
  explicit CurvatureVector(std::vector<double> lambda) : lambda_(std::move(lambda)) {}
  CurvatureVector(std::initializer_list<double> lambda) : lambda_(lambda) {}

  [[nodiscard]] std::size_t size() const { return lambda_.size(); }
  [[nodiscard]] int n() const { return static_cast<int>(lambda_.size()); }
  [[nodiscard]] double operator[](std::size_t i) const { return lambda_[i]; }
  [[nodiscard]] std::span<const double> values() const { return lambda_; }
  [[nodiscard]] const std::vector<double>& vector() const { return lambda_; }

  /// Mean curvature H = Σ λ_i.
  [[nodiscard]] double mean_curvature() const {
    return std::accumulate(lambda_.begin(), lambda_.end(), 0.0);
  }
  /// Smallest principal curvature.
  [[nodiscard]] double smallest() const {
    return *std::min_element(lambda_.begin(), lambda_.end());
  }
  /// S_{1,1} = H − λ_min.
  [[nodiscard]] double mean_minus_smallest() const { return mean_curvature() - smallest(); }

  /// Smallest pairwise sum λ_i + λ_j, i < j. Requires n >= 2.
  [[nodiscard]] double min_pair_sum() const {
    std::vector<double> sorted = lambda_;
    std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end());
    return sorted[0] + sorted[1];
  }

  [[nodiscard]] double norm() const {
    double s = 0.0;
    for (double x : lambda_) s += x * x;
    return std::sqrt(s);
  }

  [[nodiscard]] CurvatureVector scaled(double c) const {
    std::vector<double> out = lambda_;
    for (double& x : out) x *= c;
    return CurvatureVector(std::move(out));
  }

  friend bool operator==(const CurvatureVector&, const CurvatureVector&) = default;

 private:
  std::vector<double> lambda_;
};

}  // namespace soliton
