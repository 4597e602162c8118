#include "soliton/sampling.hpp"

#include <cmath>
#include <vector>

namespace soliton {

CurvatureVector SphereSampler::next() {
  std::vector<double> x(static_cast<std::size_t>(n_));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& xi : x) {
      xi = normal_(rng_);
      norm2 += xi * xi;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& xi : x) xi *= inv;
  return CurvatureVector(std::move(x));
}

Eigen::MatrixXd SphereSampler::symmetric_matrix() {
  Eigen::MatrixXd t(n_, n_);
  for (int a = 0; a < n_; ++a) {
    for (int b = a; b < n_; ++b) {
      t(a, b) = normal_(rng_);
      t(b, a) = t(a, b);
    }
  }
  return t;
}

}  // namespace soliton
