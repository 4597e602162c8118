#include "soliton/symmetric.hpp"

#include <algorithm>

namespace soliton {

std::vector<double> elementary_symmetric(std::span<const double> x, int max_order) {
  std::vector<double> e(static_cast<std::size_t>(max_order) + 1, 0.0);
  e[0] = 1.0;
  int m = 0;
  for (double xi : x) {
    ++m;
    for (int j = std::min(m, max_order); j >= 1; --j) e[j] += xi * e[j - 1];
  }
  return e;
}

double elementary_symmetric_without(std::span<const double> x, int k, int skip_a, int skip_b) {
  if (k < 0) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  int m = 0;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (i == skip_a || i == skip_b) continue;
    ++m;
    for (int j = std::min(m, k); j >= 1; --j) e[j] += x[i] * e[j - 1];
  }
  return e[k];
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace soliton
