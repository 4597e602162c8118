#pragma once

#include <span>
#include <vector>

namespace soliton {

/// Elementary symmetric polynomials e_0..e_max_order of the entries, unnormalised,
/// by the recurrence e_j(x_1..x_m) = e_j(x_1..x_{m-1}) + x_m e_{j-1}(x_1..x_{m-1}).
/// Orders above the length of x are zero.
std::vector<double> elementary_symmetric(std::span<const double> x, int max_order);

/// e_k of x with the entries listed in `skip` removed (at most two indices).
double elementary_symmetric_without(std::span<const double> x, int k, int skip_a, int skip_b = -1);

/// Binomial coefficient as a double; zero outside 0 <= k <= n.
double binomial(int n, int k);

}  // namespace soliton
