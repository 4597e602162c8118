#include "soliton/barriers.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "soliton/errors.hpp"
#include "soliton/profiles.hpp"
#include "soliton/symmetric.hpp"

namespace soliton {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sigma_slope(int n, int k) { return std::pow(static_cast<double>(k) / (n * binomial(n - 1, k - 1)), 1.0 / k); }

}  // namespace

double harmonic_blowup_prediction(int n) { return 8.0 / (n * n + n + 2.0); }
double harmonic_w2_radius(int n) { return 12.0 / (n * n + 5.0 * n + 2.0); }

Barrier Barrier::make(BarrierName name, int n, int k) {
  const bool sigma = name == BarrierName::v1 || name == BarrierName::v2 || name == BarrierName::v3;
  if (sigma) {
    if (n < 2 || k < 1 || k > n) throw ParameterError("sigma barriers need n >= 2 and 1 <= k <= n");
  } else {
    if (n < 3 || n > 6) throw ParameterError("harmonic barriers need 3 <= n <= 6");
    k = 0;
  }
  const double nn = n;
  switch (name) {
    case BarrierName::v1:
      return Barrier(name, BarrierRole::sub, {0.0, kInf, true}, sigma_slope(n, k), n, k);
    case BarrierName::v2:
      if (k == n) throw ParameterError("v2 is not applicable for k = n");
      return Barrier(name, BarrierRole::super, {0.0, kInf, true}, std::pow(binomial(n - 1, k), -1.0 / k), n, k);
    case BarrierName::v3: {
      const double c = sigma_slope(n, k);
      return Barrier(name, BarrierRole::super, {0.0, 1.0 / c, true}, c, n, k);
    }
    case BarrierName::w1:
      return Barrier(name, BarrierRole::sub, {0.0, kInf, true}, (nn * nn + nn + 2.0) / 8.0, n, k);
    case BarrierName::w2:
      return Barrier(name, BarrierRole::super, {0.0, harmonic_w2_radius(n), false},
                     (nn * nn + 5.0 * nn + 2.0) / 12.0, n, k);
    case BarrierName::w3:
      return Barrier(name, BarrierRole::super, {0.0, harmonic_blowup_prediction(n), true},
                     (nn * nn + nn + 2.0) / 8.0, n, k);
    case BarrierName::w4: {
      const double p = nn * nn * nn * nn - 4.0 * nn * nn * nn + 7.0 * nn * nn - 8.0 * nn + 4.0;
      return Barrier(name, BarrierRole::sub, {0.0, kInf, true}, std::sqrt(p) / (2.0 * std::sqrt(6.0)), n, k);
    }
    case BarrierName::w5: {
      const double a = std::sqrt((nn * nn + nn + 2.0) / 8.0);
      return Barrier(name, BarrierRole::lower_bound, {0.0, 1.0 / (a * a), true}, a, n, k);
    }
  }
  throw ParameterError("unknown barrier");
}

std::optional<double> Barrier::asymptote() const {
  if (name_ == BarrierName::v3 || name_ == BarrierName::w3 || name_ == BarrierName::w5) return domain_.hi;
  return std::nullopt;
}

double Barrier::operator()(double r) const {
  if (!in_domain(r)) {
    std::ostringstream os;
    os << label() << ": r = " << r << " outside the domain [" << domain_.lo << ", " << domain_.hi
       << (domain_.hi_open ? ")" : "]");
    if (auto s = asymptote()) os << "; vertical asymptote at r = " << *s;
    throw DomainError(os.str());
  }
  switch (name_) {
    case BarrierName::v3:
    case BarrierName::w3: {
      const double ar = a_ * r;
      return ar / std::sqrt((1.0 - ar) * (1.0 + ar));
    }
    case BarrierName::w5:
      return a_ * std::sqrt(r) / std::sqrt(1.0 - a_ * a_ * r);
    default:
      return a_ * r;
  }
}

std::string Barrier::label() const {
  std::ostringstream os;
  os << to_string(name_) << "(n=" << n_;
  if (k_ > 0) os << ",k=" << k_;
  os << ")";
  return os.str();
}

std::string to_string(BarrierName name) {
  switch (name) {
    case BarrierName::v1: return "v1";
    case BarrierName::v2: return "v2";
    case BarrierName::v3: return "v3";
    case BarrierName::w1: return "w1";
    case BarrierName::w2: return "w2";
    case BarrierName::w3: return "w3";
    case BarrierName::w4: return "w4";
    case BarrierName::w5: return "w5";
  }
  return "?";
}

std::string to_string(BarrierRole role) {
  switch (role) {
    case BarrierRole::sub: return "sub";
    case BarrierRole::super: return "super";
    case BarrierRole::lower_bound: return "lower_bound";
  }
  return "?";
}

BarrierName parse_barrier(std::string_view text) {
  for (auto b : {BarrierName::v1, BarrierName::v2, BarrierName::v3, BarrierName::w1, BarrierName::w2,
                 BarrierName::w3, BarrierName::w4, BarrierName::w5})
    if (to_string(b) == text) return b;
  throw ParameterError("unknown barrier '" + std::string(text) + "'");
}

std::vector<Barrier> sigma_barriers(int n, int k) {
  std::vector<Barrier> out{Barrier::make(BarrierName::v1, n, k)};
  if (k < n) out.push_back(Barrier::make(BarrierName::v2, n, k));
  out.push_back(Barrier::make(BarrierName::v3, n, k));
  return out;
}

std::vector<Barrier> harmonic_barriers(int n) {
  return {Barrier::make(BarrierName::w1, n), Barrier::make(BarrierName::w2, n), Barrier::make(BarrierName::w3, n),
          Barrier::make(BarrierName::w4, n), Barrier::make(BarrierName::w5, n)};
}

double leading_numerator(int n, double x, double y) {
  const double q = harmonic_pole_slope(n);
  return -y * y - n * q * x * x + 2.0 * q * x * y;
}

double w4_w2_identity(int n, double r) {
  const double q = harmonic_pole_slope(n);
  const double w4 = Barrier::make(BarrierName::w4, n)(r);
  const double w2 = Barrier::make(BarrierName::w2, n).coefficient() * r;
  return -w4 * w4 - n * q * r * r + 2.0 * q * r * w2;
}

}  // namespace soliton
