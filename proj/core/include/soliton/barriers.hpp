#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace soliton {

enum class BarrierName { v1, v2, v3, w1, w2, w3, w4, w5 };

/// sub: lies below the profile slope; super: lies above it; lower_bound: below, only near the singularity.
enum class BarrierRole { sub, super, lower_bound };

struct BarrierDomain {
  double lo = 0.0;
  double hi = 0.0;  // may be +inf
  bool hi_open = true;

  [[nodiscard]] bool contains(double r) const { return r >= lo && (hi_open ? r < hi : r <= hi); }
};

/// Explicit comparison functions for the profile slope u̇.
///
/// v1, v2, v3 belong to S_k^{1/k} (parameters n, k); w1..w5 to the harmonic-pairs speed (parameter n).
class Barrier {
 public:
  static Barrier make(BarrierName name, int n, int k = 0);

  /// Throws DomainError outside the domain, naming the asymptote when there is one.
  double operator()(double r) const;
  [[nodiscard]] bool in_domain(double r) const { return domain_.contains(r); }

  [[nodiscard]] BarrierName name() const { return name_; }
  [[nodiscard]] BarrierRole role() const { return role_; }
  [[nodiscard]] const BarrierDomain& domain() const { return domain_; }
  /// Linear coefficient a: the barrier is a·r (v1, v2, w1, w2, w4), a·r/√(1−a²r²) (v3, w3)
  /// or a·√r/√(1−a²r) (w5).
  [[nodiscard]] double coefficient() const { return a_; }
  [[nodiscard]] std::optional<double> asymptote() const;
  [[nodiscard]] std::string label() const;
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int k() const { return k_; }

 private:
  Barrier(BarrierName name, BarrierRole role, BarrierDomain domain, double a, int n, int k)
      : name_(name), role_(role), domain_(domain), a_(a), n_(n), k_(k) {}

  BarrierName name_;
  BarrierRole role_;
  BarrierDomain domain_;
  double a_;
  int n_;
  int k_;
};

std::string to_string(BarrierName name);
std::string to_string(BarrierRole role);
/// Accepts "v1".."v3", "w1".."w5"; throws ParameterError otherwise.
BarrierName parse_barrier(std::string_view text);

/// The barriers that apply to S_k^{1/k} in dimension n (v2 is omitted when k = n).
std::vector<Barrier> sigma_barriers(int n, int k);
/// w1..w5 for the harmonic-pairs speed.
std::vector<Barrier> harmonic_barriers(int n);

/// Predicted singular radius 8/(n²+n+2) of the harmonic profile.
double harmonic_blowup_prediction(int n);
/// Right end 12/(n²+5n+2) of the w2 domain.
double harmonic_w2_radius(int n);

/// Leading numerator L(x, y) = −y² − n q x² + 2 q x y, q = (n²−3n+2)/4.
double leading_numerator(int n, double x, double y);
/// −w4(r)² − n q r² + 2 q r w2(r), identically zero.
double w4_w2_identity(int n, double r);

}  // namespace soliton
