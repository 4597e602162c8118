#include "soliton/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "soliton/errors.hpp"
#include "soliton/ode.hpp"
#include "soliton/symmetric.hpp"

namespace soliton {

namespace {

void require_positive_rv(const char* who, double r, double v) {
  if (!(r > 0.0)) throw DomainError(std::string(who) + ": r must be > 0");
  if (!(v > 0.0)) throw DomainError(std::string(who) + ": v must be > 0");
}

void require_sigma_kn(const char* who, int k, int n) {
  if (!(k >= 2 && k <= n)) throw ParameterError(std::string(who) + ": need 2 <= k <= n");
}

double harmonic_rhs(int n, double r, double w, double numerator_slope) {
  if (!(r > 0.0)) throw DomainError("G_n: r must be > 0");
  const double x = w / r;
  const double den = x - harmonic_pole_slope(n);
  if (!(den > 0.0)) {
    std::ostringstream os;
    os << "G_n: denominator w/r - (n^2-3n+2)/4 = " << den << " <= 0 at r = " << r;
    throw DomainError(os.str());
  }
  return x * (1.0 + w * w) * (numerator_slope - x) / den;
}

// Adaptive Simpson on [a,b] with absolute tolerance eps.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double eps = rel_tol * std::max(1.0, std::abs(whole));
  return simpson(f, a, b, fa, fm, fb, whole, eps, 48);
}

double cyl_integrand(double a, double s) { return std::sqrt(std::max(0.0, std::expm1(s * s - 2.0 * a))); }

double waist(double a) { return std::sqrt(std::max(2.0 * a, 0.0)); }

void require_anchor(double a) {
  if (!(2.0 * a < 1.0)) throw ParameterError("cylindrical profile anchored at r(0)=1 needs 2a < 1");
}

}  // namespace

double harmonic_pole_slope(int n) { return (n * n - 3.0 * n + 2.0) / 4.0; }

double rhs_F(int k, int n, double r, double v) {
  require_sigma_kn("F_{k,n}", k, n);
  require_positive_rv("F_{k,n}", r, v);
  const double bracket = std::pow(r / v, k) / binomial(n - 1, k - 1) - static_cast<double>(n - k) / k;
  return (v / r) * (1.0 + v * v) * bracket;
}

double rhs_F_expanded(int k, int n, double x, double y) {
  require_sigma_kn("F_{k,n}", k, n);
  require_positive_rv("F_{k,n}", x, y);
  return (1.0 + y * y) / k * (k / binomial(n - 1, k - 1) * std::pow(x / y, k - 1) - (n - k) * (y / x));
}

double rhs_G(int n, double r, double w) { return harmonic_rhs(n, r, w, static_cast<double>(n)); }

double rhs_G_expanded(int n, double x, double y) {
  if (!(x > 0.0)) throw DomainError("G_n: x must be > 0");
  const double den = y - 0.5 * x * binomial(n - 1, 2);
  if (!(den > 0.0)) throw DomainError("G_n: denominator y - (x/2)C(n-1,2) <= 0");
  return (y / x) * (1.0 + y * y) * (n * x - y) / den;
}

double rhs_G_geometric(int n, double r, double w) {
  return harmonic_rhs(n, r, w, (n * n + n - 2.0) / 4.0);
}

double rhs_G_dw(int n, double r, double w) {
  if (!(r > 0.0)) throw DomainError("dG/dw: r must be > 0");
  const double q = harmonic_pole_slope(n);
  const double s = w / r;
  if (!(s - q > 0.0)) throw DomainError("dG/dw: denominator <= 0");
  // G = g(s)(1+w²) with g(s) = s(n−s)/(s−q), s = w/r.
  const double g = s * (n - s) / (s - q);
  const double dg = (-s * s + 2.0 * q * s - n * q) / ((s - q) * (s - q));
  return dg * (1.0 + w * w) / r + 2.0 * w * g;
}

double closed_form_v(double a, double r, int sign) {
  if (!(a >= 0.0)) throw ParameterError("closed_form_v: a must be >= 0");
  if (!(r >= 0.0)) throw DomainError("closed_form_v: r must be >= 0");
  if (sign != 1 && sign != -1) throw ParameterError("closed_form_v: sign must be +1 or -1");
  return sign * std::sqrt(std::expm1(r * r + a));
}

double closed_form_cyl(double a, double r) {
  if (!(r * r - 2.0 * a > 0.0) || !(r > 0.0)) {
    std::ostringstream os;
    os << "closed_form_cyl: r^2 = " << r * r << " <= 2a = " << 2.0 * a << " (at or below the waist)";
    throw DomainError(os.str());
  }
  return 1.0 / std::sqrt(std::expm1(r * r - 2.0 * a));
}

double cyl_height(double a, double r) {
  require_anchor(a);
  if (!(r >= waist(a))) throw DomainError("cyl_height: r below the waist");
  const auto f = [a](double s) { return cyl_integrand(a, s); };
  return r >= 1.0 ? integrate_simpson(f, 1.0, r, 1e-13) : -integrate_simpson(f, r, 1.0, 1e-13);
}

double cyl_min_height(double a) { return cyl_height(a, waist(a)); }

double solve_cyl_profile(double a, double z) {
  require_anchor(a);
  if (z == 0.0) return 1.0;
  const double z_min = cyl_min_height(a);
  if (!(z >= z_min)) {
    std::ostringstream os;
    os << "solve_cyl_profile: z = " << z << " below the minimum height " << z_min;
    throw DomainError(os.str());
  }
  if (z == z_min) return waist(a);

  double lo = waist(a);
  double hi = 1.0;
  if (z > 0.0) {
    lo = 1.0;
    hi = 1.5;
    while (cyl_height(a, hi) < z) {
      lo = hi;
      hi *= 1.5;
      if (hi > 1e3) throw DomainError("solve_cyl_profile: z too large");
    }
  }
  // Safeguarded Newton; dz/dr = √(e^{r²−2a} − 1).
  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double residual = cyl_height(a, r) - z;
    if (residual > 0.0) hi = r; else lo = r;
    const double slope = cyl_integrand(a, r);
    double next = slope > 0.0 ? r - residual / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-12 * std::max(1.0, r) || hi - lo <= 1e-15 * hi) return next;
    r = next;
  }
  return r;
}

CylJet cyl_jet(double a, double z) {
  const double r = solve_cyl_profile(a, z);
  const double dr = closed_form_cyl(a, r);
  return CylJet{r, dr, -(1.0 + dr * dr) * r * dr * dr};
}

// ---------------------------------------------------------------------------

std::string to_string(HarmonicEquation e) {
  return e == HarmonicEquation::published ? "published" : "geometric";
}

std::string to_string(ProfileStatus s) {
  switch (s) {
    case ProfileStatus::completed: return "completed";
    case ProfileStatus::blew_up: return "blew_up";
    case ProfileStatus::step_failure: return "step_failure";
  }
  return "unknown";
}

namespace {

void require_integrable(const SpeedSpec& spec) {
  if (spec.is<SigmaKRoot>()) {
    const int k = spec.as<SigmaKRoot>().k;
    if (k < 2) throw ParameterError("profiles: k = 1 (mean curvature) is not supported; need 2 <= k <= n");
    return;
  }
  if (spec.is<HarmonicPairs>()) {
    if (spec.n() < 3 || spec.n() > 6) throw ParameterError("profiles: harmonic speed requires 3 <= n <= 6");
    return;
  }
  throw ParameterError("profiles: only sigma-k and harmonic speeds have profile ODEs");
}

}  // namespace

double startup_slope(const SpeedSpec& spec, HarmonicEquation eq) {
  require_integrable(spec);
  const int n = spec.n();
  if (spec.is<SigmaKRoot>()) {
    const int k = spec.as<SigmaKRoot>().k;
    return std::pow(static_cast<double>(k) / (n * binomial(n - 1, k - 1)), 1.0 / k);
  }
  if (eq == HarmonicEquation::published) return (n * n + n + 2.0) / 8.0;
  return n * (n - 1.0) / 4.0;
}

double profile_rhs(const SpeedSpec& spec, HarmonicEquation eq, double r, double v) {
  if (spec.is<SigmaKRoot>()) return rhs_F(spec.as<SigmaKRoot>().k, spec.n(), r, v);
  if (spec.is<HarmonicPairs>())
    return eq == HarmonicEquation::published ? rhs_G(spec.n(), r, v) : rhs_G_geometric(spec.n(), r, v);
  throw ParameterError("profile_rhs: unsupported speed " + spec.name());
}

ProfileSolution integrate_profile(const SpeedSpec& spec, const ProfileOptions& options) {
  require_integrable(spec);
  const double eps = options.startup_radius;
  if (!(eps > 0.0)) throw ParameterError("integrate_profile: startup radius must be > 0");
  if (!(options.r_max > eps)) throw ParameterError("integrate_profile: r_max must exceed the startup radius");
  if (!std::is_sorted(options.output_radii.begin(), options.output_radii.end()))
    throw ParameterError("integrate_profile: output radii must be ascending");

  const HarmonicEquation eq = options.harmonic_equation;
  ProfileSolution sol(spec);
  sol.startup_slope = startup_slope(spec, eq);
  sol.startup_radius = eps;
  sol.r_max = options.r_max;
  sol.tolerances = options.tolerances;
  sol.harmonic_equation = eq;

  const double c = sol.startup_slope;
  ode::State<2> y0{0.5 * c * eps * eps, c * eps};
  auto rhs = [&](double r, const ode::State<2>& y) -> ode::State<2> {
    return {y[1], profile_rhs(spec, eq, r, y[1])};
  };
  sol.samples.push_back(ProfileSample{eps, y0[0], y0[1], rhs(eps, y0)[1]});

  const bool only_stops = !options.output_radii.empty();
  std::vector<double> stops;
  for (double r : options.output_radii)
    if (r > eps && r <= options.r_max) stops.push_back(r);

  double last_r = eps;
  double last_du = y0[1];
  auto observe = [&](double r, const ode::State<2>& y, const ode::State<2>& dy, bool at_stop) {
    if (!only_stops || at_stop) sol.samples.push_back(ProfileSample{r, y[0], y[1], dy[1]});
    sol.blowup_bracket = r - last_r;
    last_r = r;
    last_du = y[1];
    if (y[1] > options.tolerances.blowup_threshold) {
      sol.status = ProfileStatus::blew_up;
      sol.blowup_radius = r;
      return false;
    }
    return true;
  };

  ode::StepControl control;
  control.rtol = options.tolerances.rtol;
  control.atol = options.tolerances.atol;
  control.initial_step = 0.1 * eps;
  const auto stats = ode::integrate<2>(rhs, eps, y0, options.r_max, control, observe, stops);

  if (stats.reason == ode::StopReason::step_underflow || stats.reason == ode::StopReason::max_steps) {
    std::ostringstream os;
    os << (stats.reason == ode::StopReason::max_steps ? "step budget exhausted" : "step size underflow")
       << " at r = " << stats.t << " (du = " << last_du << ", last step " << stats.last_step << ")";
    // A collapsing step with a large slope is the singularity, not a solver failure.
    if (last_du > std::sqrt(options.tolerances.blowup_threshold)) {
      sol.status = ProfileStatus::blew_up;
      sol.blowup_radius = stats.t;
      sol.blowup_bracket = std::max(stats.last_step, 0.0);
    } else {
      sol.status = ProfileStatus::step_failure;
    }
    sol.diagnostics = os.str();
  }
  return sol;
}

}  // namespace soliton
