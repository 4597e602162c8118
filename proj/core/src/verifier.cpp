#include "soliton/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "soliton/barriers.hpp"
#include "soliton/errors.hpp"
#include "soliton/rotgeom.hpp"
#include "soliton/sampling.hpp"

namespace soliton {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the sample closest to (or furthest into) violation.
struct Worst {
  double value = -kInf;
  std::optional<Witness> witness;

  void offer(double v, const char* coordinate, double at, NamedValues values) {
    if (witness && !(v > value)) return;
    value = v;
    witness = Witness{coordinate, at, std::move(values)};
  }
};

CheckEntry finish(std::string name, double tol, const Worst& worst) {
  CheckEntry e;
  e.name = std::move(name);
  e.tolerance = tol;
  e.worst_violation = std::max(0.0, worst.value);
  e.witness = worst.witness;
  e.status = e.worst_violation <= tol ? CheckStatus::pass : CheckStatus::fail;
  return e;
}

CheckEntry skipped(std::string name, double tol, std::string why) {
  CheckEntry e;
  e.name = std::move(name);
  e.tolerance = tol;
  e.status = CheckStatus::skipped;
  e.note = std::move(why);
  return e;
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.status == CheckStatus::fail; });
}

void VerificationReport::add(std::vector<CheckEntry> entries) {
  for (auto& e : entries) checks.push_back(std::move(e));
}

CheckEntry check_soliton(const ProfileSolution& profile, double tol) {
  if (profile.status == ProfileStatus::step_failure)
    throw ParameterError("check_soliton: profile ended in a step failure");
  Worst worst;
  double max_residual = 0.0;
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const auto& s = profile.samples[i];
    const CurvatureVector lambda = graph_curvatures(profile.jet(i), profile.n());
    if (const Membership m = speed_domain_contains(profile.speed, lambda); !m) {
      worst.offer(kInf, "r", s.r, {{"lambda1", lambda[0]}, {"lambda2", lambda[1]}, {"du", s.du}});
      continue;
    }
    const double g = eval_speed(profile.speed, lambda);
    const double t = tilt(s.du);
    const double res = std::abs(g - t);
    max_residual = std::max(max_residual, res);
    worst.offer(res, "r", s.r, {{"gamma", g}, {"tilt", t}, {"residual", g - t}, {"du", s.du}});
  }
  CheckEntry e = finish("soliton residual", tol, worst);
  e.stats = {{"samples", static_cast<double>(profile.samples.size())}, {"max_residual", max_residual}};
  return e;
}

ConvexityParams fit_convexity_params(const ProfileSolution& profile, double delta) {
  if (!(delta > 0.0)) throw ParameterError("fit_convexity_params: delta must be > 0");
  double sup_ratio = 0.0;
  double inf_pair = kInf;
  bool any = false;
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const CurvatureVector lambda = graph_curvatures(profile.jet(i), profile.n());
    if (!speed_domain_contains(profile.speed, lambda)) continue;
    const double h = lambda.mean_curvature();
    if (!(h > 0.0)) continue;
    any = true;
    sup_ratio = std::max(sup_ratio, (delta + 1.0) * h / eval_speed(profile.speed, lambda));
    inf_pair = std::min(inf_pair, lambda.min_pair_sum() / h);
  }
  if (!any) throw DomainError("fit_convexity_params: no sample inside the speed's cone");
  return ConvexityParams{1.05 * sup_ratio, delta, 0.9 * inf_pair};
}

double convexity_slack(const SpeedSpec& speed, const CurvatureVector& lambda, double alpha) {
  return lambda.smallest() - (lambda.mean_curvature() - alpha * eval_speed(speed, lambda));
}

CheckEntry check_convexity_estimate(const ProfileSolution& profile, const ConvexityParams& p) {
  if (!(p.alpha > 0.0) || !(p.delta > 0.0) || !(p.beta > 0.0))
    throw ParameterError("check_convexity_estimate: alpha, delta, beta must be > 0");
  constexpr double tol = 1e-10;
  Worst worst;
  int admissible = 0;
  double min_slack = kInf;
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const CurvatureVector lambda = graph_curvatures(profile.jet(i), profile.n());
    if (!speed_domain_contains(profile.speed, lambda)) continue;
    const double h = lambda.mean_curvature();
    const double g = eval_speed(profile.speed, lambda);
    if (!((p.delta + 1.0) * h <= p.alpha * g)) continue;
    if (!(lambda.min_pair_sum() >= p.beta * h)) continue;
    ++admissible;
    const double slack = lambda.smallest() - (h - p.alpha * g);
    min_slack = std::min(min_slack, slack);
    worst.offer(-slack, "r", profile.samples[i].r,
                {{"lambda_min", lambda.smallest()}, {"H", h}, {"gamma", g}, {"slack", slack}});
  }
  const NamedValues params = {{"alpha", p.alpha}, {"delta", p.delta}, {"beta", p.beta}};
  if (admissible == 0) {
    CheckEntry e = skipped("convexity estimate", tol, "no sample satisfies both hypotheses");
    e.stats = params;
    e.stats.emplace_back("admissible_fraction", 0.0);
    return e;
  }
  CheckEntry e = finish("convexity estimate", tol, worst);
  e.worst_violation = std::max(0.0, -min_slack);
  e.stats = params;
  e.stats.emplace_back("admissible", admissible);
  e.stats.emplace_back("admissible_fraction", static_cast<double>(admissible) / profile.samples.size());
  e.stats.emplace_back("min_slack", min_slack);
  return e;
}

namespace {

// lower: barrier <= du; otherwise du <= barrier. Restricted to [r_lo, r_hi) ∩ domain.
CheckEntry barrier_order(const ProfileSolution& profile, const Barrier& b, bool lower, double r_lo = 0.0,
                         double r_hi = kInf) {
  constexpr double tol = 1e-9;
  const std::string name = lower ? "barrier " + to_string(b.name()) + " <= du"
                                 : "barrier du <= " + to_string(b.name());
  Worst worst;
  int checked = 0;
  for (const auto& s : profile.samples) {
    if (s.r < r_lo || s.r >= r_hi || !b.in_domain(s.r)) continue;
    const double v = b(s.r);
    const double gap = lower ? v - s.du : s.du - v;
    ++checked;
    worst.offer(gap / std::max(std::abs(v), std::numeric_limits<double>::min()), "r", s.r,
                {{"du", s.du}, {to_string(b.name()), v}});
  }
  if (checked == 0) return skipped(name, tol, "no samples in the barrier's window");
  CheckEntry e = finish(name, tol, worst);
  e.stats = {{"samples", static_cast<double>(checked)}};
  if (r_lo > 0.0) e.stats.emplace_back("window_lo", r_lo);
  if (r_hi < kInf) e.stats.emplace_back("window_hi", r_hi);
  return e;
}

}  // namespace

std::vector<CheckEntry> check_barriers(const ProfileSolution& profile) {
  const int n = profile.n();
  std::vector<CheckEntry> out;
  if (profile.speed.is<SigmaKRoot>()) {
    const int k = profile.speed.as<SigmaKRoot>().k;
    out.push_back(barrier_order(profile, Barrier::make(BarrierName::v1, n, k), true));
    if (k < n) {
      out.push_back(barrier_order(profile, Barrier::make(BarrierName::v2, n, k), false));
    } else {
      out.push_back(skipped("barrier du <= v2", 1e-9, "not applicable: v2 is a super-solution only for k <= n-1"));
    }
    out.push_back(barrier_order(profile, Barrier::make(BarrierName::v3, n, k), false));
    return out;
  }
  if (!profile.speed.is<HarmonicPairs>()) throw ParameterError("check_barriers: no barrier family for this speed");
  out.push_back(barrier_order(profile, Barrier::make(BarrierName::w1, n), true));
  out.push_back(barrier_order(profile, Barrier::make(BarrierName::w4, n), true));
  out.push_back(barrier_order(profile, Barrier::make(BarrierName::w2, n), false));
  out.push_back(barrier_order(profile, Barrier::make(BarrierName::w3, n), false));
  const double r_ref = profile.blowup_radius.value_or(harmonic_blowup_prediction(n));
  out.push_back(barrier_order(profile, Barrier::make(BarrierName::w5, n), true, 0.9 * r_ref, r_ref));
  return out;
}

std::vector<CheckEntry> check_sigma2_cylinder(std::span<const double> z_samples, double a, double tol) {
  const SpeedSpec speed = SpeedSpec::sigma_k(2, 2);
  Worst h_worst;
  Worst k_worst;
  Worst res_worst;
  int used = 0;
  int skipped_samples = 0;
  for (double z : z_samples) {
    CylJet jet;
    try {
      jet = cyl_jet(a, z);
    } catch (const DomainError&) {
      ++skipped_samples;
      continue;
    }
    ++used;
    const CurvatureVector lambda = cylinder_curvatures(jet);
    const double h = lambda[0] + lambda[1];
    const double k = lambda[0] * lambda[1];
    const double normal = jet.dr / std::hypot(1.0, jet.dr);
    const NamedValues values = {{"r", jet.r}, {"lambda1", lambda[0]}, {"lambda2", lambda[1]}, {"H", h}, {"K", k}};
    h_worst.offer(h, "z", z, values);
    k_worst.offer(-k, "z", z, values);
    // λ lies in −Γ_2; the speed is evaluated for the opposite orientation.
    if (speed_domain_contains(speed, lambda.scaled(-1.0))) {
      const double res = std::abs(eval_speed(speed, lambda.scaled(-1.0)) - std::abs(normal));
      res_worst.offer(res, "z", z, values);
    } else {
      res_worst.offer(kInf, "z", z, values);
    }
  }
  const NamedValues stats = {{"samples", static_cast<double>(used)}, {"skipped", static_cast<double>(skipped_samples)}};
  if (used == 0) {
    std::vector<CheckEntry> out{skipped("cylinder H < 0", 0.0, "no solvable heights"),
                                skipped("cylinder K > 0", 0.0, "no solvable heights"),
                                skipped("cylinder residual", tol, "no solvable heights")};
    for (auto& e : out) e.stats = stats;
    return out;
  }
  std::vector<CheckEntry> out{finish("cylinder H < 0", 0.0, h_worst), finish("cylinder K > 0", 0.0, k_worst),
                              finish("cylinder residual", tol, res_worst)};
  for (auto& e : out) e.stats = stats;
  return out;
}

PinchingEstimate estimate_pinching_constants(const SpeedSpec& spec, const ConeSpec& cone, int samples,
                                             std::uint64_t seed) {
  if (samples < 1) throw ParameterError("estimate_pinching_constants: samples must be >= 1");
  if (spec.n() != cone.n()) throw ParameterError("estimate_pinching_constants: dimension mismatch");
  SphereSampler sampler(spec.n(), seed);
  PinchingEstimate est;
  est.hessian_sup = -kInf;
  const long long max_draws = 2000LL * samples;
  long long drawn = 0;
  while (est.accepted < samples && drawn < max_draws) {
    const CurvatureVector x = sampler.next();
    ++drawn;
    if (!contains(cone, x) || !speed_domain_contains(spec, x)) {
      ++est.skipped;
      continue;
    }
    const Eigen::MatrixXd T = sampler.symmetric_matrix();
    double q = 0.0;
    try {
      q = hessian_quadratic_form(spec, x, T);
    } catch (const DegenerateEigenvalueError&) {
      ++est.skipped;
      continue;
    }
    const SpeedDerivatives d = eval_derivatives(spec, x);
    est.gradient_pinching = std::max(est.gradient_pinching, d.gradient.maxCoeff() / d.gradient.minCoeff());
    est.hessian_sup = std::max(est.hessian_sup, q * x.mean_curvature() / T.squaredNorm());
    ++est.accepted;
  }
  if (est.accepted == 0) {
    std::ostringstream os;
    os << "estimate_pinching_constants: no sample inside the cone after " << drawn << " draws";
    throw EmptyConeError(os.str());
  }
  return est;
}

}  // namespace soliton
