#include "soliton/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "soliton/errors.hpp"
#include "soliton/sampling.hpp"
#include "soliton/symmetric.hpp"

namespace soliton {

ConeSpec ConeSpec::gamma_k(int n, int k) {
  if (k < 1 || k > n) throw ParameterError("GammaK: need 1 <= k <= n");
  return ConeSpec(n, GammaK{k});
}

ConeSpec ConeSpec::two_convex(int n) {
  if (n < 2) throw ParameterError("TwoConvex: n must be >= 2");
  return ConeSpec(n, TwoConvex{});
}

ConeSpec ConeSpec::gamma_alpha_delta(double alpha, double delta, SpeedSpec speed) {
  if (!(alpha > 0.0) || !(delta > 0.0)) throw ParameterError("GammaAlphaDelta: alpha, delta must be > 0");
  const int n = speed.n();
  return ConeSpec(n, GammaAlphaDelta{alpha, delta, std::move(speed)});
}

ConeSpec ConeSpec::uniform_two_convex(int n, double beta) {
  if (n < 2) throw ParameterError("UniformTwoConvex: n must be >= 2");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("UniformTwoConvex: beta must lie in (0,1)");
  return ConeSpec(n, UniformTwoConvex{beta});
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Membership in_gamma_k(const CurvatureVector& lambda, int k) {
  const auto e = elementary_symmetric(lambda.values(), k);
  for (int l = 1; l <= k; ++l)
    if (!(e[l] > 0.0)) return Membership::no("S_" + std::to_string(l) + " = " + fmt(e[l]) + " <= 0");
  return Membership::yes();
}

Membership in_two_convex(const CurvatureVector& lambda) {
  const double m = lambda.min_pair_sum();
  if (!(m > 0.0)) return Membership::no("min pair sum lambda_i + lambda_j = " + fmt(m) + " <= 0");
  return Membership::yes();
}

}  // namespace

Membership speed_domain_contains(const SpeedSpec& spec, const CurvatureVector& lambda) {
  if (lambda.n() != spec.n()) throw ParameterError("dimension mismatch between speed and lambda");
  return std::visit(
      [&](const auto& kind) -> Membership {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, SigmaKRoot>) {
          return in_gamma_k(lambda, kind.k);
        } else if constexpr (std::is_same_v<T, HarmonicPairs>) {
          return in_two_convex(lambda);
        } else if constexpr (std::is_same_v<T, Quotient>) {
          return in_gamma_k(lambda, kind.k);
        } else {
          for (const auto& f : kind.factors) {
            Membership m = speed_domain_contains(f, lambda);
            if (!m) return m;
          }
          return Membership::yes();
        }
      },
      spec.kind());
}

Membership contains(const ConeSpec& cone, const CurvatureVector& lambda) {
  if (lambda.n() != cone.n())
    throw ParameterError("cone has n = " + std::to_string(cone.n()) + ", lambda has length " +
                         std::to_string(lambda.n()));
  return std::visit(
      [&](const auto& kind) -> Membership {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, GammaK>) {
          return in_gamma_k(lambda, kind.k);
        } else if constexpr (std::is_same_v<T, TwoConvex>) {
          return in_two_convex(lambda);
        } else if constexpr (std::is_same_v<T, GammaAlphaDelta>) {
          Membership m = speed_domain_contains(kind.speed, lambda);
          if (!m) return m;
          const double h = lambda.mean_curvature();
          const double g = eval_speed(kind.speed, lambda);
          if (!((kind.delta + 1.0) * h <= kind.alpha * g))
            return Membership::no("(delta+1)H = " + fmt((kind.delta + 1.0) * h) + " > alpha*gamma = " +
                                  fmt(kind.alpha * g));
          return Membership::yes();
        } else {
          const double h = lambda.mean_curvature();
          if (!(h > 0.0)) return Membership::no("H = " + fmt(h) + " <= 0");
          const double m = lambda.min_pair_sum();
          if (!(m >= kind.beta * h))
            return Membership::no("min pair sum " + fmt(m) + " < beta*H = " + fmt(kind.beta * h));
          return Membership::yes();
        }
      },
      cone.kind());
}

CurvatureVector cyl_ray(int n, int j) {
  if (n < 1 || j < 0 || j > n - 1) throw ParameterError("cyl_ray: need 0 <= j <= n-1");
  const double v = 1.0 / std::sqrt(static_cast<double>(n - j));
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n - j; ++i) x[i] = v;
  return CurvatureVector(std::move(x));
}

double distance_to_axis_rays(const CurvatureVector& x) {
  const double norm2 = x.norm() * x.norm();
  double best = std::sqrt(norm2);
  for (double xi : x.values())
    if (xi > 0.0) best = std::min(best, std::sqrt(std::max(0.0, norm2 - xi * xi)));
  return best;
}

namespace {

// Exit distance of the ray x + t·dir from the speed's cone, by doubling then bisection.
double exit_distance(const SpeedSpec& spec, const CurvatureVector& x, const std::vector<double>& dir) {
  auto at = [&](double t) {
    std::vector<double> v = x.vector();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += t * dir[i];
    return CurvatureVector(std::move(v));
  };
  double t_in = 0.0;
  double t_out = 1e-3 * std::max(x.norm(), 1e-300);
  for (int guard = 0; speed_domain_contains(spec, at(t_out)); ++guard) {
    if (guard > 80) return std::numeric_limits<double>::infinity();
    t_in = t_out;
    t_out *= 2.0;
  }
  for (int it = 0; it < 100 && t_out - t_in > 1e-14 * t_out; ++it) {
    const double mid = 0.5 * (t_in + t_out);
    if (speed_domain_contains(spec, at(mid))) t_in = mid; else t_out = mid;
  }
  return t_in;
}

double gamma_k_boundary_distance(const SpeedSpec& spec, const CurvatureVector& x, int k) {
  const int n = x.n();
  if (k == 1) return x.mean_curvature() / std::sqrt(static_cast<double>(n));
  if (k == n) return x.smallest();
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < n; ++i) {
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    d[i] = -1.0;
    dirs.push_back(d);
  }
  dirs.emplace_back(static_cast<std::size_t>(n), -1.0 / std::sqrt(static_cast<double>(n)));
  SphereSampler directions(n, 0x5eedULL);
  for (int i = 0; i < 64; ++i) dirs.push_back(directions.next().vector());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& d : dirs) best = std::min(best, exit_distance(spec, x, d));
  return best;
}

}  // namespace

double distance_to_speed_boundary(const SpeedSpec& spec, const CurvatureVector& x) {
  if (!speed_domain_contains(spec, x)) return 0.0;
  return std::visit(
      [&](const auto& kind) -> double {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, SigmaKRoot>) {
          return gamma_k_boundary_distance(spec, x, kind.k);
        } else if constexpr (std::is_same_v<T, HarmonicPairs>) {
          return x.min_pair_sum() / std::sqrt(2.0);
        } else if constexpr (std::is_same_v<T, Quotient>) {
          return gamma_k_boundary_distance(spec, x, kind.k);
        } else {
          double best = std::numeric_limits<double>::infinity();
          for (const auto& f : kind.factors) best = std::min(best, distance_to_speed_boundary(f, x));
          return best;
        }
      },
      spec.kind());
}

ConeSeparation cone_separation(const ConeSpec& cone, int samples, std::uint64_t seed) {
  if (samples < 1) throw ParameterError("cone_separation: samples must be >= 1");
  const auto* gad = std::get_if<GammaAlphaDelta>(&cone.kind());
  if (gad == nullptr) throw ParameterError("cone_separation: cone must be Gamma_{alpha,delta}");

  SphereSampler sampler(cone.n(), seed);
  ConeSeparation out;
  out.separation = out.to_axis_rays = out.to_boundary = std::numeric_limits<double>::infinity();
  const long long max_draws = 2000LL * samples;
  while (out.accepted < samples && out.drawn < max_draws) {
    const CurvatureVector x = sampler.next();
    ++out.drawn;
    if (!contains(cone, x)) continue;
    ++out.accepted;
    const double axis = distance_to_axis_rays(x);
    const double bdry = distance_to_speed_boundary(gad->speed, x);
    out.to_axis_rays = std::min(out.to_axis_rays, axis);
    out.to_boundary = std::min(out.to_boundary, bdry);
    out.separation = std::min(out.separation, std::min(axis, bdry));
  }
  if (out.accepted == 0) {
    std::ostringstream os;
    os << "Gamma_{alpha,delta} empty on " << out.drawn << " sampled unit vectors (alpha = " << gad->alpha
       << ", delta = " << gad->delta << ", speed " << gad->speed.name() << ")";
    throw EmptyConeError(os.str());
  }
  return out;
}

}  // namespace soliton
