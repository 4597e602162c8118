#include "soliton/speeds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "soliton/cones.hpp"
#include "soliton/errors.hpp"
#include "soliton/sampling.hpp"
#include "soliton/symmetric.hpp"

namespace soliton {

// ---------------------------------------------------------------------------
// SpeedSpec

SpeedSpec SpeedSpec::sigma_k(int n, int k) {
  if (n < 1) throw ParameterError("sigma-k: n must be >= 1");
  if (k < 1 || k > n) throw ParameterError("sigma-k: need 1 <= k <= n");
  return SpeedSpec(n, SigmaKRoot{k});
}

SpeedSpec SpeedSpec::harmonic(int n) {
  if (n < 2) throw ParameterError("harmonic: n must be >= 2");
  return SpeedSpec(n, HarmonicPairs{});
}

SpeedSpec SpeedSpec::quotient(int n, int k, int l) {
  if (!(0 < l && l < k && k <= n)) throw ParameterError("quotient: need 0 < l < k <= n");
  return SpeedSpec(n, Quotient{k, l});
}

SpeedSpec SpeedSpec::product(std::vector<SpeedSpec> factors, std::vector<double> weights) {
  if (factors.empty()) throw ParameterError("product: at least one factor required");
  if (factors.size() != weights.size()) throw ParameterError("product: one weight per factor");
  const int n = factors.front().n();
  double total = 0.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].n() != n) throw ParameterError("product: factors must share n");
    if (!(weights[i] > 0.0)) throw ParameterError("product: weights must be positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw ParameterError("product: weights must sum to 1");
  return SpeedSpec(n, WeightedProduct{std::move(factors), std::move(weights)});
}

std::string SpeedSpec::name() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& kind) {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, SigmaKRoot>) {
          os << "sigma-k(" << kind.k << ")";
        } else if constexpr (std::is_same_v<T, HarmonicPairs>) {
          os << "harmonic";
        } else if constexpr (std::is_same_v<T, Quotient>) {
          os << "quotient(" << kind.k << "," << kind.l << ")";
        } else {
          os << "product(";
          for (std::size_t i = 0; i < kind.factors.size(); ++i) {
            if (i != 0) os << ",";
            os << kind.factors[i].name() << "^" << kind.weights[i];
          }
          os << ")";
        }
      },
      kind_);
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation on sorted input, no domain checks.

namespace {

struct Jet {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

double sigma(std::span<const double> x, int k) { return elementary_symmetric(x, k)[k]; }

// S_k with its exact first and second partial derivatives.
Jet sigma_jet(std::span<const double> x, int k) {
  const int n = static_cast<int>(x.size());
  Jet j{sigma(x, k), Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, n)};
  for (int a = 0; a < n; ++a) {
    j.grad(a) = elementary_symmetric_without(x, k - 1, a);
    for (int b = a + 1; b < n; ++b) {
      j.hess(a, b) = elementary_symmetric_without(x, k - 2, a, b);
      j.hess(b, a) = j.hess(a, b);
    }
  }
  return j;
}

double harmonic_sum(std::span<const double> x) {
  double p = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) p += 1.0 / (x[i] + x[j]);
  return p;
}

double value_unchecked(const SpeedSpec& spec, std::span<const double> x) {
  return std::visit(
      [&](const auto& kind) -> double {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, SigmaKRoot>) {
          const double s = sigma(x, kind.k);
          return kind.k == 1 ? s : std::pow(s, 1.0 / kind.k);
        } else if constexpr (std::is_same_v<T, HarmonicPairs>) {
          return 1.0 / harmonic_sum(x);
        } else if constexpr (std::is_same_v<T, Quotient>) {
          const auto e = elementary_symmetric(x, kind.k);
          return std::pow(e[kind.k] / e[kind.l], 1.0 / (kind.k - kind.l));
        } else {
          double log_value = 0.0;
          for (std::size_t i = 0; i < kind.factors.size(); ++i)
            log_value += kind.weights[i] * std::log(value_unchecked(kind.factors[i], x));
          return std::exp(log_value);
        }
      },
      spec.kind());
}

// Derivatives of φ = log γ for speeds written multiplicatively.
struct LogJet {
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

LogJet log_jet_of(const Jet& f) {
  LogJet l;
  l.grad = f.grad / f.value;
  l.hess = f.hess / f.value - l.grad * l.grad.transpose();
  return l;
}

Jet exp_jet(double value, const LogJet& phi) {
  Jet j;
  j.value = value;
  j.grad = value * phi.grad;
  j.hess = value * (phi.hess + phi.grad * phi.grad.transpose());
  return j;
}

Jet jet_unchecked(const SpeedSpec& spec, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const double value = value_unchecked(spec, x);
  return std::visit(
      [&](const auto& kind) -> Jet {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, SigmaKRoot>) {
          const Jet s = sigma_jet(x, kind.k);
          const double inv_k = 1.0 / kind.k;
          Jet j;
          j.value = value;
          j.grad = (value * inv_k / s.value) * s.grad;
          j.hess = (value * inv_k / s.value) * s.hess +
                   (value * inv_k * (inv_k - 1.0) / (s.value * s.value)) * (s.grad * s.grad.transpose());
          return j;
        } else if constexpr (std::is_same_v<T, HarmonicPairs>) {
          const double p = harmonic_sum(x);
          Eigen::VectorXd dp = Eigen::VectorXd::Zero(n);
          Eigen::MatrixXd ddp = Eigen::MatrixXd::Zero(n, n);
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
              if (a == b) continue;
              const double inv = 1.0 / (x[a] + x[b]);
              dp(a) -= inv * inv;
              ddp(a, a) += 2.0 * inv * inv * inv;
              ddp(a, b) = 2.0 * inv * inv * inv;
            }
          }
          Jet j;
          j.value = value;
          j.grad = -dp / (p * p);
          j.hess = -ddp / (p * p) + (2.0 / (p * p * p)) * (dp * dp.transpose());
          return j;
        } else if constexpr (std::is_same_v<T, Quotient>) {
          const LogJet num = log_jet_of(sigma_jet(x, kind.k));
          const LogJet den = log_jet_of(sigma_jet(x, kind.l));
          const double inv = 1.0 / (kind.k - kind.l);
          return exp_jet(value, LogJet{inv * (num.grad - den.grad), inv * (num.hess - den.hess)});
        } else {
          LogJet phi{Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
          for (std::size_t i = 0; i < kind.factors.size(); ++i) {
            const LogJet f = log_jet_of(jet_unchecked(kind.factors[i], x));
            phi.grad += kind.weights[i] * f.grad;
            phi.hess += kind.weights[i] * f.hess;
          }
          return exp_jet(value, phi);
        }
      },
      spec.kind());
}

void require_in_domain(const SpeedSpec& spec, const CurvatureVector& lambda) {
  if (lambda.n() != spec.n())
    throw ParameterError("curvature vector has length " + std::to_string(lambda.n()) +
                         ", speed expects n = " + std::to_string(spec.n()));
  const Membership m = speed_domain_contains(spec, lambda);
  if (!m) throw DomainError("lambda outside the cone of " + spec.name() + ": " + m.violated);
}

std::vector<int> sorting_permutation(const CurvatureVector& lambda) {
  std::vector<int> perm(lambda.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return lambda[a] < lambda[b]; });
  return perm;
}

}  // namespace

// ---------------------------------------------------------------------------

double eval_sigma_k(const CurvatureVector& lambda, int k) {
  if (k < 1 || k > lambda.n())
    throw ParameterError("sigma_k: k = " + std::to_string(k) + " outside [1, " +
                         std::to_string(lambda.n()) + "]");
  return sigma(lambda.values(), k);
}

double eval_speed(const SpeedSpec& spec, const CurvatureVector& lambda) {
  require_in_domain(spec, lambda);
  std::vector<double> sorted = lambda.vector();
  std::sort(sorted.begin(), sorted.end());
  return value_unchecked(spec, sorted);
}

SpeedDerivatives eval_derivatives(const SpeedSpec& spec, const CurvatureVector& lambda) {
  require_in_domain(spec, lambda);
  const auto perm = sorting_permutation(lambda);
  const int n = lambda.n();
  std::vector<double> sorted(lambda.size());
  for (int i = 0; i < n; ++i) sorted[i] = lambda[perm[i]];

  const Jet j = jet_unchecked(spec, sorted);
  SpeedDerivatives d{j.value, Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (int a = 0; a < n; ++a) {
    d.gradient(perm[a]) = j.grad(a);
    for (int b = 0; b < n; ++b) d.hessian(perm[a], perm[b]) = j.hess(a, b);
  }
  return d;
}

double hessian_quadratic_form(const SpeedSpec& spec, const CurvatureVector& lambda,
                              const Eigen::MatrixXd& T) {
  const int n = lambda.n();
  if (T.rows() != n || T.cols() != n) throw ParameterError("T must be n x n");
  double scale = 0.0;
  for (double x : lambda.values()) scale = std::max(scale, std::abs(x));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(lambda[a] - lambda[b]) < 1e-10 * scale)
        throw DegenerateEigenvalueError("principal curvatures " + std::to_string(a) + " and " +
                                        std::to_string(b) + " coincide; perturb lambda");

  const SpeedDerivatives d = eval_derivatives(spec, lambda);
  double q = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) q += d.hessian(a, b) * T(a, a) * T(b, b);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      q += 2.0 * (d.gradient(b) - d.gradient(a)) / (lambda[b] - lambda[a]) * T(a, b) * T(a, b);
  return q;
}

// ---------------------------------------------------------------------------
// Property suite

std::string to_string(Property p) {
  switch (p) {
    case Property::symmetry: return "symmetry";
    case Property::positivity: return "positivity";
    case Property::monotonicity: return "monotonicity";
    case Property::homogeneity: return "homogeneity";
    case Property::euler_relation: return "euler_relation";
    case Property::gradient_oracle: return "gradient_oracle";
    case Property::off_radial_concavity: return "off_radial_concavity";
    case Property::radial_flatness: return "radial_flatness";
    case Property::boundary_vanishing: return "boundary_vanishing";
  }
  return "unknown";
}

const PropertyOutcome& PropertyReport::outcome(Property p) const {
  for (const auto& o : outcomes)
    if (o.property == p) return o;
  throw ParameterError("property not in report: " + to_string(p));
}

int PropertyReport::total_failures() const {
  int total = 0;
  for (const auto& o : outcomes) total += o.failures;
  return total;
}

namespace {

bool inside(const SpeedSpec& spec, const CurvatureVector& x) {
  return static_cast<bool>(speed_domain_contains(spec, x));
}

CurvatureVector shifted(const CurvatureVector& x, int i, double h) {
  std::vector<double> v = x.vector();
  v[static_cast<std::size_t>(i)] += h;
  return CurvatureVector(std::move(v));
}

// Five-point central differences with base step h; halves h while a stencil point leaves Γ.
Eigen::VectorXd fd_gradient(const SpeedSpec& spec, const CurvatureVector& x, double h) {
  Eigen::VectorXd g(x.n());
  for (int i = 0; i < x.n(); ++i) {
    double step = h;
    while (!inside(spec, shifted(x, i, -2 * step)) || !inside(spec, shifted(x, i, 2 * step))) step *= 0.5;
    const double fm2 = eval_speed(spec, shifted(x, i, -2 * step));
    const double fm1 = eval_speed(spec, shifted(x, i, -step));
    const double fp1 = eval_speed(spec, shifted(x, i, step));
    const double fp2 = eval_speed(spec, shifted(x, i, 2 * step));
    g(i) = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * step);
  }
  return g;
}

// Values of γ along the segment from x towards ∂Γ in direction −e_min, approaching the exit
// point geometrically. Returns the sequence, or empty if no exit was found.
std::vector<double> boundary_path_values(const SpeedSpec& spec, const CurvatureVector& x) {
  int imin = 0;
  for (int i = 1; i < x.n(); ++i)
    if (x[i] < x[imin]) imin = i;
  double t_in = 0.0;
  double t_out = 1.0;
  int guard = 0;
  while (inside(spec, shifted(x, imin, -t_out))) {
    t_in = t_out;
    t_out *= 2.0;
    if (++guard > 60) return {};
  }
  for (int it = 0; it < 200 && t_out - t_in > 1e-16 * t_out; ++it) {
    const double mid = 0.5 * (t_in + t_out);
    if (inside(spec, shifted(x, imin, -mid))) t_in = mid; else t_out = mid;
  }
  std::vector<double> values{eval_speed(spec, x)};
  for (int j = 1; j <= 12; ++j) {
    const double t = t_in * (1.0 - std::pow(10.0, -j));
    values.push_back(eval_speed(spec, shifted(x, imin, -t)));
  }
  return values;
}

}  // namespace

PropertyReport check_properties(const SpeedSpec& spec, int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw ParameterError("check_properties: sample_count must be >= 1");

  constexpr double kHomogeneityTol = 1e-12;
  constexpr double kEulerTol = 1e-9;
  constexpr double kGradientTol = 1e-6;
  constexpr double kConcavityTol = 1e-8;
  constexpr double kRadialTol = 1e-10;
  constexpr double kVanishRatio = 1e-3;

  PropertyReport report;
  report.speed = spec.name();
  report.n = spec.n();
  report.samples = sample_count;
  report.seed = seed;
  for (Property p : {Property::symmetry, Property::positivity, Property::monotonicity,
                     Property::homogeneity, Property::euler_relation, Property::gradient_oracle,
                     Property::off_radial_concavity, Property::radial_flatness,
                     Property::boundary_vanishing}) {
    double tol = 0.0;
    switch (p) {
      case Property::homogeneity: tol = kHomogeneityTol; break;
      case Property::euler_relation: tol = kEulerTol; break;
      case Property::gradient_oracle: tol = kGradientTol; break;
      case Property::off_radial_concavity: tol = kConcavityTol; break;
      case Property::radial_flatness: tol = kRadialTol; break;
      case Property::boundary_vanishing: tol = kVanishRatio; break;
      default: break;
    }
    PropertyOutcome o{};
    o.property = p;
    o.tolerance = tol;
    report.outcomes.push_back(o);
  }
  auto record = [&](Property p, bool ok, double measure, const CurvatureVector& x) {
    auto& o = report.outcomes[static_cast<std::size_t>(p)];
    o.worst = std::max(o.worst, measure);
    if (ok) {
      ++o.passes;
    } else {
      ++o.failures;
      if (!o.witness) o.witness = x.vector();
    }
  };

  SphereSampler sampler(spec.n(), seed);
  const int n = spec.n();
  for (int s = 0; s < sample_count; ++s) {
    auto drawn = sampler.next_where([&](const CurvatureVector& x) { return inside(spec, x); }, 1'000'000);
    if (!drawn) throw DomainError("check_properties: no interior point found for " + spec.name());
    const CurvatureVector& x = *drawn;
    const double g = eval_speed(spec, x);

    {
      std::vector<double> perm = x.vector();
      std::shuffle(perm.begin(), perm.end(), sampler.engine());
      const double gp = eval_speed(spec, CurvatureVector(perm));
      std::reverse(perm.begin(), perm.end());
      const double gr = eval_speed(spec, CurvatureVector(perm));
      const double diff = std::max(std::abs(gp - g), std::abs(gr - g));
      record(Property::symmetry, diff == 0.0, diff, x);
    }

    record(Property::positivity, g > 0.0, g > 0.0 ? 0.0 : -g, x);

    {
      double worst = 0.0;
      for (double c : {0.5, 2.0, 10.0}) {
        const double gc = eval_speed(spec, x.scaled(c));
        worst = std::max(worst, std::abs(gc - c * g) / (c * g));
      }
      record(Property::homogeneity, worst <= kHomogeneityTol, worst, x);
    }

    const SpeedDerivatives d = eval_derivatives(spec, x);
    record(Property::monotonicity, d.gradient.minCoeff() > 0.0, std::max(0.0, -d.gradient.minCoeff()), x);

    {
      double euler = 0.0;
      for (int a = 0; a < n; ++a) euler += x[a] * d.gradient(a);
      const double rel = std::abs(euler - d.value) / std::abs(d.value);
      record(Property::euler_relation, rel <= kEulerTol, rel, x);
    }

    {
      const Eigen::VectorXd fd = fd_gradient(spec, x, 1e-6 * x.norm());
      const double rel = (fd - d.gradient).cwiseAbs().maxCoeff() / d.gradient.cwiseAbs().maxCoeff();
      record(Property::gradient_oracle, rel <= kGradientTol, rel, x);
    }

    {
      Eigen::VectorXd u(n);
      for (int a = 0; a < n; ++a) u(a) = x[a];
      u.normalize();
      const double scale = std::max(1.0, d.hessian.cwiseAbs().maxCoeff());
      const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - u * u.transpose();
      const Eigen::MatrixXd restricted = proj * d.hessian * proj;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (restricted + restricted.transpose()),
                                                         Eigen::EigenvaluesOnly);
      const double top = eig.eigenvalues().maxCoeff() / scale;
      record(Property::off_radial_concavity, top <= kConcavityTol, std::max(0.0, top), x);

      const double radial = std::abs(u.dot(d.hessian * u)) / scale;
      record(Property::radial_flatness, radial <= kRadialTol, radial, x);
    }

    {
      const std::vector<double> path = boundary_path_values(spec, x);
      bool ok = !path.empty();
      double ratio = 1.0;
      if (ok) {
        for (std::size_t i = 1; i < path.size(); ++i)
          if (path[i] > path[i - 1] + 1e-12 * path.front()) ok = false;
        ratio = path.back() / path.front();
        ok = ok && ratio < kVanishRatio;
      }
      record(Property::boundary_vanishing, ok, ratio, x);
    }
  }
  return report;
}

}  // namespace soliton
