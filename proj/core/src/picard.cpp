#include "soliton/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "soliton/barriers.hpp"
#include "soliton/errors.hpp"
#include "soliton/profiles.hpp"

namespace soliton {

namespace {

void require_dimension(int n) {
  if (n < 3 || n > 6) throw ParameterError("picard: n must lie in {3,...,6}");
}

struct Band {
  Barrier lower;
  Barrier upper;
  explicit Band(int n) : lower(Barrier::make(BarrierName::w4, n)), upper(Barrier::make(BarrierName::w3, n)) {}
};

}  // namespace

double picard_radius_R1(int n) { return harmonic_w2_radius(n); }

bool in_barrier_space(int n, const GridFunction& w) {
  require_dimension(n);
  if (w.m() < 2 || w.values[0] != 0.0) return false;
  const Band band(n);
  for (int i = 1; i < w.m(); ++i) {
    const double r = w.node(i);
    if (!band.upper.in_domain(r)) return false;
    if (w.values[i] < band.lower(r) || w.values[i] > band.upper(r)) return false;
  }
  return true;
}

OperatorResult operator_T(int n, const GridFunction& w) {
  require_dimension(n);
  if (w.m() < 2) throw ParameterError("operator_T: need at least two nodes");
  if (w.values[0] != 0.0) throw ParameterError("operator_T: w(0) must be 0");
  const double q = harmonic_pole_slope(n);
  const Band band(n);
  if (!band.upper.in_domain(w.R)) throw ParameterError("operator_T: R beyond the w3 asymptote");

  auto g = [&](double x, double s) {
    if (!(x - q > 0.0)) {
      std::ostringstream os;
      os << "operator_T: w/s = " << x << " <= (n-1)(n-2)/4 = " << q << " at s = " << s;
      throw XViolationError(os.str());
    }
    return x * (n - x) / (x - q);
  };

  const int m = w.m();
  std::vector<double> integrand(static_cast<std::size_t>(m));
  const double slope0 = std::clamp(w.values[1] / w.node(1), band.lower.coefficient(), band.upper.coefficient());
  integrand[0] = g(slope0, 0.0);
  for (int i = 1; i < m; ++i) {
    const double s = w.node(i);
    const double wi = w.values[i];
    integrand[i] = g(wi / s, s) * (1.0 + wi * wi);
  }

  OperatorResult out;
  out.image = GridFunction{w.R, std::vector<double>(static_cast<std::size_t>(m), 0.0)};
  const double h = w.R / (m - 1);
  double acc = 0.0;
  for (int i = 1; i < m; ++i) {
    acc += 0.5 * h * (integrand[i - 1] + integrand[i]);
    const double r = w.node(i);
    const double clamped = std::clamp(acc, band.lower(r), band.upper(r));
    if (clamped != acc) {
      ++out.clamp_events;
      out.max_clamp = std::max(out.max_clamp, std::abs(clamped - acc));
      out.clamped_nodes.push_back(i);
    }
    out.image.values[i] = clamped;
  }
  return out;
}

double PicardResult::max_contraction_ratio() const {
  double worst = 0.0;
  for (const auto& it : iterations)
    if (it.contraction_ratio) worst = std::max(worst, *it.contraction_ratio);
  return worst;
}

double default_relaxation(int n) {
  require_dimension(n);
  const double q = harmonic_pole_slope(n);
  const double slope = (n + 3.0 * q) / (n - q);
  return 2.0 / (2.0 + slope);
}

PicardResult picard_solve(int n, const PicardOptions& options) {
  require_dimension(n);
  const double r1 = picard_radius_R1(n);
  const double R = options.R > 0.0 ? options.R : r1;
  const double r2 = lipschitz_radius(n, 2500).R2;
  if (R > std::min(r1, r2) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "picard_solve: R = " << R << " exceeds min(R1, R2) = " << std::min(r1, r2);
    throw ParameterError(os.str());
  }
  if (options.m < 64) throw ParameterError("picard_solve: m must be >= 64");
  if (!(options.tol > 0.0)) throw ParameterError("picard_solve: tol must be > 0");
  if (options.max_iter < 1) throw ParameterError("picard_solve: max_iter must be >= 1");
  const double theta = options.relaxation.value_or(default_relaxation(n));
  if (!(theta > 0.0 && theta <= 1.0)) throw ParameterError("picard_solve: relaxation must lie in (0, 1]");

  const Band band(n);
  const Barrier w2 = Barrier::make(BarrierName::w2, n);
  GridFunction w = sample_grid(R, options.m, [&](double r) {
    const double lo = band.lower(r);
    const double hi = std::min(band.upper(r), w2(r));
    return 0.5 * (lo + hi);
  });

  PicardResult result;
  result.n = n;
  result.tol = options.tol;
  result.relaxation = theta;

  std::optional<double> previous;
  int non_contracting = 0;
  for (int it = 0; it < options.max_iter; ++it) {
    const OperatorResult t = operator_T(n, w);
    PicardIteration log;
    log.clamp_events = t.clamp_events;
    double scale = 0.0;
    for (int i = 0; i < w.m(); ++i) {
      const double next = (1.0 - theta) * w.values[i] + theta * t.image.values[i];
      log.sup_change = std::max(log.sup_change, std::abs(next - w.values[i]));
      scale = std::max(scale, std::abs(next));
      w.values[i] = next;
    }
    if (previous && *previous > 0.0) log.contraction_ratio = log.sup_change / *previous;
    previous = log.sup_change;
    result.iterations.push_back(log);

    if (log.sup_change < options.tol) {
      result.converged = true;
      break;
    }
    // Changes at the rounding floor carry no information about contraction.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
    if (log.contraction_ratio && *log.contraction_ratio >= 1.0 && log.sup_change > floor) {
      if (++non_contracting >= 3) {
        std::ostringstream os;
        os << "picard_solve: contraction ratio >= 1 for 3 consecutive iterations at R = " << R
           << "; try a smaller R";
        throw ContractionFailure(os.str());
      }
    } else {
      non_contracting = 0;
    }
  }
  result.fixed_point = std::move(w);
  return result;
}

LipschitzEstimate lipschitz_radius(int n, int samples) {
  require_dimension(n);
  if (samples < 4) throw ParameterError("lipschitz_radius: need at least 4 samples");
  const Band band(n);
  const double r1 = picard_radius_R1(n);
  const int per_axis = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples))));

  LipschitzEstimate est;
  est.C = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= per_axis; ++i) {
    const double r = r1 * i / per_axis;
    const double lo = band.lower(r);
    const double hi = band.upper(r);
    for (int j = 0; j < per_axis; ++j) {
      const double w = lo + (hi - lo) * j / (per_axis - 1);
      const double ratio = rhs_G_dw(n, r, w) / r;
      ++est.samples;
      if (!std::isfinite(ratio)) {
        std::ostringstream os;
        os << "lipschitz_radius: unbounded dG/dw at r = " << r << ", w = " << w;
        throw DomainError(os.str());
      }
      if (ratio > est.C) {
        est.C = ratio;
        est.argmax_r = r;
        est.argmax_w = w;
      }
    }
  }
  est.R2 = est.C > 0.0 ? std::sqrt(2.0 * 0.99 / est.C) : std::numeric_limits<double>::infinity();

  const double h = 1e-6 * est.argmax_w;
  const double fd = (rhs_G(n, est.argmax_r, est.argmax_w + h) - rhs_G(n, est.argmax_r, est.argmax_w - h)) / (2.0 * h);
  const double analytic = rhs_G_dw(n, est.argmax_r, est.argmax_w);
  est.fd_relative_error = std::abs(fd - analytic) / std::max(1.0, std::abs(analytic));
  return est;
}

}  // namespace soliton
