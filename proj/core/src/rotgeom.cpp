#include "soliton/rotgeom.hpp"

#include <cmath>
#include <vector>

#include "soliton/errors.hpp"

namespace soliton {

CurvatureVector graph_curvatures(const RadialJet& jet, int n) {
  if (n < 2) throw ParameterError("graph_curvatures: n must be >= 2");
  if (!(jet.r > 0.0)) throw DomainError("graph_curvatures: r must be > 0 (axis handled by the startup expansion)");
  const double w2 = 1.0 + jet.du * jet.du;
  const double w = std::sqrt(w2);
  std::vector<double> lambda(static_cast<std::size_t>(n), jet.du / (jet.r * w));
  lambda[0] = jet.ddu / (w2 * w);
  return CurvatureVector(std::move(lambda));
}

CurvatureVector cylinder_curvatures(const CylJet& jet) {
  if (!(jet.r > 0.0)) throw DomainError("cylinder_curvatures: r must be > 0");
  const double w2 = 1.0 + jet.dr * jet.dr;
  const double w = std::sqrt(w2);
  return CurvatureVector{jet.ddr / (w2 * w), -1.0 / (jet.r * w)};
}

double tilt(double du) { return 1.0 / std::hypot(1.0, du); }

double soliton_residual(const SpeedSpec& spec, const CurvatureVector& lambda, double normal_component) {
  return eval_speed(spec, lambda) - normal_component;
}

}  // namespace soliton
