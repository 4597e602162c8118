#pragma once

#include "soliton/curvature.hpp"
#include "soliton/speeds.hpp"

namespace soliton {

/// 2-jet of a rotational graph x_{n+1} = u(|x|) at radius r > 0.
struct RadialJet {
  double r = 1.0;
  double u = 0.0;
  double du = 0.0;
  double ddu = 0.0;
};

/// 2-jet of a profile curve r(z) for a surface of revolution about the e_3 axis.
struct CylJet {
  double r = 1.0;
  double dr = 0.0;
  double ddr = 0.0;
};

/// (λ_1, λ_2, ..., λ_2): radial curvature ü/(1+u̇²)^{3/2} then n−1 copies of the
/// rotational curvature u̇/(r√(1+u̇²)). Throws DomainError for r <= 0, ParameterError for n < 2.
CurvatureVector graph_curvatures(const RadialJet& jet, int n);

/// (r''/(1+r'²)^{3/2}, −1/(r√(1+r'²))) for the surface (r(z)cosθ, r(z)sinθ, z).
CurvatureVector cylinder_curvatures(const CylJet& jet);

/// ⟨ν, e_{n+1}⟩ = 1/√(1+u̇²) for the upward graph normal.
double tilt(double du);

/// γ(λ) − ⟨ν, v⟩; zero on translators. Throws DomainError outside Γ.
double soliton_residual(const SpeedSpec& spec, const CurvatureVector& lambda, double normal_component);

}  // namespace soliton
