#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "soliton/rotgeom.hpp"
#include "soliton/speeds.hpp"

namespace soliton {

// ---------------------------------------------------------------------------
// Right-hand sides of the profile ODEs for v = u̇.

/// F_{k,n}(r,v) = (v/r)(1+v²)( (r/v)^k / C(n−1,k−1) − (n−k)/k ), the S_k^{1/k} translator ODE.
/// Requires r > 0, v > 0 and 2 <= k <= n.
double rhs_F(int k, int n, double r, double v);

/// The same ODE written as ((1+y²)/k)( k/C(n−1,k−1) (x/y)^{k−1} − (n−k) y/x ).
double rhs_F_expanded(int k, int n, double x, double y);

/// Published harmonic-pairs right-hand side
///   G_n(r,w) = (w/r)(1+w²)(n − w/r)/((w/r) − (n²−3n+2)/4).
/// Throws DomainError when the denominator is <= 0.
double rhs_G(int n, double r, double w);

/// The same expression written as (y/x)(1+y²)(nx − y)/(y − (x/2)C(n−1,2)).
double rhs_G_expanded(int n, double x, double y);

/// Right-hand side obtained by substituting the rotational curvatures into
/// (Σ_{i<j} 1/(λ_i+λ_j))^{-1} = 1/√(1+u̇²):
///   (w/r)(1+w²)((n²+n−2)/4 − w/r)/((w/r) − (n²−3n+2)/4).
/// Profiles of this equation have zero soliton residual; the published G_n does not.
double rhs_G_geometric(int n, double r, double w);

/// ∂G_n/∂w of the published right-hand side, closed form.
double rhs_G_dw(int n, double r, double w);

/// (n−1)(n−2)/4, the slope at which the G_n denominator vanishes.
double harmonic_pole_slope(int n);

// ---------------------------------------------------------------------------
// Closed forms.

/// v_{±,a}(r) = ±√(e^{r²+a} − 1); solves v̇ = F_{2,2}(r, v). Requires a >= 0, r >= 0.
double closed_form_v(double a, double r, int sign);

/// Slope dr/dz = 1/√(e^{r²−2a} − 1) of the cylindrical √S_2 translator.
/// Throws DomainError when r² <= 2a (at or below the waist).
double closed_form_cyl(double a, double r);

/// Height z(r) = ∫_1^r √(e^{s²−2a} − 1) ds, anchored so r(0) = 1. Requires 2a < 1.
double cyl_height(double a, double r);

/// Smallest reachable height (the waist r = √max(2a,0)).
double cyl_min_height(double a);

/// Inverts cyl_height: the radius r(z) with cyl_height(a, r) = z, to 1e-12.
/// Throws DomainError for z below cyl_min_height(a).
double solve_cyl_profile(double a, double z);

/// r, r', r'' of the cylindrical profile at height z (r'' = −(1+r'²) r r'²).
CylJet cyl_jet(double a, double z);

// ---------------------------------------------------------------------------
// Profile integration.

enum class HarmonicEquation { published, geometric };
enum class ProfileStatus { completed, blew_up, step_failure };

std::string to_string(HarmonicEquation e);
std::string to_string(ProfileStatus s);

struct ProfileSample {
  double r = 0.0;
  double u = 0.0;
  double du = 0.0;
  double ddu = 0.0;  // RHS(r, du), exact for the ODE
};

struct ProfileTolerances {
  double rtol = 1e-10;
  double atol = 1e-14;
  double blowup_threshold = 1e8;
};

struct ProfileOptions {
  double startup_radius = 1e-4;
  double r_max = 3.0;
  ProfileTolerances tolerances;
  HarmonicEquation harmonic_equation = HarmonicEquation::published;
  /// When non-empty (ascending), samples are recorded only at these radii, after the startup sample.
  std::vector<double> output_radii;
};

struct ProfileSolution {
  explicit ProfileSolution(SpeedSpec s) : speed(std::move(s)) {}

  SpeedSpec speed;
  std::vector<ProfileSample> samples;
  double startup_slope = 0.0;
  double startup_radius = 0.0;
  double r_max = 0.0;
  std::optional<double> blowup_radius;
  double blowup_bracket = 0.0;  // width of the interval known to contain the singularity
  ProfileStatus status = ProfileStatus::completed;
  ProfileTolerances tolerances;
  HarmonicEquation harmonic_equation = HarmonicEquation::published;
  std::string diagnostics;

  [[nodiscard]] int n() const { return speed.n(); }
  [[nodiscard]] RadialJet jet(std::size_t i) const {
    const auto& s = samples[i];
    return RadialJet{s.r, s.u, s.du, s.ddu};
  }
};

/// Slope c of the umbilic startup v = c r: the v_1 slope (k/(n C(n−1,k−1)))^{1/k} for S_k^{1/k},
/// the w_1 slope (n²+n+2)/8 for the published harmonic equation and n(n−1)/4 for the geometric one.
double startup_slope(const SpeedSpec& spec, HarmonicEquation eq = HarmonicEquation::published);

/// Right-hand side used for `spec` (F_{k,n} or the chosen harmonic form).
double profile_rhs(const SpeedSpec& spec, HarmonicEquation eq, double r, double v);

/// Integrates the rotational translator ODE from r = ε with v(ε) = cε, u(ε) = cε²/2.
/// Supports SigmaKRoot with 2 <= k <= n, and HarmonicPairs with 3 <= n <= 6.
ProfileSolution integrate_profile(const SpeedSpec& spec, const ProfileOptions& options = {});

}  // namespace soliton
