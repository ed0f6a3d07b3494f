#pragma once

#include <vector>

#include "fockq/quadrature.hpp"
#include "fockq/symbol.hpp"

namespace fockq {

/// Heat transform f~(t)(w) = int f(w - z) d mu_t(z).
///
/// Parts of f with a closed form are evaluated exactly: radial terms through
/// the Poisson mixture of their diagonal moments, plane waves through the
/// Gaussian characteristic function. The remainder (or all of f, when f has
/// no normal form) goes through the polar rule.
cplx heat_transform(const Symbol& f, double t, cplx w, const PolarRule& rule = default_polar_rule());

/// As heat_transform, and additionally re-runs the quadrature part with the
/// radial order and angle count doubled; throws QuadratureError when the two
/// results differ by more than tol.
cplx heat_transform_checked(const Symbol& f, double t, cplx w, double tol,
                            const PolarRule& rule = default_polar_rule());

struct HeatField {
  double t = 0.0;
  std::vector<cplx> grid;
  std::vector<cplx> values;
};

HeatField heat_field(const Symbol& f, double t, std::vector<cplx> points,
                     const PolarRule& rule = default_polar_rule());

struct SemigroupCheck {
  cplx lhs;  // (f~(t))~(s)(w), nested quadrature
  cplx rhs;  // f~(s+t)(w)
};

/// The inner field z -> f~(t)(z) is itself computed by quadrature on `nested`
/// at every outer node, and the outer average uses `nested` as well.
SemigroupCheck heat_semigroup_check(const Symbol& f, double s, double t, cplx w,
                                    const PolarRule& nested = PolarRule::make(20, 40));

/// MO(f)(w) = (|f|^2)~(w) - |f~(w)|^2. Round-off down to -1e-12 is clipped to 0;
/// anything more negative throws QuadratureError.
double mean_oscillation(const Symbol& f, double t, cplx w, const PolarRule& rule = default_polar_rule());

/// MO computed directly as int |f(w - z) - f~(w)|^2 d mu_t(z) on a Cartesian
/// Gauss-Hermite rule; shares no code with mean_oscillation.
double mean_oscillation_direct(const Symbol& f, double t, cplx w, int order = 96);

/// int |f(w - z) - c|^2 d mu_t(z) on the same Gauss-Hermite rule.
double gaussian_deviation(const Symbol& f, double t, cplx w, cplx c, int order = 96);

struct OscillationReport {
  double t = 0.0;
  std::vector<cplx> grid;
  std::vector<cplx> heat;
  std::vector<double> mo;
  double bmo_estimate = 0.0;  // max sqrt(mo)
  double heat_sup = 0.0;      // max |heat|
};

OscillationReport oscillation_report(const Symbol& f, double t, const std::vector<cplx>& points,
                                     const PolarRule& rule = default_polar_rule());

/// max over the grid of sqrt(MO); a lower bound of the BMO*^t seminorm.
double bmo_seminorm(const Symbol& f, double t, const SampleGrid& grid,
                    const PolarRule& rule = default_polar_rule());

/// Var of f over the disk B(center, radius) on a Gauss-Legendre (radius) x
/// trapezoid (angle) grid of roughly `samples` nodes. Both the mean of
/// |f - f_E|^2 and the pairwise form (1/2) sum sum |f(z) - f(w)|^2 are
/// evaluated; they must agree to 1e-8 relative or Error is thrown.
struct BallVariance {
  double mean_form;
  double pair_form;
};
BallVariance ball_variance(const Symbol& f, cplx center, double radius, int samples = 2048);
double variance_on_ball(const Symbol& f, cplx center, double radius, int samples = 2048);

/// MO(f)(a) against the floor C(rho) * Var_{B(a, rho)}(f), where
///   C(rho) = exp(-rho^2 / 2t) * (pi rho^2)^2 / (4 pi t)^2,
/// which is exp(-1/2) / 16 at the default rho = sqrt(t).
struct MoFloor {
  double mo;
  double floor;
};
double mo_floor_constant(double t, double rho);
MoFloor mo_lower_bound_check(const Symbol& f, cplx a, double t, double rho = -1.0, int samples = 2048);

/// max over radii of the disk average of |f(w - .)|, each average on a polar
/// Gauss-Legendre x trapezoid grid of roughly `samples` nodes.
double maximal_function(const Symbol& f, cplx w, const std::vector<double>& radii, int samples = 4096);

/// sum_{k=1}^{terms} k e^{-(k-1)}
double hardy_littlewood_constant(int terms = 60);

}  // namespace fockq
