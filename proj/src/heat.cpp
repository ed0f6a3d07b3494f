#include "fockq/heat.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>

#include "fockq/kernels.hpp"
#include "fockq/normal_form.hpp"
#include "fockq/radial.hpp"

namespace fockq {

namespace {

constexpr double kMoClip = 1e-12;

/// f split into the pieces heat_transform treats differently.
struct HeatPlan {
  Symbol f;
  std::optional<NormalForm> radial;  // radial-closed part
  std::vector<WaveTerm> waves;
  std::optional<NormalForm> rest;  // non-radial poly terms
  bool generic = false;            // no normal form: quadrature of f itself

  explicit HeatPlan(const Symbol& s) : f(s) {
    auto nf = normal_form(s);
    if (!nf) {
      generic = true;
      return;
    }
    NormalForm rad, other;
    for (const auto& p : nf->poly) (p.a == p.b ? rad.poly : other.poly).push_back(p);
    rad.shells = nf->shells;
    if (!rad.poly.empty() || rad.shells) radial = std::move(rad);
    if (!other.poly.empty()) rest = std::move(other);
    waves = nf->waves;
  }

  bool needs_quadrature() const { return generic || rest.has_value(); }

  cplx quadrature_part(double t, cplx w, const PolarRule& rule) const {
    if (generic) return kernels::heat_point([this](cplx z) { return eval(f, z); }, t, w, rule);
    if (rest) return kernels::heat_point([this](cplx z) { return rest->eval(z); }, t, w, rule);
    return 0.0;
  }

  cplx closed_part(double t, cplx w) const {
    cplx acc = 0.0;
    if (radial) acc += radial_heat(*radial, t, w);
    for (const auto& v : waves)
      acc += v.c * std::exp(cplx(-t * std::norm(v.xi), (w * std::conj(v.xi)).real()));
    return acc;
  }

  cplx operator()(double t, cplx w, const PolarRule& rule) const {
    return closed_part(t, w) + quadrature_part(t, w, rule);
  }
};

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error("heat transform: t must be positive");
}

const PolarRule& doubled(const PolarRule& rule) {
  return cached_polar_rule(2 * rule.radial.order, 2 * rule.angular.order);
}

double clip_mo(double mo) {
  if (mo >= 0.0) return mo;
  if (mo >= -kMoClip) return 0.0;
  throw QuadratureError("mean oscillation is negative beyond round-off: " + std::to_string(mo));
}

/// Normalized polar Gauss-Legendre x trapezoid nodes on the unit disk.
struct DiskGrid {
  std::vector<cplx> offsets;
  std::vector<double> p;  // probability weights, sum 1

  explicit DiskGrid(int samples) {
    if (samples < 4) throw Error("disk grid: need at least 4 samples");
    const int nr = std::max(2, static_cast<int>(std::ceil(0.5 * std::sqrt(static_cast<double>(samples)))));
    const int na = std::max(2, (samples + nr - 1) / nr);
    const auto gl = gauss_legendre(nr);
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * (gl.nodes[i] + 1.0);
      // int_0^1 g r dr / (1/2), then angular mean
      const double wr = 0.5 * gl.weights[i] * r * 2.0 / na;
      for (int l = 0; l < na; ++l) {
        offsets.push_back(std::polar(r, 2.0 * std::numbers::pi * l / na));
        p.push_back(wr);
      }
    }
  }
};

template <class Fn>
void parallel_points(std::size_t n, Fn&& fn) {
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(fockq_heat_points)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

cplx heat_transform(const Symbol& f, double t, cplx w, const PolarRule& rule) {
  check_t(t);
  return HeatPlan(f)(t, w, rule);
}

cplx heat_transform_checked(const Symbol& f, double t, cplx w, double tol, const PolarRule& rule) {
  check_t(t);
  const HeatPlan plan(f);
  const cplx closed = plan.closed_part(t, w);
  if (!plan.needs_quadrature()) return closed;
  const cplx q1 = plan.quadrature_part(t, w, rule);
  const cplx q2 = plan.quadrature_part(t, w, doubled(rule));
  if (std::abs(q1 - q2) > tol)
    throw QuadratureError("heat transform did not converge: order doubling moved the result by " +
                          std::to_string(std::abs(q1 - q2)));
  return closed + q2;
}

HeatField heat_field(const Symbol& f, double t, std::vector<cplx> points, const PolarRule& rule) {
  check_t(t);
  const HeatPlan plan(f);
  HeatField out{t, std::move(points), {}};
  out.values.resize(out.grid.size());
  parallel_points(out.grid.size(), [&](std::size_t i) { out.values[i] = plan(t, out.grid[i], rule); });
  return out;
}

SemigroupCheck heat_semigroup_check(const Symbol& f, double s, double t, cplx w, const PolarRule& nested) {
  check_t(s);
  check_t(t);
  const auto& rad = nested.radial;
  const auto& ang = nested.angular;
  std::vector<cplx> outer;
  outer.reserve(static_cast<std::size_t>(rad.order * ang.order));
  for (int n = 0; n < rad.order; ++n) {
    const double r = std::sqrt(4.0 * s * rad.nodes[n]);
    for (int l = 0; l < ang.order; ++l) outer.push_back(w - std::polar(r, ang.nodes[l]));
  }
  const auto inner = kernels::parallel::heat_field([&f](cplx z) { return eval(f, z); }, t, outer, nested);
  cplx lhs = 0.0;
  for (int n = 0; n < rad.order; ++n) {
    cplx ring = 0.0;
    for (int l = 0; l < ang.order; ++l) ring += inner[static_cast<std::size_t>(n * ang.order + l)];
    lhs += rad.weights[n] * ang.weights[0] * ring;
  }
  return {lhs, heat_transform(f, s + t, w)};
}

double mean_oscillation(const Symbol& f, double t, cplx w, const PolarRule& rule) {
  check_t(t);
  const cplx m1 = heat_transform(f, t, w, rule);
  const cplx m2 = heat_transform(f * conj(f), t, w, rule);
  return clip_mo(m2.real() - std::norm(m1));
}

double gaussian_deviation(const Symbol& f, double t, cplx w, cplx c, int order) {
  check_t(t);
  const auto gh = gauss_hermite(order);
  const double scale = 2.0 * std::sqrt(t);
  double acc = 0.0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      const cplx z(scale * gh.nodes[i], scale * gh.nodes[j]);
      acc += gh.weights[i] * gh.weights[j] * std::norm(eval(f, w - z) - c);
    }
  return acc / std::numbers::pi;
}

double mean_oscillation_direct(const Symbol& f, double t, cplx w, int order) {
  check_t(t);
  const auto gh = gauss_hermite(order);
  const double scale = 2.0 * std::sqrt(t);
  std::vector<cplx> vals;
  std::vector<double> wts;
  vals.reserve(static_cast<std::size_t>(order * order));
  cplx mean = 0.0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      const double wt = gh.weights[i] * gh.weights[j] / std::numbers::pi;
      vals.push_back(eval(f, w - cplx(scale * gh.nodes[i], scale * gh.nodes[j])));
      wts.push_back(wt);
      mean += wt * vals.back();
    }
  double acc = 0.0;
  for (std::size_t q = 0; q < vals.size(); ++q) acc += wts[q] * std::norm(vals[q] - mean);
  return acc;
}

OscillationReport oscillation_report(const Symbol& f, double t, const std::vector<cplx>& points,
                                     const PolarRule& rule) {
  check_t(t);
  const HeatPlan plan(f);
  const HeatPlan plan_sq(f * conj(f));
  OscillationReport rep;
  rep.t = t;
  rep.grid = points;
  rep.heat.resize(points.size());
  rep.mo.resize(points.size());
  parallel_points(points.size(), [&](std::size_t i) {
    const cplx h = plan(t, points[i], rule);
    rep.heat[i] = h;
    rep.mo[i] = clip_mo(plan_sq(t, points[i], rule).real() - std::norm(h));
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.bmo_estimate = std::max(rep.bmo_estimate, std::sqrt(rep.mo[i]));
    rep.heat_sup = std::max(rep.heat_sup, std::abs(rep.heat[i]));
  }
  return rep;
}

double bmo_seminorm(const Symbol& f, double t, const SampleGrid& grid, const PolarRule& rule) {
  SampleGrid g = grid;
  // MO of a radial symbol depends on |w| only.
  if (is_radial(f)) g.n_angular = 1;
  return oscillation_report(f, t, g.points(), rule).bmo_estimate;
}

BallVariance ball_variance(const Symbol& f, cplx center, double radius, int samples) {
  if (!(radius > 0.0)) throw Error("variance_on_ball: radius must be positive");
  const DiskGrid disk(samples);
  const std::size_t n = disk.p.size();
  std::vector<cplx> v(n);
  cplx mean = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    v[q] = eval(f, center + radius * disk.offsets[q]);
    mean += disk.p[q] * v[q];
  }
  double mean_form = 0.0;
  for (std::size_t q = 0; q < n; ++q) mean_form += disk.p[q] * std::norm(v[q] - mean);

  double pair_form = 0.0;
#pragma omp parallel for reduction(+ : pair_form) schedule(static)
  for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(n); ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < n; ++b) row += disk.p[b] * std::norm(v[static_cast<std::size_t>(a)] - v[b]);
    pair_form += disk.p[static_cast<std::size_t>(a)] * row;
  }
  pair_form *= 0.5;

  if (std::abs(mean_form - pair_form) > 1e-8 * std::max(mean_form, pair_form) + 1e-15)
    throw Error("variance_on_ball: mean and pairwise forms disagree");
  return {mean_form, pair_form};
}

double variance_on_ball(const Symbol& f, cplx center, double radius, int samples) {
  return ball_variance(f, center, radius, samples).mean_form;
}

double mo_floor_constant(double t, double rho) {
  check_t(t);
  const double ball = std::numbers::pi * rho * rho;
  const double norm = 4.0 * std::numbers::pi * t;
  return std::exp(-rho * rho / (2.0 * t)) * ball * ball / (norm * norm);
}

MoFloor mo_lower_bound_check(const Symbol& f, cplx a, double t, double rho, int samples) {
  check_t(t);
  if (rho <= 0.0) rho = std::sqrt(t);
  const double mo = mean_oscillation(f, t, a);
  return {mo, mo_floor_constant(t, rho) * variance_on_ball(f, a, rho, samples)};
}

double maximal_function(const Symbol& f, cplx w, const std::vector<double>& radii, int samples) {
  if (radii.empty()) throw Error("maximal_function: need at least one radius");
  const DiskGrid disk(samples);
  double best = 0.0;
  for (double r : radii) {
    if (!(r > 0.0)) throw Error("maximal_function: radii must be positive");
    double avg = 0.0;
    for (std::size_t q = 0; q < disk.p.size(); ++q) avg += disk.p[q] * std::abs(eval(f, w - r * disk.offsets[q]));
    best = std::max(best, avg);
  }
  return best;
}

double hardy_littlewood_constant(int terms) {
  double c = 0.0;
  for (int k = 1; k <= terms; ++k) c += k * std::exp(-(k - 1.0));
  return c;
}

}  // namespace fockq
