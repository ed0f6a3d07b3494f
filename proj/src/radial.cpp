#include "fockq/radial.hpp"

#include <cmath>
#include <limits>

#include "fockq/gamma_mass.hpp"
#include "fockq/quadrature.hpp"

namespace fockq {

namespace {

void check_args(double t, int k0, int k1) {
  if (!(t > 0.0)) throw Error("radial spectrum: t must be positive");
  if (k0 < 0 || k1 < k0) throw Error("radial spectrum: bad index range");
}

cplx poly_moment(const PolyTerm& p, double t, int k) {
  // c (4t)^a (k+a)!/k! (1 - 4 t alpha i)^{-(k+a+1)}
  const int m = k + p.a;
  const double log_mag = p.a * std::log(4.0 * t) + log_factorial(m) - log_factorial(k);
  const cplx phase_base = cplx(1.0, -4.0 * t * p.alpha);
  const cplx power = std::exp(-static_cast<double>(m + 1) * std::log(phase_base));
  return p.c * std::exp(log_mag) * power;
}

cplx shell_moment(const ShellForm& s, double t, int k) {
  cplx acc = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i <= s.breaks.size(); ++i) {
    const double hi = i < s.breaks.size() ? s.breaks[i] * s.breaks[i] / (4.0 * t)
                                          : std::numeric_limits<double>::infinity();
    if (s.values[i] != cplx(0.0)) acc += s.values[i] * gamma_shell_mass(k, lo, hi);
    lo = hi;
  }
  return acc;
}

}  // namespace

std::vector<cplx> radial_spectrum_closed(const NormalForm& nf, double t, int k0, int k1) {
  check_args(t, k0, k1);
  if (!nf.radial_closed()) throw Error("radial_spectrum_closed: normal form is not radial");
  std::vector<cplx> out(static_cast<std::size_t>(k1 - k0));
#pragma omp parallel for schedule(static)
  for (int k = k0; k < k1; ++k) {
    cplx s = 0.0;
    for (const auto& p : nf.poly) s += poly_moment(p, t, k);
    if (nf.shells) s += shell_moment(*nf.shells, t, k);
    out[static_cast<std::size_t>(k - k0)] = s;
  }
  return out;
}

std::vector<cplx> radial_spectrum_numeric(const Symbol& f, double t, int k0, int k1) {
  check_args(t, k0, k1);
  static const QuadratureRule gl = gauss_legendre(16);
  std::vector<cplx> out(static_cast<std::size_t>(k1 - k0));
  for (int k = k0; k < k1; ++k) {
    const double mu = k + 1.0;
    const double sd = std::sqrt(mu);
    const double lo = std::max(0.0, mu - 12.0 * sd - 10.0);
    const double hi = mu + 12.0 * sd + 40.0;
    const double width = std::max(0.5, 0.5 * sd);
    const double lf = log_factorial(k);

    auto panel = [&](double a, double b) {
      cplx s = 0.0;
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (int i = 0; i < gl.order; ++i) {
        const double u = mid + half * gl.nodes[i];
        const double dens = std::exp(k * std::log(u) - u - lf);
        s += gl.weights[i] * half * dens * eval(f, cplx(std::sqrt(4.0 * t * u), 0.0));
      }
      return s;
    };

    cplx acc = 0.0;
    double a = lo;
    if (lo == 0.0) {
      // Graded panels toward the origin absorb sqrt-type behaviour in u.
      double edge = std::ldexp(width, -30);
      acc += panel(0.0, edge);
      while (edge < width) {
        acc += panel(edge, 2.0 * edge);
        edge *= 2.0;
      }
      a = edge;
    }
    for (; a < hi; a += width) acc += panel(a, std::min(hi, a + width));
    out[static_cast<std::size_t>(k - k0)] = acc;
  }
  return out;
}

std::vector<cplx> radial_spectrum(const Symbol& f, double t, int k0, int k1) {
  if (!is_radial(f)) throw Error("radial_spectrum: symbol is not radial");
  if (auto nf = normal_form(f); nf && nf->radial_closed()) return radial_spectrum_closed(*nf, t, k0, k1);
  return radial_spectrum_numeric(f, t, k0, k1);
}

cplx radial_heat(const NormalForm& nf, double t, cplx w) {
  const double nu = std::norm(w) / (4.0 * t);
  const auto range = poisson_support(nu);
  const auto s = radial_spectrum_closed(nf, t, range.lo, range.hi);
  cplx acc = 0.0;
  for (int j = range.lo; j < range.hi; ++j)
    acc += poisson_weight(j, nu) * s[static_cast<std::size_t>(j - range.lo)];
  return acc;
}

}  // namespace fockq
