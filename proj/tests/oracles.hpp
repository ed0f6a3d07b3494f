#pragma once

// Reference computations for the tests. None of them call into the library,
// so agreement is evidence rather than a tautology.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Regularized lower incomplete gamma P(a, x): power series below a + 1,
/// Lentz continued fraction for Q above, in long double.
inline double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  const long double la = a, lx = x;
  const long double log_prefix = la * std::log(lx) - lx - std::lgamma(la);
  if (x < a + 1.0) {
    long double term = 1.0L / la, sum = term;
    for (int n = 1; n < 100000; ++n) {
      term *= lx / (la + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-19L) break;
    }
    return static_cast<double>(sum * std::exp(log_prefix));
  }
  const long double tiny = 1e-300L;
  long double b = lx + 1.0L - la, c = 1.0L / tiny, d = 1.0L / b, h = d;
  for (int i = 1; i < 100000; ++i) {
    const long double an = -i * (i - la);
    b += 2.0L;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0L / d;
    const long double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0L) < 1e-19L) break;
  }
  return static_cast<double>(1.0L - std::exp(log_prefix) * h);
}

/// Diagonal entry of a radial step symbol: sum over shells of value times
/// the Gamma(k+1) mass of [lo^2/4t, hi^2/4t).
inline cplx shell_moment(const std::vector<double>& breaks, const std::vector<cplx>& values, double t, int k) {
  cplx s = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    const double p_lo = gamma_p(k + 1.0, lo * lo / (4.0 * t));
    const double p_hi = i < breaks.size() ? gamma_p(k + 1.0, breaks[i] * breaks[i] / (4.0 * t)) : 1.0;
    s += values[i] * (p_hi - p_lo);
    if (i < breaks.size()) lo = breaks[i];
  }
  return s;
}

/// Shell layout of the dyadic counterexample with J levels: +1 on
/// [2^j, 2^(j+1)) for even j, -1 for odd j.
inline void dyadic_shells(int J, std::vector<double>& breaks, std::vector<cplx>& values) {
  breaks.clear();
  values.clear();
  for (int j = -J - 1; j <= J + 1; ++j) breaks.push_back(std::ldexp(1.0, j));
  // Below 2^(-J-1) the innermost resolved shell's sign continues.
  values.push_back((J + 1) % 2 == 0 ? 1.0 : -1.0);
  for (int j = -J - 1; j <= J; ++j) values.push_back(((j % 2) + 2) % 2 == 0 ? 1.0 : -1.0);
  values.push_back(values.back());
}

/// Orthonormal monomial e_k(z) = z^k / sqrt((4t)^k k!), computed in logs.
inline cplx basis(double t, int k, cplx z) {
  if (k == 0) return 1.0;
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  const double logmag = k * std::log(r) - 0.5 * (k * std::log(4.0 * t) + std::lgamma(k + 1.0));
  return std::polar(std::exp(logmag), k * std::arg(z));
}

/// int F d mu_t by the Cartesian trapezoid rule on [-L, L]^2, which converges
/// spectrally for smooth integrands with Gaussian decay.
inline cplx gaussian_trapezoid(const std::function<cplx(cplx)>& F, double t, double h_rel = 0.04, double L_rel = 9.0) {
  const double s = std::sqrt(2.0 * t);  // standard deviation per real coordinate
  const double h = h_rel * s * 5.0, L = L_rel * s;
  const int n = static_cast<int>(std::ceil(L / h));
  cplx sum = 0.0;
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j) {
      const cplx z(i * h, j * h);
      sum += F(z) * std::exp(-std::norm(z) / (4.0 * t));
    }
  return sum * h * h / (4.0 * M_PI * t);
}

/// Box half-width, in standard deviations, that holds the Gamma(k+1) mass of
/// |e_k|^2 d mu_t up to ~1e-16.
inline double box_for_index(int k) { return std::sqrt(2.0 * (k + 12.0 * std::sqrt(k + 1.0) + 40.0)); }

/// <f e_j, e_k>_t by trapezoid.
inline cplx moment(const std::function<cplx(cplx)>& f, double t, int k, int j) {
  return gaussian_trapezoid([&](cplx z) { return f(z) * basis(t, j, z) * std::conj(basis(t, k, z)); }, t, 0.03,
                            box_for_index(std::max(k, j) + 2));
}

/// Plane-wave matrix entry via the associated Laguerre closed form of the
/// displacement operator D(g) = exp(g a^* - conj(g) a), scaled by the Gaussian
/// factor: <e^{i Re(z conj xi)} e_j, e_k> = e^{-t|xi|^2/2} <D(g) e_j, e_k>,
/// g = i sqrt(t) conj(xi).
inline cplx plane_wave_entry(double t, cplx xi, int k, int j) {
  const cplx g = cplx(0.0, 1.0) * std::sqrt(t) * std::conj(xi);
  const double x = std::norm(g);
  const int lo = std::min(j, k), d = std::abs(k - j);
  const cplx base = k >= j ? g : -std::conj(g);
  const double lognorm = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0)) - 0.5 * x;
  const cplx gd = d == 0 ? cplx(1.0) : std::pow(base, d);
  return std::exp(-0.5 * t * std::norm(xi)) * std::exp(lognorm) * gd *
         std::assoc_laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(d), x);
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double tt = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tt * tt + 1.0), s = tt * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = c * arp - s * arq;
          a[r][q] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a[p][r], aqr = a[q][r];
          a[p][r] = c * apr - s * aqr;
          a[q][r] = s * apr + c * aqr;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

/// Largest singular value of a complex rows x cols matrix (row-major):
/// eigenvalues of A^*A through its real 2n x 2n symmetric embedding.
inline double spectral_norm(const std::vector<cplx>& a, std::size_t rows, std::size_t cols) {
  std::vector<cplx> h(cols * cols, 0.0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t r = 0; r < rows; ++r) h[i * cols + j] += std::conj(a[r * cols + i]) * a[r * cols + j];
  std::vector<std::vector<double>> e(2 * cols, std::vector<double>(2 * cols));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const cplx v = h[i * cols + j];
      e[i][j] = v.real();
      e[i + cols][j + cols] = v.real();
      e[i][j + cols] = -v.imag();
      e[i + cols][j] = v.imag();
    }
  const auto ev = jacobi_eigenvalues(e);
  return std::sqrt(std::max(0.0, *std::max_element(ev.begin(), ev.end())));
}

}  // namespace oracle
