#include "fockq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fockq/gamma_mass.hpp"
#include "fockq/heat.hpp"
#include "fockq/kernels.hpp"
#include "fockq/normal_form.hpp"
#include "fockq/radial.hpp"

namespace fockq {

namespace {

constexpr int kProbeBand = 16;
constexpr double kCoherentTail = 1e-12;

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error("fock: t must be positive");
}

void check_shape(int rows, int cols) {
  if (rows < 0 || cols < 0) throw Error("fock: matrix dimensions must be non-negative");
}

void add_poly(CMatrix& m, const PolyTerm& p, double t) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  const double log4t = std::log(4.0 * t);
  const cplx base = std::log(cplx(1.0, -4.0 * t * p.alpha));
  for (int j = 0; j < cols; ++j) {
    const int k = j + p.a - p.b;
    if (k < 0 || k >= rows) continue;
    const int mm = p.a + j;
    const double log_mag =
        0.5 * (p.a + p.b) * log4t + log_factorial(mm) - 0.5 * (log_factorial(j) + log_factorial(k));
    m(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) +=
        p.c * std::exp(cplx(log_mag, 0.0) - static_cast<double>(mm + 1) * base);
  }
}

/// c e^{-t|xi|^2/2} D(gamma), gamma = i conj(xi) sqrt(t). Along each diagonal
/// d = k - j >= 0,
///   D_{j+d,j} = e^{-x/2} gamma^d sqrt(j!/(j+d)!) L_j^{(d)}(x),   x = |gamma|^2,
/// and the normalized Laguerre values psi_j obey
///   sqrt((j+1)(j+1+d)) psi_{j+1} = (2j+1+d-x) psi_j - sqrt(j(j+d)) psi_{j-1}.
/// Entries above the diagonal use -conj(gamma) in place of gamma.
void add_wave(CMatrix& m, const WaveTerm& w, double t) {
  const long rows = static_cast<long>(m.rows()), cols = static_cast<long>(m.cols());
  if (rows == 0 || cols == 0) return;
  const cplx gamma = cplx(0.0, 1.0) * std::conj(w.xi) * std::sqrt(t);
  const double x = std::norm(gamma);
  const cplx pref = w.c * std::exp(-0.5 * t * std::norm(w.xi));
  for (long d = -(cols - 1); d < rows; ++d) {
    const long ad = std::labs(d);
    const long len = d >= 0 ? std::min(rows - d, cols) : std::min(cols + d, rows);
    const cplx g = d >= 0 ? gamma : -std::conj(gamma);
    // phi_0 = e^{-x/2} g^|d| / sqrt(|d|!)
    cplx phi0 = 0.0;
    if (ad == 0) {
      phi0 = std::exp(-0.5 * x);
    } else if (x > 0.0) {
      const double lm = -0.5 * x + ad * 0.5 * std::log(x) - 0.5 * log_factorial(static_cast<int>(ad));
      phi0 = std::polar(std::exp(lm), ad * std::arg(g));
    }
    cplx prev = 0.0, cur = phi0;
    for (long j = 0; j < len; ++j) {
      const long k = d >= 0 ? j + d : j;
      const long c = d >= 0 ? j : j - d;
      m(static_cast<std::size_t>(k), static_cast<std::size_t>(c)) += pref * cur;
      const double jj = static_cast<double>(j), dd = static_cast<double>(ad);
      const cplx next = ((2.0 * jj + 1.0 + dd - x) * cur - std::sqrt(jj * (jj + dd)) * prev) /
                        std::sqrt((jj + 1.0) * (jj + 1.0 + dd));
      prev = cur;
      cur = next;
    }
  }
}

void add_shells(CMatrix& m, const ShellForm& s, double t) {
  const int n = static_cast<int>(std::min(m.rows(), m.cols()));
  if (n == 0) return;
  const auto d = radial_spectrum_closed(NormalForm{{}, {}, s}, t, 0, n);
  for (int k = 0; k < n; ++k) m(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) += d[static_cast<std::size_t>(k)];
}

CMatrix diagonal(const std::vector<cplx>& d, int rows, int cols) {
  CMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  const int n = std::min(rows, cols);
  for (int k = 0; k < n; ++k) m(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = d[static_cast<std::size_t>(k)];
  return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

FockBasis::FockBasis(double t, int N) : t_(t), n_(N) {
  check_t(t);
  if (N < 1) throw Error("FockBasis: dimension must be positive");
  const auto& rule = default_polar_rule();
  for (int k = 0; k < std::min(N, 30); ++k) {
    double s = 0.0;
    for (int n = 0; n < rule.radial.order; ++n) {
      const double r = std::sqrt(4.0 * t * rule.radial.nodes[n]);
      double ring = 0.0;
      for (int l = 0; l < rule.angular.order; ++l) ring += std::norm(eval(k, std::polar(r, rule.angular.nodes[l])));
      s += rule.radial.weights[n] * rule.angular.weights[0] * ring;
    }
    if (std::abs(s - 1.0) > 1e-10)
      throw QuadratureError("FockBasis: normalization check failed at k=" + std::to_string(k));
  }
}

cplx FockBasis::eval(int k, cplx z) const {
  if (k < 0 || k >= n_) throw Error("FockBasis: index out of range");
  if (z == cplx(0.0)) return k == 0 ? 1.0 : 0.0;
  const double mag = std::exp(k * std::log(std::abs(z)) - 0.5 * (k * std::log(4.0 * t_) + log_factorial(k)));
  return std::polar(mag, k * std::arg(z));
}

CMatrix moment_matrix_quadrature(const Symbol& f, double t, int rows, int cols, const PolarRule& rule) {
  check_t(t);
  check_shape(rows, cols);
  const auto samples = kernels::sample_polar([&f](cplx z) { return eval(f, z); }, t, rule);
  return kernels::parallel::moment_quadrature(samples, static_cast<std::size_t>(rows),
                                              static_cast<std::size_t>(cols));
}

CMatrix moment_matrix(const Symbol& f, double t, int rows, int cols) {
  check_t(t);
  check_shape(rows, cols);
  if (auto nf = normal_form(f)) {
    CMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (const auto& p : nf->poly) add_poly(m, p, t);
    for (const auto& w : nf->waves) add_wave(m, w, t);
    if (nf->shells) add_shells(m, *nf->shells, t);
    return m;
  }
  if (is_radial(f)) return diagonal(radial_spectrum(f, t, 0, std::min(rows, cols)), rows, cols);

  const auto& rule = default_polar_rule();
  const CMatrix a = moment_matrix_quadrature(f, t, rows, cols, rule);
  const CMatrix b =
      moment_matrix_quadrature(f, t, rows, cols, cached_polar_rule(2 * rule.radial.order, 2 * rule.angular.order));
  double scale = 1.0;
  for (auto v : b.data()) scale = std::max(scale, std::abs(v));
  if (a.max_abs_diff(b) > 1e-8 * scale)
    throw QuadratureError("moment_matrix: quadrature did not converge for " + to_string(f) +
                          " (reduce the matrix size)");
  return b;
}

std::vector<cplx> toeplitz_diagonal(const Symbol& f, double t, int N) {
  check_t(t);
  if (N < 0) throw Error("toeplitz_diagonal: N must be non-negative");
  if (!is_radial(f)) throw Error("toeplitz_diagonal: symbol is not radial");
  return radial_spectrum(f, t, 0, N);
}

TruncatedOperator toeplitz_matrix(const Symbol& f, double t, int N) {
  TruncatedOperator op{t, N, N, {}};
  op.entries = is_radial(f) ? diagonal(toeplitz_diagonal(f, t, N), N, N) : moment_matrix(f, t, N, N);
  return op;
}

HankelGram hankel_gram(const Symbol& f, const Symbol& g, double t, int N, int M) {
  check_t(t);
  if (N < 1 || M < N) throw Error("hankel_gram: need 1 <= N <= M");
  const CMatrix tfg = moment_matrix(f * g, t, N, N);
  const CMatrix fm = moment_matrix(f, t, N, M);
  const CMatrix gm_probe = moment_matrix(g, t, M + kProbeBand, N);

  HankelGram out;
  out.N = N;
  out.M = M;
  for (std::size_t j = 0; j < static_cast<std::size_t>(N); ++j) {
    double tail = 0.0;
    for (std::size_t m = static_cast<std::size_t>(M); m < gm_probe.rows(); ++m) tail += std::norm(gm_probe(m, j));
    out.tail_indicator = std::max(out.tail_indicator, tail);
  }
  out.entries = tfg - kernels::parallel::gemm(fm, gm_probe.block(static_cast<std::size_t>(M), static_cast<std::size_t>(N)));
  return out;
}

std::vector<cplx> coherent_state_coeffs(double t, cplx w, int max_dim) {
  check_t(t);
  const double nu = std::norm(w) / (4.0 * t);
  int n = 1;
  while (gamma_p(n, nu) >= kCoherentTail) {
    if (++n > max_dim) {
      const int need = static_cast<int>(std::ceil(nu + 10.0 * std::sqrt(nu) + 30.0));
      throw TruncationError("coherent state at |w|^2/4t = " + std::to_string(nu) + " needs about " +
                            std::to_string(need) + " basis vectors; max is " + std::to_string(max_dim));
    }
  }
  std::vector<cplx> c(static_cast<std::size_t>(n));
  const double aw = std::abs(w);
  for (int k = 0; k < n; ++k) {
    if (aw == 0.0) {
      c[static_cast<std::size_t>(k)] = k == 0 ? 1.0 : 0.0;
      continue;
    }
    const double mag = std::exp(-std::norm(w) / (8.0 * t) + k * std::log(aw) -
                                0.5 * (k * std::log(4.0 * t) + log_factorial(k)));
    c[static_cast<std::size_t>(k)] = std::polar(mag, -k * std::arg(w));
  }
  return c;
}

double hankel_norm_on_state(const Symbol& f, double t, const std::vector<cplx>& coeffs, int M) {
  check_t(t);
  const int n = static_cast<int>(coeffs.size());
  if (n < 1) throw Error("hankel_norm_on_state: empty state");
  if (M < n) throw Error("hankel_norm_on_state: need M >= number of coefficients");
  const CMatrix b = moment_matrix(f * conj(f), t, n, n);
  const CMatrix fm = moment_matrix(f, t, M, n);
  const double full = inner(coeffs, kernels::parallel::gemv(b, coeffs)).real();
  double proj = 0.0;
  for (auto v : kernels::parallel::gemv(fm, coeffs)) proj += std::norm(v);
  const double radicand = full - proj;
  if (radicand < -1e-10)
    throw QuadratureError("hankel_norm_on_state: negative radicand " + std::to_string(radicand));
  return std::sqrt(std::max(0.0, radicand));
}

OperatorPair scaling_covariance_check(const Symbol& f, double t, int N) {
  check_t(t);
  return {toeplitz_matrix(f, t, N), toeplitz_matrix(scale(f, 2.0 * std::sqrt(t)), 0.25, N)};
}

MoHankel mo_vs_hankel_check(const Symbol& f, double t, cplx w, int M) {
  const auto c = coherent_state_coeffs(t, w);
  const int n = static_cast<int>(c.size());
  if (M <= 0) M = 2 * n + 32;
  const double hf = hankel_norm_on_state(f, t, c, M);
  const double hfbar = hankel_norm_on_state(conj(f), t, c, M);
  return {mean_oscillation(f, t, w), hf * hf + hfbar * hfbar};
}

cplx berezin_from_matrix(const CMatrix& T, const std::vector<cplx>& coeffs) {
  const std::size_t n = std::min({T.rows(), T.cols(), coeffs.size()});
  cplx s = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) s += std::conj(coeffs[k]) * T(k, j) * coeffs[j];
  return s;
}

std::string to_csv(const TruncatedOperator& op) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "# t=%.16e,N=%d,M=%d\nrow,col,re,im\n", op.t, op.N, op.M);
  out += buf;
  for (std::size_t r = 0; r < op.entries.rows(); ++r)
    for (std::size_t c = 0; c < op.entries.cols(); ++c) {
      const cplx v = op.entries(r, c);
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.16e,%.16e\n", r, c, v.real(), v.imag());
      out += buf;
    }
  return out;
}

}  // namespace fockq
