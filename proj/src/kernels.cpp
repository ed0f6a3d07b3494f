#include "fockq/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <omp.h>

#include "fockq/gamma_mass.hpp"

namespace fockq {

double CMatrix::max_abs_diff(const CMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
  return m;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  CMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  CMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

CMatrix operator*(std::complex<double> s, const CMatrix& a) {
  CMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

namespace kernels {

namespace {

void check_gemm(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("gemm: inner dimensions differ");
}

double entry_scale(double log_u, int j, int k) {
  return 0.5 * (j + k) * log_u - 0.5 * (log_factorial(j) + log_factorial(k));
}

}  // namespace

cplx heat_point(const Field& field, double t, cplx w, const PolarRule& rule) {
  cplx acc = 0.0;
  const auto& rad = rule.radial;
  const auto& ang = rule.angular;
  for (int n = 0; n < rad.order; ++n) {
    const double r = std::sqrt(4.0 * t * rad.nodes[n]);
    cplx ring = 0.0;
    for (int l = 0; l < ang.order; ++l) ring += field(w - std::polar(r, ang.nodes[l]));
    acc += rad.weights[n] * ring * ang.weights[0];
  }
  return acc;
}

PolarSamples sample_polar(const Field& field, double t, const PolarRule& rule) {
  PolarSamples s;
  s.u = rule.radial.nodes;
  s.weight = rule.radial.weights;
  s.angles = rule.angular.order;
  s.values.resize(s.u.size() * static_cast<std::size_t>(s.angles));
  for (std::size_t n = 0; n < s.u.size(); ++n) {
    const double r = std::sqrt(4.0 * t * s.u[n]);
    for (int l = 0; l < s.angles; ++l)
      s.values[n * s.angles + l] = field(std::polar(r, rule.angular.nodes[l]));
  }
  return s;
}

namespace serial {

CMatrix gemm(const CMatrix& a, const CMatrix& b) {
  check_gemm(a, b);
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

std::vector<cplx> gemv(const CMatrix& a, std::span<const cplx> x) {
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

std::vector<cplx> gemv_adjoint(const CMatrix& a, std::span<const cplx> y) {
  std::vector<cplx> x(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, j)) * y[i];
    x[j] = s;
  }
  return x;
}

std::vector<cplx> heat_field(const Field& field, double t, std::span<const cplx> points,
                             const PolarRule& rule) {
  std::vector<cplx> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) out[p] = heat_point(field, t, points[p], rule);
  return out;
}

CMatrix moment_quadrature(const PolarSamples& s, std::size_t rows, std::size_t cols) {
  CMatrix m(rows, cols);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t j = 0; j < cols; ++j) {
      const int d = static_cast<int>(k) - static_cast<int>(j);
      cplx acc = 0.0;
      for (std::size_t n = 0; n < s.u.size(); ++n) {
        cplx fourier = 0.0;
        for (int l = 0; l < s.angles; ++l)
          fourier += s.values[n * s.angles + l] * std::polar(1.0, -d * two_pi * l / s.angles);
        fourier /= static_cast<double>(s.angles);
        acc += s.weight[n] *
               std::exp(entry_scale(std::log(s.u[n]), static_cast<int>(j), static_cast<int>(k))) * fourier;
      }
      m(k, j) = acc;
    }
  return m;
}

}  // namespace serial

namespace parallel {

CMatrix gemm(const CMatrix& a, const CMatrix& b) {
  check_gemm(a, b);
  const std::size_t n = a.rows(), inner = a.cols(), m = b.cols();
  CMatrix c(n, m);
  // Row-wise i-k-j ordering streams through b; one thread owns each row of c.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    auto crow = c.row(static_cast<std::size_t>(i));
    for (std::size_t k = 0; k < inner; ++k) {
      const cplx aik = a(static_cast<std::size_t>(i), k);
      if (aik == cplx(0.0)) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < m; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

std::vector<cplx> gemv(const CMatrix& a, std::span<const cplx> x) {
  std::vector<cplx> y(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.rows()); ++i) {
    const auto row = a.row(static_cast<std::size_t>(i));
    cplx s = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) s += row[k] * x[k];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

std::vector<cplx> gemv_adjoint(const CMatrix& a, std::span<const cplx> y) {
  const std::size_t cols = a.cols();
  std::vector<cplx> x(cols);
  // Column blocks keep the accumulation order per output fixed.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(cols); ++j) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, static_cast<std::size_t>(j))) * y[i];
    x[static_cast<std::size_t>(j)] = s;
  }
  return x;
}

std::vector<cplx> heat_field(const Field& field, double t, std::span<const cplx> points,
                             const PolarRule& rule) {
  std::vector<cplx> out(points.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(points.size()); ++p) {
    try {
      out[static_cast<std::size_t>(p)] = heat_point(field, t, points[static_cast<std::size_t>(p)], rule);
    } catch (...) {
#pragma omp critical(fockq_heat_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

CMatrix moment_quadrature(const PolarSamples& s, std::size_t rows, std::size_t cols) {
  const std::size_t nr = s.u.size();
  const int dmin = -static_cast<int>(cols) + 1;
  const int dmax = static_cast<int>(rows) - 1;
  const std::size_t nd = static_cast<std::size_t>(dmax - dmin + 1);
  const double two_pi = 2.0 * std::acos(-1.0);

  // fourier[n][d - dmin] = (1/L) sum_l values[n][l] e^{-i d theta_l}
  std::vector<cplx> fourier(nr * nd);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(nr); ++n) {
    for (int d = dmin; d <= dmax; ++d) {
      cplx acc = 0.0;
      for (int l = 0; l < s.angles; ++l)
        acc += s.values[static_cast<std::size_t>(n) * s.angles + l] *
               std::polar(1.0, -d * two_pi * l / s.angles);
      fourier[static_cast<std::size_t>(n) * nd + static_cast<std::size_t>(d - dmin)] =
          acc / static_cast<double>(s.angles);
    }
  }

  std::vector<double> log_u(nr);
  for (std::size_t n = 0; n < nr; ++n) log_u[n] = std::log(s.u[n]);

  CMatrix m(rows, cols);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(rows); ++k) {
    for (std::size_t j = 0; j < cols; ++j) {
      const int d = static_cast<int>(k) - static_cast<int>(j);
      cplx acc = 0.0;
      for (std::size_t n = 0; n < nr; ++n)
        acc += s.weight[n] * std::exp(entry_scale(log_u[n], static_cast<int>(j), static_cast<int>(k))) *
               fourier[n * nd + static_cast<std::size_t>(d - dmin)];
      m(static_cast<std::size_t>(k), j) = acc;
    }
  }
  return m;
}

}  // namespace parallel

void apply_thread_limit_from_env() {
  const char* env = std::getenv("FOCKQ_THREADS");
  if (!env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end != env && *end == '\0' && n > 0) omp_set_num_threads(static_cast<int>(n));
}

}  // namespace kernels
}  // namespace fockq
