#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fockq/matrix.hpp"
#include "fockq/quadrature.hpp"

namespace fockq::kernels {

using Field = std::function<cplx(cplx)>;

/// Gaussian average of z -> field(w - z) under mu_t with the polar rule.
cplx heat_point(const Field& field, double t, cplx w, const PolarRule& rule);

/// Samples field(sqrt(4 t u_n) e^{i theta_l}) on the polar rule and returns the
/// (rows x cols) moment matrix  M(k, j) = int field e_j conj(e_k) d mu_t.
struct PolarSamples {
  std::vector<double> u;       // radial nodes
  std::vector<double> weight;  // radial weights
  int angles = 0;
  std::vector<cplx> values;  // u.size() x angles, row-major
};
PolarSamples sample_polar(const Field& field, double t, const PolarRule& rule);

// Plain loops: the reference the parallel versions are tested against.
namespace serial {

CMatrix gemm(const CMatrix& a, const CMatrix& b);
std::vector<cplx> gemv(const CMatrix& a, std::span<const cplx> x);
std::vector<cplx> gemv_adjoint(const CMatrix& a, std::span<const cplx> y);
std::vector<cplx> heat_field(const Field& field, double t, std::span<const cplx> points,
                             const PolarRule& rule);
CMatrix moment_quadrature(const PolarSamples& s, std::size_t rows, std::size_t cols);

}  // namespace serial

// OpenMP versions. Each output element is produced by exactly one thread with
// a fixed accumulation order, so results do not depend on the thread count.
namespace parallel {

CMatrix gemm(const CMatrix& a, const CMatrix& b);
std::vector<cplx> gemv(const CMatrix& a, std::span<const cplx> x);
std::vector<cplx> gemv_adjoint(const CMatrix& a, std::span<const cplx> y);
std::vector<cplx> heat_field(const Field& field, double t, std::span<const cplx> points,
                             const PolarRule& rule);
CMatrix moment_quadrature(const PolarSamples& s, std::size_t rows, std::size_t cols);

}  // namespace parallel

/// Worker cap from FOCKQ_THREADS (unset or invalid: OpenMP default).
void apply_thread_limit_from_env();

}  // namespace fockq::kernels
