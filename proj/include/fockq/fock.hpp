#pragma once

#include <string>
#include <vector>

#include "fockq/matrix.hpp"
#include "fockq/quadrature.hpp"
#include "fockq/symbol.hpp"

namespace fockq {

class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Orthonormal monomials e_k(z) = z^k / sqrt((4t)^k k!), 0 <= k < N.
class FockBasis {
 public:
  /// Checks int |e_k|^2 d mu_t = 1 by quadrature for k < min(N, 30) to 1e-10.
  FockBasis(double t, int N);

  double t() const { return t_; }
  int dim() const { return n_; }
  cplx eval(int k, cplx z) const;

 private:
  double t_;
  int n_;
};

struct TruncatedOperator {
  double t = 0.0;
  int N = 0;
  int M = 0;
  CMatrix entries;
};

/// entry (k, j) = <f e_j, e_k>_t for k < rows, j < cols.
///
/// Each normal-form family has its own exact path: monomial-phase terms obey
/// the selection rule k - j = a - b, plane waves are scaled displacement
/// operators built by a three-term recurrence, shells are diagonal with
/// incomplete-gamma entries. Symbols without a normal form fall back to
/// moment_matrix_quadrature, which is checked against the doubled rule.
CMatrix moment_matrix(const Symbol& f, double t, int rows, int cols);

/// Generic polar quadrature of the moments (no closed forms). Accurate while
/// (rows + cols) stays well below the radial order.
CMatrix moment_matrix_quadrature(const Symbol& f, double t, int rows, int cols,
                                 const PolarRule& rule = default_polar_rule());

/// s_0..s_{N-1}; throws for non-radial f.
std::vector<cplx> toeplitz_diagonal(const Symbol& f, double t, int N);

/// N x N section of T_f; diagonal fast path for radial f.
TruncatedOperator toeplitz_matrix(const Symbol& f, double t, int N);

struct HankelGram {
  CMatrix entries;  // N x N: <fg e_j, e_k> - sum_{m<M} <g e_j, e_m><f e_m, e_k>
  int N = 0;
  int M = 0;
  double tail_indicator = 0.0;  // max_j sum_{M <= m < M+16} |<g e_j, e_m>|^2
};

/// Gram matrix (H_{conj f})^* H_g on the first N basis vectors with the
/// middle projection truncated at M.
HankelGram hankel_gram(const Symbol& f, const Symbol& g, double t, int N, int M);

/// Coefficients of the normalized reproducing kernel at w,
///   c_k = e^{-|w|^2/8t} conj(w)^k / sqrt((4t)^k k!),
/// cut where sum_{k>=n} |c_k|^2 < 1e-12. Throws TruncationError (with the
/// needed size) when that takes more than max_dim terms.
std::vector<cplx> coherent_state_coeffs(double t, cplx w, int max_dim = 4096);

/// sqrt(||f h||^2 - sum_{m<M} |<f h, e_m>|^2) for h = sum c_k e_k.
/// Throws QuadratureError when the radicand is below -1e-10.
double hankel_norm_on_state(const Symbol& f, double t, const std::vector<cplx>& coeffs, int M);

struct OperatorPair {
  TruncatedOperator lhs;
  TruncatedOperator rhs;
};

/// (T_f at weight t, T_{f(. 2 sqrt t)} at weight 1/4).
OperatorPair scaling_covariance_check(const Symbol& f, double t, int N);

struct MoHankel {
  double mo;
  double bound;
};

/// MO(f)(w) against ||H_f k_w||^2 + ||H_{conj f} k_w||^2 (projection cut at M;
/// M <= 0 selects 2n + 32 for the n coherent-state coefficients).
MoHankel mo_vs_hankel_check(const Symbol& f, double t, cplx w, int M = 0);

/// <T k_w, k_w> from a matrix section and the coherent-state coefficients.
cplx berezin_from_matrix(const CMatrix& T, const std::vector<cplx>& coeffs);

/// "# t=<t>,N=<N>,M=<M>" then "row,col,re,im" rows.
std::string to_csv(const TruncatedOperator& op);

}  // namespace fockq
