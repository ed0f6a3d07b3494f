#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fockq/matrix.hpp"
#include "fockq/symbol.hpp"

namespace fockq {

/// Power iteration stopped without meeting its tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& msg, double last, double prev) : Error(msg), last_(last), prev_(prev) {}
  double last() const { return last_; }
  double previous() const { return prev_; }

 private:
  double last_;
  double prev_;
};

/// Largest singular value by power iteration on A^*A from the normalized
/// all-ones vector; stops when the Rayleigh quotient changes by < 1e-12
/// relative, at most 1e4 steps. Diagonal matrices return max |a_ii| exactly.
double operator_norm(const CMatrix& a);

/// Full SVD (Eigen JacobiSVD); dimensions up to 512.
double operator_norm_svd(const CMatrix& a);

/// Dense eigen/SVD solve of any size: Hermitian input uses eigenvalues only.
double operator_norm_dense(const CMatrix& a);

/// Dense solve when both dimensions are <= 1024 (power iteration stalls on
/// clustered top singular values); otherwise operator_norm, falling back to
/// operator_norm_dense on NonConvergence.
double operator_norm_robust(const CMatrix& a);

struct SemiCommutator {
  double norm = 0.0;
  /// Radial pairs only: when |d_k| is monotone over k < N, the value at
  /// k = 2^20 (an estimate of the sup over all k).
  std::optional<double> sup_extrapolated;
  double tail_indicator = 0.0;
  std::string method;  // "diagonal" or "gram"
};

/// || T_f T_g - T_fg || on the N-section with the middle projection cut at M.
/// Radial pairs use sup_{k<N} |s_k(f) s_k(g) - s_k(fg)|.
SemiCommutator semi_commutator(const Symbol& f, const Symbol& g, double t, int N, int M);
double semi_commutator_norm(const Symbol& f, const Symbol& g, double t, int N, int M);

struct SweepConfig {
  int basis_dim = 0;  // 0: N(t) = clamp(ceil(n_constant / t), n_min, n_cap)
  std::vector<int> basis_dims;  // per-t override, same length as the t list
  int tail_dim = 0;   // 0: 2N + 32
  double n_constant = 8.0;
  int n_min = 64;
  int n_cap = 4096;
  double threshold = 0.05;
  double tail_tolerance = 1e-10;
  SampleGrid grid{0.0, 4.0, 64, 32};
  bool grid_scales_with_t = false;  // grid radii multiplied by 2 sqrt(t)
  int quad_order = 64;
  int quad_angles = 128;
};

int basis_dim_for(double t, const SweepConfig& cfg);

enum class Verdict { vanishing, non_vanishing, inconclusive };
std::string to_string(Verdict v);

struct SweepPoint {
  double t = 0.0;
  double semi_comm_norm = 0.0;
  double semi_comm_sup = 0.0;  // extrapolated sup when available, else semi_comm_norm
  double hankel_f_bound = 0.0;  // ||H_{conj f}|| on the section
  double hankel_g_bound = 0.0;  // ||H_g|| on the section
  double bmo_f = 0.0;
  double heat_sup = 0.0;
  int N_used = 0;
  int M_used = 0;
  double tail_indicator = 0.0;
  std::string method;
  bool flagged = false;
  std::string error;
};

struct SweepReport {
  std::string f_expr;
  std::string g_expr;
  SweepConfig config;
  std::vector<SweepPoint> points;  // decreasing t
  Verdict verdict = Verdict::inconclusive;
};

/// Points run concurrently; failures are recorded on the point, which is
/// flagged, and the sweep continues.
SweepReport t_sweep(const Symbol& f, const Symbol& g, const std::vector<double>& t_list,
                    const SweepConfig& cfg = {});

/// vanishing: last norm < threshold and strictly decreasing over the final
/// three points; non_vanishing: every norm >= threshold; flagged points make
/// the verdict inconclusive. Unbounded symbols never yield non_vanishing and
/// yield vanishing only when both Hankel bounds also decrease over the final
/// three points.
Verdict sweep_verdict(const std::vector<SweepPoint>& pts, double threshold, bool bounded);

struct NormLimitPoint {
  double t = 0.0;
  double lower = 0.0;  // grid max |f~(t)|
  double upper = 0.0;  // sup_norm_estimate(f)
  double gap = 0.0;
};

struct NormLimitReport {
  std::string f_expr;
  std::vector<NormLimitPoint> points;
  bool lower_monotone = true;  // nondecreasing as t decreases, within 1e-8
};

NormLimitReport norm_limit_sweep(const Symbol& f, const std::vector<double>& t_list, const SampleGrid& grid);

/// Throws unless the list is non-empty, positive and strictly decreasing.
void check_t_list(const std::vector<double>& t_list);

}  // namespace fockq
