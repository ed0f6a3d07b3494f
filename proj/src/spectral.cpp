#include "fockq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <Eigen/Dense>

#include "fockq/fock.hpp"
#include "fockq/heat.hpp"
#include "fockq/kernels.hpp"
#include "fockq/radial.hpp"

namespace fockq {

namespace {

constexpr double kPowerTol = 1e-12;
constexpr int kPowerMaxIter = 10000;
constexpr int kExtrapolationIndex = 1 << 20;
constexpr std::size_t kDenseLimit = 1024;

using EigenRowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXcd to_eigen(const CMatrix& a) {
  return Eigen::Map<const EigenRowMajor>(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                                         static_cast<Eigen::Index>(a.cols()));
}

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (auto x : v) s += std::norm(x);
  return s;
}

bool is_hermitian(const CMatrix& a) {
  if (a.rows() != a.cols()) return false;
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      scale = std::max(scale, std::abs(a(i, j)));
      diff = std::max(diff, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  return diff <= 1e-13 * std::max(scale, 1e-300);
}

/// Difference sequence s_k(f) s_k(g) - s_k(fg) on [k0, k1).
std::vector<cplx> diagonal_defect(const Symbol& f, const Symbol& g, double t, int k0, int k1) {
  const auto sf = radial_spectrum(f, t, k0, k1);
  const auto sg = radial_spectrum(g, t, k0, k1);
  const auto sfg = radial_spectrum(f * g, t, k0, k1);
  std::vector<cplx> d(sf.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = sf[k] * sg[k] - sfg[k];
  return d;
}

bool strictly_decreasing_tail(const std::vector<double>& v) {
  if (v.size() < 3) return false;
  const std::size_t n = v.size();
  return v[n - 3] > v[n - 2] && v[n - 2] > v[n - 1];
}

}  // namespace

double operator_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (a.is_diagonal()) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) m = std::max(m, std::abs(a(i, i)));
    return m;
  }
  std::vector<cplx> x(a.cols(), cplx(1.0 / std::sqrt(static_cast<double>(a.cols()))));
  double prev = -1.0, rho = 0.0;
  for (int it = 0; it < kPowerMaxIter; ++it) {
    const auto y = kernels::parallel::gemv(a, x);
    rho = norm2(y);  // Rayleigh quotient of A^*A at unit x
    auto z = kernels::parallel::gemv_adjoint(a, y);
    const double nz = std::sqrt(norm2(z));
    if (nz == 0.0) {
      if (it == 0) throw NonConvergence("operator_norm: start vector lies in the null space", 0.0, 0.0);
      return std::sqrt(rho);
    }
    if (prev >= 0.0 && std::abs(rho - prev) <= kPowerTol * rho) return std::sqrt(rho);
    prev = rho;
    for (auto& v : z) v /= nz;
    x = std::move(z);
  }
  throw NonConvergence("operator_norm: power iteration did not converge", std::sqrt(rho), std::sqrt(prev));
}

double operator_norm_svd(const CMatrix& a) {
  if (a.rows() > 512 || a.cols() > 512) throw Error("operator_norm_svd: dimensions above 512");
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

double operator_norm_dense(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (is_hermitian(a)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

double operator_norm_robust(const CMatrix& a) {
  if (!a.is_diagonal() && a.rows() <= kDenseLimit && a.cols() <= kDenseLimit) return operator_norm_dense(a);
  try {
    return operator_norm(a);
  } catch (const NonConvergence&) {
    return operator_norm_dense(a);
  }
}

SemiCommutator semi_commutator(const Symbol& f, const Symbol& g, double t, int N, int M) {
  if (!(t > 0.0)) throw Error("semi_commutator: t must be positive");
  if (N < 1 || M < N) throw Error("semi_commutator: need 1 <= N <= M");
  SemiCommutator out;
  if (is_radial(f) && is_radial(g)) {
    out.method = "diagonal";
    const auto d = diagonal_defect(f, g, t, 0, N);
    bool up = true, down = true;
    for (std::size_t k = 0; k < d.size(); ++k) {
      out.norm = std::max(out.norm, std::abs(d[k]));
      if (k > 0) {
        up = up && std::abs(d[k]) >= std::abs(d[k - 1]);
        down = down && std::abs(d[k]) <= std::abs(d[k - 1]);
      }
    }
    if (up && N > 1) {
      const auto far = diagonal_defect(f, g, t, kExtrapolationIndex, kExtrapolationIndex + 1);
      out.sup_extrapolated = std::max(out.norm, std::abs(far[0]));
    } else if (down) {
      out.sup_extrapolated = out.norm;
    }
    return out;
  }
  out.method = "gram";
  const auto gram = hankel_gram(f, g, t, N, M);
  out.tail_indicator = gram.tail_indicator;
  out.norm = operator_norm_robust(gram.entries);
  return out;
}

double semi_commutator_norm(const Symbol& f, const Symbol& g, double t, int N, int M) {
  return semi_commutator(f, g, t, N, M).norm;
}

int basis_dim_for(double t, const SweepConfig& cfg) {
  if (cfg.basis_dim > 0) return cfg.basis_dim;
  const double n = std::ceil(cfg.n_constant / t);
  return static_cast<int>(std::clamp(n, static_cast<double>(cfg.n_min), static_cast<double>(cfg.n_cap)));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::vanishing:
      return "vanishing";
    case Verdict::non_vanishing:
      return "non_vanishing";
    case Verdict::inconclusive:
      break;
  }
  return "inconclusive";
}

void check_t_list(const std::vector<double>& t_list) {
  if (t_list.empty()) throw Error("t list is empty");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] > 0.0) || !std::isfinite(t_list[i])) throw Error("t list entries must be positive");
    if (i > 0 && !(t_list[i] < t_list[i - 1])) throw Error("t list must be strictly decreasing");
  }
}

Verdict sweep_verdict(const std::vector<SweepPoint>& pts, double threshold, bool bounded) {
  if (pts.empty()) return Verdict::inconclusive;
  for (const auto& p : pts)
    if (p.flagged) return Verdict::inconclusive;
  std::vector<double> semi, hf, hg;
  for (const auto& p : pts) {
    semi.push_back(p.semi_comm_norm);
    hf.push_back(p.hankel_f_bound);
    hg.push_back(p.hankel_g_bound);
  }
  if (semi.back() < threshold && strictly_decreasing_tail(semi)) {
    if (bounded || (strictly_decreasing_tail(hf) && strictly_decreasing_tail(hg))) return Verdict::vanishing;
    return Verdict::inconclusive;
  }
  if (bounded && std::all_of(semi.begin(), semi.end(), [&](double v) { return v >= threshold; }))
    return Verdict::non_vanishing;
  return Verdict::inconclusive;
}

SweepReport t_sweep(const Symbol& f, const Symbol& g, const std::vector<double>& t_list, const SweepConfig& cfg) {
  check_t_list(t_list);
  if (!cfg.basis_dims.empty() && cfg.basis_dims.size() != t_list.size())
    throw Error("t_sweep: per-t basis dimensions must match the t list");
  SweepReport rep;
  rep.f_expr = to_string(f);
  rep.g_expr = to_string(g);
  rep.config = cfg;
  rep.points.resize(t_list.size());
  const PolarRule& rule = cached_polar_rule(cfg.quad_order, cfg.quad_angles);
  const Symbol fbar = conj(f), gbar = conj(g);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(t_list.size()); ++i) {
    SweepPoint& p = rep.points[static_cast<std::size_t>(i)];
    p.t = t_list[static_cast<std::size_t>(i)];
    try {
      p.N_used = cfg.basis_dims.empty() ? basis_dim_for(p.t, cfg) : cfg.basis_dims.at(static_cast<std::size_t>(i));
      p.M_used = cfg.tail_dim > 0 ? cfg.tail_dim : 2 * p.N_used + 32;
      if (p.N_used > 4096) throw Error("basis dimension above 4096");
      if (p.M_used < p.N_used) throw Error("tail dimension below basis dimension");

      const auto sc = semi_commutator(f, g, p.t, p.N_used, p.M_used);
      p.semi_comm_norm = sc.norm;
      p.semi_comm_sup = sc.sup_extrapolated.value_or(sc.norm);
      p.method = sc.method;
      // ||H_{conj f}||^2 = ||(H_{conj f})^* H_{conj f}|| = ||T_{f conj f} - T_f T_{conj f}||.
      const auto hf = semi_commutator(f, fbar, p.t, p.N_used, p.M_used);
      const auto hg = semi_commutator(gbar, g, p.t, p.N_used, p.M_used);
      p.hankel_f_bound = std::sqrt(hf.norm);
      p.hankel_g_bound = std::sqrt(hg.norm);
      p.tail_indicator = std::max({sc.tail_indicator, hf.tail_indicator, hg.tail_indicator});

      SampleGrid grid = cfg.grid;
      if (cfg.grid_scales_with_t) {
        grid.r_min *= 2.0 * std::sqrt(p.t);
        grid.r_max *= 2.0 * std::sqrt(p.t);
      }
      if (is_radial(f)) grid.n_angular = 1;
      const auto osc = oscillation_report(f, p.t, grid.points(), rule);
      p.bmo_f = osc.bmo_estimate;
      p.heat_sup = osc.heat_sup;
      if (p.tail_indicator > cfg.tail_tolerance) {
        p.flagged = true;
        p.error = "tail indicator above tolerance; increase the tail dimension";
      }
    } catch (const std::exception& e) {
      p.flagged = true;
      p.error = e.what();
    }
  }
  const bool bounded = sup_bound(f).has_value() && sup_bound(g).has_value();
  rep.verdict = sweep_verdict(rep.points, cfg.threshold, bounded);
  return rep;
}

NormLimitReport norm_limit_sweep(const Symbol& f, const std::vector<double>& t_list, const SampleGrid& grid) {
  check_t_list(t_list);
  NormLimitReport rep;
  rep.f_expr = to_string(f);
  const auto pts = grid.points();
  const double upper = sup_norm_estimate(f, grid);
  for (double t : t_list) {
    const auto field = heat_field(f, t, pts);
    double lower = 0.0;
    for (auto v : field.values) lower = std::max(lower, std::abs(v));
    if (!rep.points.empty() && lower < rep.points.back().lower - 1e-8) rep.lower_monotone = false;
    rep.points.push_back({t, lower, upper, upper - lower});
  }
  return rep;
}

}  // namespace fockq
