#include "fockq/quadrature.hpp"

#include <cmath>
#include <Eigen/Eigenvalues>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace fockq {

namespace {

constexpr double kNewtonEps = 3.0e-15;
constexpr int kMaxNewton = 100;

void check_laguerre(const QuadratureRule& q) {
  const int kmax = std::min(2 * q.order - 1, 20);
  for (int k = 0; k <= kmax; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
    const double exact = std::tgamma(k + 1.0);
    if (std::abs(s - exact) > 1e-12 * exact)
      throw QuadratureError("gauss_laguerre(" + std::to_string(q.order) +
                            "): moment check failed at k=" + std::to_string(k));
  }
}

}  // namespace

QuadratureRule gauss_laguerre(int n) {
  if (n < 1 || n > 160) throw QuadratureError("gauss_laguerre: order must lie in [1, 160]");
  QuadratureRule q{RuleKind::laguerre, n, std::vector<double>(n), std::vector<double>(n)};
  // Golub-Welsch eigenvalues seed a Newton polish on L_n; weights use
  // w_i = -1 / (n L_n'(x_i) L_{n-1}(x_i)), which keeps tiny weights relatively accurate.
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < n; ++i) sub(i) = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw QuadratureError("gauss_laguerre: eigenvalue solve failed");
  // The recurrence runs in long double so nodes and weights land within an
  // ulp of their double values.
  for (int i = 0; i < n; ++i) {
    long double z = es.eigenvalues()(i);
    long double p1 = 0.0L, p2 = 0.0L, pp = 0.0L, step = 0.0L;
    int it = 0;
    for (; it < kMaxNewton; ++it) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (int j = 0; j < n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1 - z) * p2 - j * p3) / (j + 1);
      }
      pp = (n * p1 - n * p2) / z;
      const long double z1 = z;
      z = z1 - p1 / pp;
      step = std::fabs(z - z1);
      if (step <= kNewtonEps * 1e-3L * std::fabs(z)) break;
    }
    // Large nodes can stall a few ulps short of the strict tolerance.
    if (it == kMaxNewton && step > 1e-12L * std::fabs(z))
      throw QuadratureError("gauss_laguerre: Newton iteration did not converge");
    q.nodes[i] = static_cast<double>(z);
    q.weights[i] = static_cast<double>(-1.0L / (pp * n * p2));
  }
  check_laguerre(q);
  return q;
}

QuadratureRule gauss_hermite(int n) {
  if (n < 1 || n > 400) throw QuadratureError("gauss_hermite: order must lie in [1, 400]");
  QuadratureRule q{RuleKind::hermite, n, std::vector<double>(n), std::vector<double>(n)};
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * q.nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * q.nodes[1];
    else
      z = 2.0 * z - q.nodes[i - 2];
    double p1 = 0.0, p2 = 0.0, pp = 0.0;
    int it = 0;
    for (; it < kMaxNewton; ++it) {
      p1 = pim4;
      p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kNewtonEps * std::max(1.0, std::abs(z))) break;
    }
    if (it == kMaxNewton) throw QuadratureError("gauss_hermite: Newton iteration did not converge");
    q.nodes[i] = z;
    q.nodes[n - 1 - i] = -z;
    q.weights[i] = 2.0 / (pp * pp);
    q.weights[n - 1 - i] = q.weights[i];
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 1000) throw QuadratureError("gauss_legendre: order must lie in [1, 1000]");
  QuadratureRule q{RuleKind::legendre, n, std::vector<double>(n), std::vector<double>(n)};
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    int it = 0;
    for (; it < kMaxNewton; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kNewtonEps) break;
    }
    if (it == kMaxNewton) throw QuadratureError("gauss_legendre: Newton iteration did not converge");
    q.nodes[i] = -z;
    q.nodes[n - 1 - i] = z;
    q.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    q.weights[n - 1 - i] = q.weights[i];
  }
  return q;
}

QuadratureRule angular_trapezoid(int points) {
  if (points < 1) throw QuadratureError("angular_trapezoid: need at least one point");
  QuadratureRule q{RuleKind::angular, points, std::vector<double>(points),
                   std::vector<double>(points, 1.0 / points)};
  for (int l = 0; l < points; ++l) q.nodes[l] = 2.0 * std::numbers::pi * l / points;
  return q;
}

PolarRule PolarRule::make(int radial_order, int angles) {
  return PolarRule{gauss_laguerre(radial_order), angular_trapezoid(angles)};
}

const PolarRule& default_polar_rule() {
  static const PolarRule rule = PolarRule::make(64, 128);
  return rule;
}

const PolarRule& cached_polar_rule(int radial_order, int angles) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PolarRule> cache;
  const std::lock_guard lock(mu);
  const auto key = std::make_pair(radial_order, angles);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, PolarRule::make(radial_order, angles)).first;
  return it->second;
}

}  // namespace fockq
