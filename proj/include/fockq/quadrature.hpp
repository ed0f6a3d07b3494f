#pragma once

#include <vector>

#include "fockq/symbol.hpp"

namespace fockq {

class QuadratureError : public Error {
 public:
  using Error::Error;
};

enum class RuleKind { laguerre, hermite, legendre, angular };

/// Nodes and weights of a one-dimensional rule.
///   laguerre: int_0^inf g(u) e^{-u} du
///   hermite:  int_R g(x) e^{-x^2} dx
///   legendre: int_{-1}^{1} g(x) dx
///   angular:  (1/2pi) int_0^{2pi} g(theta) dtheta, equispaced trapezoid
struct QuadratureRule {
  RuleKind kind;
  int order;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Laguerre rule; construction checks sum w_i u_i^k = k! for
/// k <= min(2*order - 1, 20) to relative 1e-12 and throws otherwise.
QuadratureRule gauss_laguerre(int order);
QuadratureRule gauss_hermite(int order);
QuadratureRule gauss_legendre(int order);
QuadratureRule angular_trapezoid(int points);

/// Radial Gauss-Laguerre in u = |z|^2 / (4t) composed with an angular
/// trapezoid. Integrates against the Gaussian probability measure mu_t.
struct PolarRule {
  QuadratureRule radial;
  QuadratureRule angular;

  static PolarRule make(int radial_order = 64, int angles = 128);
};

/// Shared default rule (order 64 x 128 angles); built once, read-only.
const PolarRule& default_polar_rule();

/// Process-wide cache of polar rules keyed by (radial order, angles).
const PolarRule& cached_polar_rule(int radial_order, int angles);

}  // namespace fockq
