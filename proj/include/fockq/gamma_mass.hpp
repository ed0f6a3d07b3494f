#pragma once

namespace fockq {

/// log(k!)
double log_factorial(int k);

/// Regularized incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Probability that a Gamma(k+1, 1) variable lands in [lo, hi):
///   (1/k!) int_lo^hi u^k e^{-u} du.
/// hi may be +inf. Picks P or Q differences so that neither side cancels.
double gamma_shell_mass(int k, double lo, double hi);

/// Poisson probability e^{-nu} nu^j / j!, evaluated in log space.
double poisson_weight(int j, double nu);

/// Index range [lo, hi) outside which the Poisson(nu) mass is below ~1e-17.
struct IndexRange {
  int lo;
  int hi;
};
IndexRange poisson_support(double nu);

}  // namespace fockq
