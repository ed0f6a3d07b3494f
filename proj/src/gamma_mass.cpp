#include "fockq/gamma_mass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

namespace fockq {

double log_factorial(int k) { return std::lgamma(k + 1.0); }

double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double gamma_shell_mass(int k, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const double a = k + 1.0;
  // Below the mode the lower tail P is small and accurate, above it Q is.
  if (hi <= a) return gamma_p(a, hi) - gamma_p(a, lo);
  if (lo >= a) return gamma_q(a, lo) - gamma_q(a, hi);
  return 1.0 - gamma_p(a, lo) - gamma_q(a, hi);
}

double poisson_weight(int j, double nu) {
  if (nu == 0.0) return j == 0 ? 1.0 : 0.0;
  return std::exp(j * std::log(nu) - nu - log_factorial(j));
}

IndexRange poisson_support(double nu) {
  if (nu == 0.0) return {0, 1};
  const double sd = std::sqrt(nu);
  const int lo = std::max(0, static_cast<int>(std::floor(nu - 10.0 * sd - 10.0)));
  const int hi = static_cast<int>(std::ceil(nu + 10.0 * sd + 25.0));
  return {lo, hi};
}

}  // namespace fockq
