#include <doctest.h>

#include <cmath>

#include "fockq/gamma_mass.hpp"
#include "fockq/normal_form.hpp"
#include "fockq/quadrature.hpp"
#include "fockq/radial.hpp"
#include "oracles.hpp"

using namespace fockq;

TEST_SUITE("special_functions") {

TEST_CASE("log factorial matches lgamma") {
  for (int k : {0, 1, 2, 10, 170, 1000, 100000})
    CHECK(log_factorial(k) == doctest::Approx(std::lgamma(k + 1.0)).epsilon(1e-14));
}

TEST_CASE("incomplete gamma against the series/continued-fraction oracle") {
  for (double a : {1.0, 2.0, 5.0, 30.0, 200.0, 1000.0})
    for (double x : {0.01, 0.5, 1.0, 4.0, 29.0, 31.0, 180.0, 220.0, 1000.0}) {
      const double p = gamma_p(a, x), q = gamma_q(a, x);
      CHECK(std::abs(p - oracle::gamma_p(a, x)) <= 1e-13);
      CHECK(std::abs(p + q - 1.0) <= 1e-15);
    }
}

TEST_CASE("shell masses are nonnegative and sum to one") {
  for (int k : {0, 3, 50, 400}) {
    const double edges[] = {0.0, 0.5 * k, 1.0 * k + 1, 1.5 * k + 3, INFINITY};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double m = gamma_shell_mass(k, edges[i], edges[i + 1]);
      CHECK(m >= 0.0);
      total += m;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("tail shell masses keep relative accuracy") {
  // Q(6, 200) = e^{-200} sum_{j<6} 200^j / j!; a P difference would cancel to 0.
  double series = 0.0, term = 1.0;
  for (int j = 0; j < 6; ++j) {
    series += term;
    term *= 200.0 / (j + 1);
  }
  const double m = gamma_shell_mass(5, 200.0, INFINITY);
  CHECK(m > 0.0);
  CHECK(std::log(m) == doctest::Approx(-200.0 + std::log(series)).epsilon(1e-12));
}

TEST_CASE("Poisson weights") {
  for (double nu : {0.1, 3.0, 250.0, 5000.0}) {
    const auto r = poisson_support(nu);
    double s = 0.0, mean = 0.0;
    for (int j = r.lo; j < r.hi; ++j) {
      s += poisson_weight(j, nu);
      mean += j * poisson_weight(j, nu);
    }
    // log-space weights carry ~ nu * eps relative error
    CHECK(s == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(mean == doctest::Approx(nu).epsilon(1e-11));
  }
}

TEST_CASE("Gauss-Laguerre integrates u^k e^{-u} exactly") {
  for (int order : {8, 32, 64, 128, 160}) {
    const auto q = gauss_laguerre(order);
    REQUIRE(q.nodes.size() == static_cast<std::size_t>(order));
    for (int k = 0; k <= std::min(2 * order - 1, 25); ++k) {
      long double s = 0.0L;
      for (int i = 0; i < order; ++i) s += q.weights[i] * std::pow(static_cast<long double>(q.nodes[i]), k);
      CHECK(static_cast<double>(s) == doctest::Approx(std::tgamma(k + 1.0)).epsilon(1e-12));
    }
  }
  CHECK_THROWS(gauss_laguerre(0));
}

TEST_CASE("Gauss-Hermite and Gauss-Legendre moments") {
  const auto h = gauss_hermite(40);
  for (int k = 0; k <= 20; k += 2) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) s += h.weights[i] * std::pow(h.nodes[i], k);
    CHECK(s == doctest::Approx(std::tgamma(k / 2.0 + 0.5)).epsilon(1e-12));
  }
  const auto l = gauss_legendre(20);
  for (int k = 0; k <= 20; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < l.nodes.size(); ++i) s += l.weights[i] * std::pow(l.nodes[i], k);
    CHECK(s == doctest::Approx(k % 2 ? 0.0 : 2.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("angular trapezoid averages trigonometric polynomials exactly") {
  const auto a = angular_trapezoid(16);
  for (int m = 0; m < 16; ++m) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.nodes.size(); ++i) s += a.weights[i] * std::exp(cplx(0.0, m * a.nodes[i]));
    CHECK(std::abs(s - (m == 0 ? 1.0 : 0.0)) < 1e-14);
  }
}

TEST_CASE("polar rule integrates against mu_t") {
  const auto& rule = default_polar_rule();
  CHECK(&cached_polar_rule(32, 16) == &cached_polar_rule(32, 16));
  double s = 0.0;
  for (double w : rule.radial.weights) s += w;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("radial spectra against incomplete-gamma and closed-form oracles") {
  SUBCASE("disk indicator") {
    for (double t : {1.0, 0.25, 0.01}) {
      const auto s = radial_spectrum(disk_indicator(1.0), t, 0, 200);
      for (int k = 0; k < 200; ++k) CHECK(std::abs(s[k] - oracle::gamma_p(k + 1.0, 1.0 / (4 * t))) < 1e-13);
    }
  }
  SUBCASE("dyadic shells") {
    std::vector<double> breaks;
    std::vector<cplx> values;
    oracle::dyadic_shells(24, breaks, values);
    for (double t : {0.25, 1.0 / 64}) {
      const auto s = radial_spectrum(radial_dyadic(24), t, 0, 300);
      for (int k = 0; k < 300; k += 7) CHECK(std::abs(s[k] - oracle::shell_moment(breaks, values, t, k)) < 1e-12);
    }
  }
  SUBCASE("quadratic phase") {
    // (1/k!) int u^k e^{-u(1 - 4 t alpha i)} du = (1 - 4 t alpha i)^{-(k+1)}
    const double t = 0.3, alpha = -0.8;
    const auto s = radial_spectrum(quadratic_phase(alpha), t, 0, 100);
    for (int k = 0; k < 100; ++k)
      CHECK(std::abs(s[k] - std::pow(cplx(1.0, -4 * t * alpha), -(k + 1.0))) < 1e-13);
  }
  SUBCASE("|z|^2 has diagonal 4t(k+1)") {
    const auto s = radial_spectrum(abs_z_squared(), 0.2, 10, 20);
    for (int k = 10; k < 20; ++k) CHECK(std::abs(s[k - 10] - 0.8 * (k + 1)) < 1e-12);
  }
  SUBCASE("numeric path for sampled profiles") {
    // gauss profile e^{-r^2}: (1/k!) int u^k e^{-u(1+4t)} du = (1+4t)^{-(k+1)}
    const double t = 0.5;
    const auto s = radial_spectrum(*named_radial_profile("gauss"), t, 0, 60);
    for (int k = 0; k < 60; ++k) CHECK(std::abs(s[k] - std::pow(1.0 + 4 * t, -(k + 1.0))) < 1e-11);
  }
}

TEST_CASE("radial heat equals the Poisson mixture") {
  const auto nf = normal_form(disk_indicator(1.0));
  REQUIRE(nf.has_value());
  for (double t : {0.5, 0.05})
    CHECK(std::abs(radial_heat(*nf, t, 0.0) - (1.0 - std::exp(-1.0 / (4 * t)))) < 1e-14);
  // (|z|^2)~(w) = |w|^2 + 4t
  const auto nq = normal_form(abs_z_squared());
  CHECK(std::abs(radial_heat(*nq, 0.3, cplx(1.0, 2.0)) - (5.0 + 1.2)) < 1e-12);
}

}
