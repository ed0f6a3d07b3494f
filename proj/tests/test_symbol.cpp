#include <doctest.h>

#include <random>

#include "fockq/normal_form.hpp"
#include "fockq/parse.hpp"
#include "fockq/symbol.hpp"

using namespace fockq;

TEST_SUITE("symbol_core") {

TEST_CASE("elementary symbols evaluate pointwise") {
  const cplx z(0.3, -1.2);
  CHECK(eval(coord_z(), z) == z);
  CHECK(eval(coord_zbar(), z) == std::conj(z));
  CHECK(std::abs(eval(quadratic_phase(1.0), z) - std::exp(cplx(0.0, std::norm(z)))) < 1e-15);
  const cplx xi(1.0, 0.5);
  CHECK(std::abs(eval(plane_wave(xi), z) - std::exp(cplx(0.0, (z * std::conj(xi)).real()))) < 1e-15);
  CHECK(std::abs(eval(abs_z_squared(), z) - std::norm(z)) < 1e-15);
  CHECK(std::abs(eval(real_part(coord_z()), z) - z.real()) < 1e-15);
  CHECK(eval(translate(coord_z(), cplx(1.0, 1.0)), z) == cplx(1.0, 1.0) - z);
  CHECK(eval(scale(coord_z(), 2.0), z) == 2.0 * z);
}

TEST_CASE("dyadic counterexample takes the documented shell values") {
  const Symbol f = radial_dyadic(24);
  CHECK(eval(f, 3.0) == cplx(-1.0));
  CHECK(eval(f, 0.3) == cplx(1.0));
  CHECK(eval(f, 1.5) == cplx(1.0));
  CHECK(eval(f, cplx(0.0, 2.5)) == cplx(-1.0));
  CHECK(eval(f, 0.0) == cplx(0.0));
  CHECK(is_radial(f));
  CHECK(sup_bound(f).value() == doctest::Approx(1.0));
  CHECK_THROWS_AS(radial_dyadic(0), Error);
}

TEST_CASE("halving the argument flips the dyadic sign") {
  const Symbol f = radial_dyadic(24), half = scale(f, 0.5), quarter = scale(f, 0.25);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lr(std::log(1e-6), std::log(1e6)), th(0.0, 2.0 * M_PI);
  for (int i = 0; i < 2000; ++i) {
    const cplx z = std::polar(std::exp(lr(rng)), th(rng));
    REQUIRE(eval(half, z) == -eval(f, z));
    REQUIRE(eval(quarter, z) == eval(f, z));
  }
}

TEST_CASE("disk indicator") {
  const Symbol d = disk_indicator(1.0);
  CHECK(eval(d, 0.5) == cplx(1.0));
  CHECK(eval(d, cplx(0.0, 1.5)) == cplx(0.0));
  CHECK(eval(d, 0.0) == cplx(1.0));
  CHECK_THROWS_AS(disk_indicator(-1.0), Error);
}

TEST_CASE("sup bounds") {
  CHECK(sup_bound(quadratic_phase(2.0)).value() == doctest::Approx(1.0));
  CHECK(sup_bound(plane_wave(1.0) * constant(3.0)).value() == doctest::Approx(3.0));
  CHECK_FALSE(sup_bound(coord_z()).has_value());
  CHECK_FALSE(sup_bound(coord_z() * quadratic_phase(1.0)).has_value());
}

TEST_CASE("radiality detection") {
  CHECK(is_radial(quadratic_phase(1.0)));
  CHECK(is_radial(abs_z_squared()));
  CHECK_FALSE(is_radial(coord_z()));
  CHECK_FALSE(is_radial(plane_wave(1.0)));
  CHECK(is_constant(constant(2.0) * constant(cplx(0, 1))));
}

TEST_CASE("parser accepts the documented grammar") {
  CHECK(to_string(parse_symbol("phase(1)")) == to_string(quadratic_phase(1.0)));
  const Symbol m = parse_symbol("conj(z)*z");
  const cplx z(1.5, -0.7);
  CHECK(std::abs(eval(m, z) - std::norm(z)) < 1e-14);
  CHECK(to_string(parse_symbol("radial_dyadic(24)")) == "radial_dyadic(24)");
  CHECK(std::abs(eval(parse_symbol("planewave(1+0i)"), z) - eval(plane_wave(1.0), z)) < 1e-15);
  CHECK(std::abs(eval(parse_symbol("phase(-2*0.5)"), z) - eval(quadratic_phase(-1.0), z)) < 1e-15);
  CHECK(std::abs(eval(parse_symbol("z - 2*zbar + 3i"), z) - (z - 2.0 * std::conj(z) + cplx(0, 3))) < 1e-14);
  CHECK(std::abs(eval(parse_symbol("sampled(gauss)"), z) - std::exp(-std::norm(z))) < 1e-15);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_symbol("phase(1) + * z");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 11);
  }
  CHECK_THROWS_AS(parse_symbol("phase(1"), ParseError);
  CHECK_THROWS_AS(parse_symbol("unknown(3)"), ParseError);
  CHECK_THROWS_AS(parse_symbol("sampled(nope)"), ParseError);
  CHECK_THROWS_AS(parse_symbol(""), ParseError);
}

TEST_CASE("property: printing and reparsing reproduces the symbol") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::function<Symbol(int)> random_tree = [&](int depth) -> Symbol {
    const int k = depth <= 0 ? pick(rng) % 5 : pick(rng);
    switch (k) {
      case 0: return coord_z();
      case 1: return coord_zbar();
      case 2: return quadratic_phase(u(rng));
      case 3: return plane_wave(cplx(u(rng), u(rng)));
      case 4: return constant(cplx(u(rng), u(rng)));
      case 5: return random_tree(depth - 1) + random_tree(depth - 1);
      case 6: return random_tree(depth - 1) * random_tree(depth - 1);
      case 7: return conj(random_tree(depth - 1));
      case 8: return scale(random_tree(depth - 1), 0.5 + std::abs(u(rng)));
      default: return translate(random_tree(depth - 1), cplx(u(rng), u(rng)));
    }
  };
  for (int i = 0; i < 300; ++i) {
    const Symbol f = random_tree(3);
    const std::string text = to_string(f);
    const Symbol g = parse_symbol(text);
    REQUIRE(to_string(g) == text);
    const cplx z(u(rng), u(rng));
    REQUIRE(std::abs(eval(f, z) - eval(g, z)) <= 1e-12 * (1.0 + std::abs(eval(f, z))));
  }
}

TEST_CASE("property: normal forms evaluate like their symbols") {
  const std::vector<Symbol> symbols = {
      coord_z() * coord_zbar() * quadratic_phase(0.7),
      plane_wave(cplx(1.0, -0.5)) * plane_wave(2.0) + coord_z(),
      conj(radial_dyadic(4)) * constant(2.0) + abs_z_squared(),
      real_part(coord_z() * coord_z()),
      scale(plane_wave(1.0), 3.0) * constant(cplx(0.0, 2.0)) - conj(quadratic_phase(1.0)),
  };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& f : symbols) {
    const auto nf = normal_form(f);
    REQUIRE(nf.has_value());
    for (int i = 0; i < 200; ++i) {
      const cplx z(u(rng), u(rng));
      // Shell boundaries are measure-zero; skip points sitting on them.
      if (std::abs(std::log2(std::abs(z)) - std::round(std::log2(std::abs(z)))) < 1e-9) continue;
      REQUIRE(std::abs(nf->eval(z) - eval(f, z)) <= 1e-12 * (1.0 + std::abs(eval(f, z))));
    }
  }
  CHECK_FALSE(normal_form(radial_dyadic(3) * quadratic_phase(1.0)).has_value());
  CHECK_FALSE(normal_form(*named_radial_profile("bump")).has_value());
}

TEST_CASE("oscillation and sup estimates") {
  CHECK(oscillation_at(constant(2.0), 5.0) == doctest::Approx(0.0));
  // |Re z - Re 0| stays below 1 on the open unit disk and approaches it.
  const double osc = oscillation_at(real_part(coord_z()), 0.0, 1.0);
  CHECK(osc < 1.0);
  CHECK(osc > 0.98);
  CHECK(sup_norm_estimate(plane_wave(1.0), SampleGrid{0, 4, 8, 8}) == doctest::Approx(1.0));
  const auto sq = *named_radial_profile("sqrt_phase");
  CHECK(oscillation_at(sq, 1e4, 1.0, 4096) < oscillation_at(sq, 1e2, 1.0, 4096));
}

TEST_CASE("sample grid layout") {
  const SampleGrid g{0.0, 2.0, 3, 4};
  const auto pts = g.points();
  CHECK(pts.size() == 1 + 2 * 4);
  CHECK(g.radii() == std::vector<double>{0.0, 1.0, 2.0});
}

}
