#include <doctest.h>

#include <omp.h>

#include <random>

#include "fockq/kernels.hpp"
#include "fockq/quadrature.hpp"

using namespace fockq;
namespace k = fockq::kernels;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double zero_fraction = 0.0) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u;
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) >= zero_fraction) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel gemm matches the serial reference") {
  std::mt19937_64 rng(1);
  for (auto [r, inner, c, zeros] : {std::tuple{7, 13, 5, 0.0}, std::tuple{64, 200, 64, 0.0}, std::tuple{50, 120, 40, 0.8}}) {
    const auto a = random_matrix(rng, r, inner, zeros), b = random_matrix(rng, inner, c);
    CHECK(k::parallel::gemm(a, b).max_abs_diff(k::serial::gemm(a, b)) < 1e-11);
  }
  CHECK_THROWS_AS(k::parallel::gemm(CMatrix(2, 3), CMatrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(k::serial::gemm(CMatrix(2, 3), CMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("parallel gemv and adjoint gemv match the serial reference") {
  std::mt19937_64 rng(2);
  const auto a = random_matrix(rng, 90, 130);
  const auto x = random_vector(rng, 130), y = random_vector(rng, 90);
  CHECK(max_diff(k::parallel::gemv(a, x), k::serial::gemv(a, x)) < 1e-12);
  CHECK(max_diff(k::parallel::gemv_adjoint(a, y), k::serial::gemv_adjoint(a, y)) < 1e-12);
  // <A x, y> = <x, A^* y>
  const auto ax = k::serial::gemv(a, x), ay = k::serial::gemv_adjoint(a, y);
  cplx l = 0.0, r = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) l += ax[i] * std::conj(y[i]);
  for (std::size_t i = 0; i < x.size(); ++i) r += x[i] * std::conj(ay[i]);
  CHECK(std::abs(l - r) < 1e-10);
}

TEST_CASE("parallel heat field and moment quadrature match the serial reference") {
  const k::Field f = [](cplx z) { return std::exp(cplx(0.0, std::norm(z))) + z * z; };
  const auto& rule = cached_polar_rule(32, 64);
  std::vector<cplx> pts;
  for (int i = 0; i < 37; ++i) pts.push_back(std::polar(0.1 * i, 0.7 * i));
  const auto hs = k::serial::heat_field(f, 0.3, pts, rule), hp = k::parallel::heat_field(f, 0.3, pts, rule);
  CHECK(max_diff(hs, hp) < 1e-13);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(hs[i] - k::heat_point(f, 0.3, pts[i], rule)) < 1e-13);

  const auto s = k::sample_polar(f, 0.3, rule);
  CHECK(s.values.size() == s.u.size() * static_cast<std::size_t>(s.angles));
  CHECK(k::parallel::moment_quadrature(s, 12, 9).max_abs_diff(k::serial::moment_quadrature(s, 12, 9)) < 1e-13);
}

TEST_CASE("results do not depend on the thread count") {
  std::mt19937_64 rng(3);
  const auto a = random_matrix(rng, 40, 60), b = random_matrix(rng, 60, 30);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = k::parallel::gemm(a, b);
  omp_set_num_threads(4);
  const auto four = k::parallel::gemm(a, b);
  omp_set_num_threads(saved);
  CHECK(one.max_abs_diff(four) == 0.0);
}

TEST_CASE("heat field propagates evaluation failures") {
  const k::Field bad = [](cplx z) -> cplx {
    if (std::abs(z) > 1.0) throw EvaluationError("outside domain");
    return z;
  };
  const std::vector<cplx> pts = {0.0, 0.5};
  CHECK_THROWS_AS(k::parallel::heat_field(bad, 1.0, pts, default_polar_rule()), EvaluationError);
}

TEST_CASE("matrix helpers") {
  const auto id = CMatrix::identity(3);
  CHECK(id.is_diagonal());
  CHECK((id + id).max_abs_diff(cplx(2.0) * id) == 0.0);
  CHECK((id - id).max_abs_diff(CMatrix(3, 3)) == 0.0);
  CHECK_THROWS_AS(id.max_abs_diff(CMatrix(2, 2)), std::invalid_argument);
}

}
