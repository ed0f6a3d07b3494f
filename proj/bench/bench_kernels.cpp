// Serial reference kernels against their OpenMP counterparts. Thread count
// follows FOCKQ_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "fockq/kernels.hpp"
#include "fockq/symbol.hpp"

using namespace fockq;

namespace {

CMatrix random_matrix(std::size_t r, std::size_t c, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

std::vector<cplx> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v;
}

std::vector<cplx> grid_points(int n) {
  std::vector<cplx> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pts.emplace_back(-2.0 + 4.0 * i / n, -2.0 + 4.0 * j / n);
  return pts;
}

kernels::Field symbol_field(const Symbol& f) {
  return [f](cplx z) { return eval(f, z); };
}

template <CMatrix (*Gemm)(const CMatrix&, const CMatrix&)>
void BM_gemm(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_matrix(n, 2 * n, 1), b = random_matrix(2 * n, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(Gemm(a, b));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(2 * n * n * n));
}

template <std::vector<cplx> (*Gemv)(const CMatrix&, std::span<const cplx>)>
void BM_gemv(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_matrix(n, n, 3);
  const auto x = random_vector(n, 4);
  for (auto _ : st) benchmark::DoNotOptimize(Gemv(a, x));
}

template <std::vector<cplx> (*Heat)(const kernels::Field&, double, std::span<const cplx>, const PolarRule&)>
void BM_heat_field(benchmark::State& st) {
  const auto pts = grid_points(static_cast<int>(st.range(0)));
  const auto field = symbol_field(quadratic_phase(1.0) + coord_z() * plane_wave(cplx(0.5, 1.0)));
  const auto& rule = default_polar_rule();
  for (auto _ : st) benchmark::DoNotOptimize(Heat(field, 0.1, pts, rule));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(pts.size()));
}

template <CMatrix (*Moment)(const kernels::PolarSamples&, std::size_t, std::size_t)>
void BM_moment_quadrature(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto samples =
      kernels::sample_polar(symbol_field(plane_wave(1.0) + coord_zbar()), 0.5, cached_polar_rule(160, 256));
  for (auto _ : st) benchmark::DoNotOptimize(Moment(samples, n, n));
}

}  // namespace

BENCHMARK(BM_gemm<kernels::serial::gemm>)->Name("gemm/serial")->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gemm<kernels::parallel::gemm>)->Name("gemm/parallel")->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gemv<kernels::serial::gemv>)->Name("gemv/serial")->Arg(256)->Arg(2048);
BENCHMARK(BM_gemv<kernels::parallel::gemv>)->Name("gemv/parallel")->Arg(256)->Arg(2048);
BENCHMARK(BM_gemv<kernels::serial::gemv_adjoint>)->Name("gemv_adjoint/serial")->Arg(256)->Arg(2048);
BENCHMARK(BM_gemv<kernels::parallel::gemv_adjoint>)->Name("gemv_adjoint/parallel")->Arg(256)->Arg(2048);
BENCHMARK(BM_heat_field<kernels::serial::heat_field>)->Name("heat_field/serial")->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_heat_field<kernels::parallel::heat_field>)->Name("heat_field/parallel")->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_moment_quadrature<kernels::serial::moment_quadrature>)->Name("moment_quadrature/serial")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_moment_quadrature<kernels::parallel::moment_quadrature>)->Name("moment_quadrature/parallel")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  kernels::apply_thread_limit_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
