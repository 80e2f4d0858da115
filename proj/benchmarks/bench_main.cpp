#include "pcfdyn/boettcher.hpp"
#include "pcfdyn/classify.hpp"
#include "pcfdyn/equidist.hpp"
#include "pcfdyn/green.hpp"
#include "pcfdyn/padicval.hpp"
#include "pcfdyn/pcf.hpp"

#include <benchmark/benchmark.h>

using namespace pcfdyn;

static void BM_BottcherCoeffs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bottcher_coeffs(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BottcherCoeffs)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_GreenCritical(benchmark::State& state) {
  const CubicParam p{Complex(0.3, 0.4), Complex(-0.6, 0.2)};
  for (auto _ : state) benchmark::DoNotOptimize(g0g1G(p, 1e-12));
}
BENCHMARK(BM_GreenCritical);

static void BM_PcfSolve(benchmark::State& state) {
  const auto r0 = orbit_relation(0, 0, 1), r1 = orbit_relation(1, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pcf_solve(r0, r1));
}
BENCHMARK(BM_PcfSolve)->Unit(benchmark::kMillisecond);

static void BM_PcfEnumerate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pcf_enumerate(9, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PcfEnumerate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ZProbe(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(z_probe(1, 0, -1));
}
BENCHMARK(BM_ZProbe)->Unit(benchmark::kMillisecond);

static void BM_MultiplierPoly(benchmark::State& state) {
  const QPoly t(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
  for (auto _ : state) benchmark::DoNotOptimize(multiplier_poly(3, t, 2));
}
BENCHMARK(BM_MultiplierPoly)->Unit(benchmark::kMillisecond);

static void BM_BifurcationDensity(benchmark::State& state) {
  const auto line = ParamLine::c_zero();
  for (auto _ : state) benchmark::DoNotOptimize(bifurcation_density(line, Window{}, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_BifurcationDensity)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
