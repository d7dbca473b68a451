#include <benchmark/benchmark.h>

#include "eulerp/eulerfun.hpp"
#include "eulerp/feynper.hpp"
#include "eulerp/g2.hpp"
#include "eulerp/mzv.hpp"
#include "eulerp/symbolic.hpp"

using namespace eulerp;

static void BM_Zeta(benchmark::State& state) {
  const int prec = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta(3L, prec));
  }
}
BENCHMARK(BM_Zeta)->Arg(15)->Arg(50)->Arg(100);

static void BM_Phi(benchmark::State& state) {
  const int prec = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi(2L, prec));
  }
}
BENCHMARK(BM_Phi)->Arg(15)->Arg(50)->Arg(100);

static void BM_Gamma(benchmark::State& state) {
  const auto method = state.range(0) == 0 ? GammaMethod::EulerMaclaurin : GammaMethod::ZetaSeries;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_const(30, method));
  }
}
BENCHMARK(BM_Gamma)->Arg(0)->Arg(1);

static void BM_Mzv(benchmark::State& state) {
  const int prec = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mzv({{3, 5}}, prec));
  }
}
BENCHMARK(BM_Mzv)->Arg(15)->Arg(50)->Arg(100);

static void BM_MzvBruteForce(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mzv_bruteforce({{3, 5}}, state.range(0)));
  }
}
BENCHMARK(BM_MzvBruteForce)->Arg(1000)->Arg(10000);

static void BM_Multiphi(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiphi({1, 3}, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Multiphi)->Arg(15)->Arg(50);

static void BM_Coaction(benchmark::State& state) {
  const Expr e = parse_expr("Li_m(4; x)*zeta_m(3) + 2/5*zeta_m(8) - 9*zeta_m(5)*zeta_m(3)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(coact(e));
  }
}
BENCHMARK(BM_Coaction);

static void BM_KirchhoffW5(benchmark::State& state) {
  const MultiGraph g = graphs::wheel(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kirchhoff_polynomial(g));
  }
}
BENCHMARK(BM_KirchhoffW5);

static void BM_PeriodK4(benchmark::State& state) {
  const MultiGraph g = graphs::k4();
  const McOptions o{.samples = 100'000, .sampler = state.range(0) == 0 ? Sampler::Hepp : Sampler::Plain, .threads = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(period_mc(g, o));
  }
  state.SetItemsProcessed(state.iterations() * o.samples);
}
BENCHMARK(BM_PeriodK4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_InvertAlpha(benchmark::State& state) {
  const Real target = Real::parse("1.15965218073e-3", 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_alpha(target, {}, 4, 15));
  }
}
BENCHMARK(BM_InvertAlpha);
BENCHMARK_MAIN();
