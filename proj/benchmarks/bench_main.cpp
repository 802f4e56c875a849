#include <benchmark/benchmark.h>

#include "uvt/centre.hpp"
#include "uvt/expr.hpp"
#include "uvt/pairing.hpp"

using namespace uvt;

namespace {

void BM_ScalarArithmetic(benchmark::State& state) {
  const Scalar v = Scalar::v(), t = Scalar::t();
  for (auto _ : state) {
    Scalar x = (v - v.inverse()) / (v * t + 1);
    for (int k = 0; k < 8; ++k) x = x * x.inverse() + x;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ScalarArithmetic);

// Straightening E-words past F-words; fresh algebra so the cache starts cold.
void BM_NormalForm(benchmark::State& state) {
  const std::string text = state.range(0) == 2 ? "E1*E2*E1*F2*F1*F2" : "E1*E2*E3*F3*F2*F1";
  for (auto _ : state) {
    Algebra alg(CartanDatum::preset(state.range(0) == 2 ? "A2" : "A3"));
    benchmark::DoNotOptimize(parse_element(alg, text));
  }
}
BENCHMARK(BM_NormalForm)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GramBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Algebra alg(CartanDatum::preset("A2"));
    const Pairing p(alg);
    benchmark::DoNotOptimize(p.gram({n, n}));
  }
}
BENCHMARK(BM_GramBlock)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ZLambdaAdjointA2(benchmark::State& state) {
  for (auto _ : state) {
    Algebra alg(CartanDatum::preset("A2"));
    const Pairing p(alg);
    benchmark::DoNotOptimize(z_lambda(p, {1, 1}));
  }
}
BENCHMARK(BM_ZLambdaAdjointA2)->Unit(benchmark::kMillisecond);

void BM_CentralSolveA2(benchmark::State& state) {
  Algebra alg(CartanDatum::preset("A2"));
  for (auto _ : state) benchmark::DoNotOptimize(solve_central_degree(alg, {1, 1}, 2, 2, false));
}
BENCHMARK(BM_CentralSolveA2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

