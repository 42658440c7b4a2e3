#include <benchmark/benchmark.h>

#include "hilbloc/flag_models.hpp"
#include "hilbloc/node_deform.hpp"
#include "hilbloc/tangent.hpp"

using namespace hilbloc;

static void BM_NodeColength(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  auto r = CurveRing::node(CoeffAlgebra::rationals(), 2 * m + 4);
  auto I = node_c_ideal(r, m, m / 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(colength(I));
}
BENCHMARK(BM_NodeColength)->Arg(4)->Arg(8)->Arg(12);

static void BM_CuspClassify(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  auto r = cusp_ring(2 * m + 4);
  auto I = CuspCanonicalIdeal::binom(m, 2, 5).ideal(r);
  for (auto _ : state) benchmark::DoNotOptimize(classify_cusp_ideal(I));
}
BENCHMARK(BM_CuspClassify)->Arg(1)->Arg(3)->Arg(6);

static void BM_FlatRelations(benchmark::State& state) {
  DeformShape sh{static_cast<int>(state.range(0)), 2, true, std::nullopt};
  for (auto _ : state) {
    auto d = derive_flat_relations(sh);
    benchmark::DoNotOptimize(buchberger(d.ring, d.equations));
  }
}
BENCHMARK(BM_FlatRelations)->Arg(3)->Arg(6);

static void BM_LocalModel(benchmark::State& state) {
  static const char* pats[] = {"4;2,2", "5;2,2,1", "4;2,2,1,1", "6;3,3,2,2"};
  auto p = FlagPattern::parse(pats[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(local_model(p));
  state.SetLabel(pats[state.range(0)]);
}
BENCHMARK(BM_LocalModel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_HomDim(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  auto r = cusp_ring(2 * m + 8);
  IdealGens I(r, {RingElement::monomial(r, 1, m), RingElement::monomial(r, 0, m + 2)});
  auto path = state.range(1) ? HomPath::Syzygy : HomPath::MatrixFactorization;
  for (auto _ : state) benchmark::DoNotOptimize(hom_dim(I, path).dimension);
}
BENCHMARK(BM_HomDim)->ArgsProduct({{1, 3, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
