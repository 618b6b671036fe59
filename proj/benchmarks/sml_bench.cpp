#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "sml/dsl.hpp"
#include "sml/propagation.hpp"
#include "sml/wavefront.hpp"

using namespace sml;

namespace {

SymExpr sym(Var v) { return SymExpr::variable(v); }

}  // namespace

static void BM_SymExprNormalize(benchmark::State& state) {
  SymExpr k1 = sym(Var::k(1)), k2 = sym(Var::k(2)), m = sym(Var::param("m"));
  for (auto _ : state) {
    SymExpr e = (k1 * k1 - k2 * k2) / (k1 - k2) + m / (k1 + k2);
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_SymExprNormalize);

static void BM_GrassmannProduct(benchmark::State& state) {
  gen::Rng rng(1);
  unsigned n = static_cast<unsigned>(state.range(0));
  auto a = rng.grassmann(n), b = rng.grassmann(n);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GrassmannProduct)->DenseRange(2, 6, 2);

static void BM_ComposeOps(benchmark::State& state) {
  gen::Rng rng(2);
  unsigned n = static_cast<unsigned>(state.range(0));
  SuperOperator a = rng.superop(2, n, Rational(1), false), b = rng.superop(2, n, Rational(1, 2), false);
  for (auto _ : state) benchmark::DoNotOptimize(principal_symbol(compose_ops(b, a)));
}
BENCHMARK(BM_ComposeOps)->DenseRange(1, 3);

static void BM_WessZuminoInverse(benchmark::State& state) {
  SuperSymbol s = principal_symbol(wz_model(sym(Var::param("m"))).p);
  for (auto _ : state) benchmark::DoNotOptimize(symbol_inverse(s));
}
BENCHMARK(BM_WessZuminoInverse);

static void BM_WessZuminoVerdict(benchmark::State& state) {
  SuperSymbol s = principal_symbol(wz_model(sym(Var::param("m"))).p);
  for (auto _ : state) benchmark::DoNotOptimize(ellipticity_verdict(s));
}
BENCHMARK(BM_WessZuminoVerdict);

static void BM_Factorize(benchmark::State& state) {
  gen::Rng rng(3);
  SuperMorphism chi = rng.morphism(2, 2, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(polarization_map(chi));
}
BENCHMARK(BM_Factorize);

static void BM_ExampleSWF(benchmark::State& state) {
  SuperDistribution u(2, 2);
  CatalogSum d = CatalogSum::delta_point(RVector(2, 0));
  u.set(MultiIndex::empty(2), d);
  u.set(MultiIndex::full(2), d);
  for (auto _ : state) {
    auto swf = swf_upper_bound(u, auto_annihilators(u));
    benchmark::DoNotOptimize(projection_check(swf, u));
  }
}
BENCHMARK(BM_ExampleSWF);

static void BM_WessZuminoOrbit(benchmark::State& state) {
  HyperbolicSystem wz = wz_model(sym(Var::param("m")));
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian_orbit(wz, {0, 0, 0}, {5, 3, 4}, {1, 0, 0, 0}));
}
BENCHMARK(BM_WessZuminoOrbit);

static void BM_ParseKitchenSink(benchmark::State& state) {
  std::ifstream in(std::string(SML_CORPUS_DIR) + "/30_kitchen_sink.sml");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  for (auto _ : state) benchmark::DoNotOptimize(parse_document(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseKitchenSink);
BENCHMARK_MAIN();
