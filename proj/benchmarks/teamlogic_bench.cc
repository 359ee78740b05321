#include <random>

#include <benchmark/benchmark.h>

#include "teamlogic/approx.h"
#include "teamlogic/kernel.h"
#include "teamlogic/normalform.h"
#include "teamlogic/semantics.h"

namespace teamlogic {
namespace {

const Signature& Sig() {
  static const Signature sig = Signature::Parse("rel G/2; rel P/1");
  return sig;
}

WeakModel RandomModel(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return WeakModel(Structure::Random(Sig(), n, rng), QuantifierInterpretation::Majority(n));
}

void BM_TeamDependence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WeakModel w = RandomModel(n, 1);
  Formula f = ParseFormula("A x E y (dep(x,y) & G(x,y))", Sig());
  for (auto _ : state) benchmark::DoNotOptimize(CheckSentence(w, f));
}
BENCHMARK(BM_TeamDependence)->DenseRange(2, 6);

void BM_QuantifierBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WeakModel w = RandomModel(n, 2);
  Formula f = ParseFormula("Q x A z E y (dep(z,y) & (G(x,y) | P(z)))", Sig());
  for (auto _ : state) benchmark::DoNotOptimize(CheckSentence(w, f));
}
BENCHMARK(BM_QuantifierBlock)->DenseRange(2, 5);

void BM_MixedPrefix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WeakModel w = RandomModel(n, 3);
  Formula f = ParseFormula(
      "Q u A v A w E y (dep(v,y) & (y = u | !(v = w) | G(v,w)))", Sig());
  for (auto _ : state) benchmark::DoNotOptimize(CheckSentence(w, f));
}
BENCHMARK(BM_MixedPrefix)->DenseRange(2, 4);

void BM_Normalize(benchmark::State& state) {
  Formula f = ParseFormula(
      "A x ((E y (dep(x,y) & G(x,y))) & (Q z (P(z) | E u (dep(z,u) & G(z,u)))))", Sig());
  for (auto _ : state) benchmark::DoNotOptimize(Normalize(f, Sig()));
}
BENCHMARK(BM_Normalize);

void BM_CheckCertificate(benchmark::State& state) {
  Formula f = ParseFormula(
      "A x ((E y (dep(x,y) & G(x,y))) & (Q z (P(z) | E u (dep(z,u) & G(z,u)))))", Sig());
  NormalizeResult r = Normalize(f, Sig());
  for (auto _ : state) benchmark::DoNotOptimize(Check(r.certificate, Sig()));
}
BENCHMARK(BM_CheckCertificate);

void BM_FiniteWitness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WeakModel w = RandomModel(n, 4);
  auto sigma = NormalFormSentence::Recognize(
      ParseFormula("A x Q z E y (dep(x,z,y) & (G(x,y) | G(z,y)))", Sig()));
  for (auto _ : state) benchmark::DoNotOptimize(FiniteWitness(w, *sigma));
}
BENCHMARK(BM_FiniteWitness)->DenseRange(2, 4);

void BM_MakeA(benchmark::State& state) {
  auto sigma = NormalFormSentence::Recognize(
      ParseFormula("A x Q z E y (dep(x,z,y) & (G(x,y) | G(z,y)))", Sig()));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MakeA(*sigma, "R", k));
}
BENCHMARK(BM_MakeA)->RangeMultiplier(2)->Range(1, 16);

}  // namespace
}  // namespace teamlogic

BENCHMARK_MAIN();
