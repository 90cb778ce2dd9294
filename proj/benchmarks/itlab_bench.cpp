#include <benchmark/benchmark.h>

#include "itlab/corpus.hpp"
#include "itlab/transform.hpp"
#include "itlab/typability.hpp"

using namespace itlab;

namespace {

// Church numeral n applied to itself: a growing strongly normalising term.
Term church_power(int n) {
  std::string body = "x";
  for (int i = 0; i < n; ++i) body = "f (" + body + ")";
  const std::string num = "(\\f. \\x. " + body + ")";
  return parse_term(num + " " + num);
}

void BM_CheckSn(benchmark::State& state) {
  const Term m = church_power(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_sn(m));
}
BENCHMARK(BM_CheckSn)->DenseRange(1, 2);

void BM_TypeSn(benchmark::State& state) {
  const Term m = church_power(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(type_sn(m));
}
BENCHMARK(BM_TypeSn)->DenseRange(1, 2);

void BM_TypeSnCorpus(benchmark::State& state) {
  CorpusSpec spec;
  spec.max_size = static_cast<std::size_t>(state.range(0));
  std::vector<Term> terms;
  for (const Term& m : enumerate_terms(spec)) {
    if (check_sn(m).verdict == SnVerdict::SN) terms.push_back(m);
  }
  for (auto _ : state) {
    for (const Term& m : terms) benchmark::DoNotOptimize(type_sn(m));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * terms.size()));
}
BENCHMARK(BM_TypeSnCorpus)->Arg(5)->Arg(6);

void BM_CheckDerivation(benchmark::State& state) {
  const Derivation d = type_sn(church_power(static_cast<int>(state.range(0)))).derivation;
  for (auto _ : state) benchmark::DoNotOptimize(check_derivation(d));
  state.counters["nodes"] = static_cast<double>(d.node_count());
}
BENCHMARK(BM_CheckDerivation)->DenseRange(1, 2);

void BM_SeqToNd(benchmark::State& state) {
  const Derivation d = type_sn(church_power(static_cast<int>(state.range(0)))).derivation;
  for (auto _ : state) benchmark::DoNotOptimize(seq_to_nd(d));
}
BENCHMARK(BM_SeqToNd)->DenseRange(1, 2);

void BM_Leq(benchmark::State& state) {
  const Type a = parse_type("(a -> b) & (b -> a) & ((a & b) -> (a -> b) & (b -> a))");
  const Type b = parse_type("(a & b) -> (b -> a)");
  for (auto _ : state) benchmark::DoNotOptimize(leq(a, b));
}
BENCHMARK(BM_Leq);

void BM_TypeWn(benchmark::State& state) {
  const Term m = parse_term("(\\x. \\y. x) (\\z. z) ((\\x. x x) (\\x. x x))");
  for (auto _ : state) benchmark::DoNotOptimize(type_wn(m));
}
BENCHMARK(BM_TypeWn);

}  // namespace
BENCHMARK_MAIN();
