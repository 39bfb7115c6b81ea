#include <benchmark/benchmark.h>

#include "diop/corpus.hpp"
#include "diop/enumerate.hpp"
#include "diop/hilbert.hpp"
#include "diop/rewrite.hpp"

using namespace diop;

namespace {

void BM_NormalFormLieb(benchmark::State& state) {
  auto p = corpus("lieb");
  Rewriter rw(p);
  auto sig = dioperad_signature(3, 2);
  auto block = enumerate_monomials(p.alpha, sig, 3);
  for (auto _ : state)
    for (const auto& m : block) benchmark::DoNotOptimize(rw.normal_form(Polynomial(m)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(block.size()));
}
BENCHMARK(BM_NormalFormLieb);

void BM_Confluence(benchmark::State& state, const char* name) {
  auto p = corpus(name);
  for (auto _ : state) benchmark::DoNotOptimize(check_confluence(p, kDefaultBudget, 1));
}
BENCHMARK_CAPTURE(BM_Confluence, frob, "frob");
BENCHMARK_CAPTURE(BM_Confluence, lieb_tri, "lieb_tri");
BENCHMARK_CAPTURE(BM_Confluence, v_d, "v_d");

void BM_Oracle(benchmark::State& state) {
  auto p = corpus("lieb");
  int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  auto sig = dioperad_signature(m, n);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_dim(p, sig, m + n - 2));
}
BENCHMARK(BM_Oracle)->Args({2, 2})->Args({3, 2})->Args({3, 3});

void BM_Enumerate(benchmark::State& state) {
  auto p = corpus("frob");
  int n = static_cast<int>(state.range(0));
  auto sig = dioperad_signature(n - 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_monomials(p.alpha, sig, n - 1));
}
BENCHMARK(BM_Enumerate)->DenseRange(3, 6);

}  // namespace

BENCHMARK_MAIN();
