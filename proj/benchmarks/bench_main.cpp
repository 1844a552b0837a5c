#include <benchmark/benchmark.h>

#include "wpa/group_spec.hpp"
#include "wpa/lattice.hpp"
#include "wpa/primes.hpp"
#include "wpa/tower.hpp"
#include "wpa/wreath.hpp"

using namespace wpa;

static void BM_ClosureProductAction(benchmark::State& st) {
  const PermGroup A = parse_group_spec("sym:3");
  const PermGroup B = parse_group_spec("cyc:3");
  for (auto _ : st) {
    auto W = product_action(A, B);
    W.result.materialize();
    benchmark::DoNotOptimize(W.result.order());
  }
}
BENCHMARK(BM_ClosureProductAction)->Unit(benchmark::kMillisecond);

static void BM_LatticePsl2(benchmark::State& st) {
  for (auto _ : st) {
    PermGroup G = parse_group_spec("psl2:" + std::to_string(st.range(0)));
    const auto L = subgroup_lattice(G);
    benchmark::DoNotOptimize(L.subgroups().size());
  }
}
BENCHMARK(BM_LatticePsl2)->Arg(7)->Arg(11)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_TowerPrefix(benchmark::State& st) {
  const std::vector<mpz_class> a(static_cast<std::size_t>(st.range(0)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(tower_prefix(a, a.size()));
}
BENCHMARK(BM_TowerPrefix)->Arg(4)->Arg(8);

static void BM_NextPrime(benchmark::State& st) {
  const mpz_class x = mpz_class(1) << static_cast<unsigned long>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(next_prime(x));
}
BENCHMARK(BM_NextPrime)->Arg(64)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
