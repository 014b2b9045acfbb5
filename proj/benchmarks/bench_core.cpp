// Microbenchmarks for the hot paths: certified division steps, projective
// diameters, basic-chain products, greedy expansions and interval orbits.

#include <benchmark/benchmark.h>

#include <random>

#include "orbitscale/basics.hpp"
#include "orbitscale/bratteli.hpp"
#include "orbitscale/euclid.hpp"
#include "orbitscale/hilbert.hpp"
#include "orbitscale/logistic.hpp"
#include "orbitscale/odometer.hpp"

using namespace orbitscale;

namespace {

BasisPtr golden_basis() {
  static BasisPtr b =
      MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(5)});
  return b;
}

void BM_euclid_step_golden(benchmark::State& state) {
  auto b = golden_basis();
  std::vector<GroupElement> x{GroupElement::one(b),
                              GroupElement(b, {mpq_class(-1, 2), mpq_class(1, 2)})};
  for (auto _ : state) {
    auto s = euclid_step(x);
    benchmark::DoNotOptimize(s.d_prime);
  }
}
BENCHMARK(BM_euclid_step_golden);

void BM_floor_ratio(benchmark::State& state) {
  auto b = golden_basis();
  GroupElement one = GroupElement::one(b);
  GroupElement alpha(b, {mpq_class(-1, 2), mpq_class(1, 2)});
  for (auto _ : state) {
    auto [q, r] = floor_ratio(one - alpha, alpha);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_floor_ratio);

void BM_proj_diameter(benchmark::State& state) {
  std::mt19937 rng(5);
  int d = static_cast<int>(state.range(0));
  MatZ m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = 1 + static_cast<long>(rng() % 50);
  for (auto _ : state) {
    auto v = proj_diameter(m);
    benchmark::DoNotOptimize(v.ratio);
  }
}
BENCHMARK(BM_proj_diameter)->Arg(3)->Arg(6);

void BM_factor_into_basics(benchmark::State& state) {
  std::mt19937 rng(7);
  MatZ m = random_qualifying_matrix(rng, 4, 4, 60);
  for (auto _ : state) {
    FactorChain c = factor_into_basics(m);
    benchmark::DoNotOptimize(c.k);
  }
}
BENCHMARK(BM_factor_into_basics);

void BM_expansion(benchmark::State& state) {
  KneadingMap q = fibonacci_kneading(40);
  std::int64_t n = 0;
  for (auto _ : state) {
    OdometerWord w = expansion(n % 100000, q, 41);
    benchmark::DoNotOptimize(w.x.data());
    n += 37;
  }
}
BENCHMARK(BM_expansion);

void BM_vershik_orbit(benchmark::State& state) {
  KneadingMap q = fibonacci_kneading(24);
  OrderedBratteliDiagram b = diagram_from_Q(q, 18);
  for (auto _ : state) {
    FinitePath p = unique_minimal_path(b).path;
    for (int i = 0; i < 100; ++i) {
      auto nx = vershik_successor(b, p);
      if (!nx) break;
      p = *nx;
    }
    benchmark::DoNotOptimize(p.edge_ids.data());
  }
}
BENCHMARK(BM_vershik_orbit);

void BM_critical_orbit_512(benchmark::State& state) {
  mpq_class lam = parse_rational("3.5699456");
  for (auto _ : state) {
    CriticalOrbit orb(lam, 512);
    benchmark::DoNotOptimize(orb.point(static_cast<int>(state.range(0))).lo.raw());
  }
}
BENCHMARK(BM_critical_orbit_512)->Arg(256)->Arg(2048);

void BM_find_lambda_doubling(benchmark::State& state) {
  KneadingMap q;
  q.values.assign(9, 0);
  for (int k = 2; k <= 8; ++k) q.values[k] = k - 1;
  for (auto _ : state) {
    LogisticParameter lam = find_lambda(q, 8, mpq_class(1, 1000000));
    benchmark::DoNotOptimize(lam.precision_used);
  }
}
BENCHMARK(BM_find_lambda_doubling);

}  // namespace

BENCHMARK_MAIN();
