// Microbenchmarks for the hot paths: cohomology group computation, the
// groupoid/torsor round trip, and the Morita equivalence search.
#include <benchmark/benchmark.h>

#include "gclab/cohomology.hpp"
#include "gclab/galois.hpp"
#include "gclab/gmodule.hpp"
#include "gclab/groupoid.hpp"
#include "gclab/morita.hpp"

namespace {

using namespace gclab;

GModule klein_on_z2() {
  return trivial_gmodule(group_from_cyclic_factors({2, 2}).to_group(),
                         group_from_cyclic_factors({2}));
}

void BM_CohomologyGroupSNF(benchmark::State& state) {
  GModule M = klein_on_z2();
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_group(M, 2));
}
BENCHMARK(BM_CohomologyGroupSNF);

void BM_CohomologyGroupEnumerative(benchmark::State& state) {
  GModule M = trivial_gmodule(cyclic_group(3), group_from_cyclic_factors({3}));
  for (auto _ : state)
    benchmark::DoNotOptimize(cohomology_group_enumerative(M, 2));
}
BENCHMARK(BM_CohomologyGroupEnumerative);

void BM_CocycleRoundTrip(benchmark::State& state) {
  GModule M = klein_on_z2();
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);
  Cochain beta = H.representative({1, 0, 0});
  for (auto _ : state) {
    DescentPresentation D = groupoid_from_cocycle(ctx, beta);
    benchmark::DoNotOptimize(cocycle_from_torsor(ctx, D.X, D.P));
  }
}
BENCHMARK(BM_CocycleRoundTrip);

void BM_Eliminability(benchmark::State& state) {
  GModule M = klein_on_z2();
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);
  DescentPresentation D = groupoid_from_cocycle(ctx, H.representative({1, 0, 0}));
  for (auto _ : state) benchmark::DoNotOptimize(is_eliminable(ctx, D.X));
}
BENCHMARK(BM_Eliminability);

void BM_MoritaEquivalence(benchmark::State& state) {
  Groupoid a = action_groupoid(cyclic_group(2), {{0, 1}, {1, 0}});
  Groupoid b = pair_groupoid(2);
  for (auto _ : state) benchmark::DoNotOptimize(are_morita_equivalent(a, b));
}
BENCHMARK(BM_MoritaEquivalence);

}  // namespace

BENCHMARK_MAIN();
