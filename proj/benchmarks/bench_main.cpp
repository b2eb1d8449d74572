#include <benchmark/benchmark.h>

#include "speclen/dirichlet.hpp"
#include "speclen/heat.hpp"
#include "speclen/length.hpp"
#include "speclen/maps.hpp"

namespace {

void BM_DualEnumeration(benchmark::State& state) {
  const speclen::Lattice dual = speclen::Lattice::schiemann('+').dual();
  const double bound = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(speclen::enumerate_by_norm(dual, bound));
  }
}
BENCHMARK(BM_DualEnumeration)->Arg(10)->Arg(30);

void BM_EpsteinZetaZ2(benchmark::State& state) {
  const speclen::Lattice z2 = speclen::Lattice::integers(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(speclen::epstein_zeta(z2, 2.0));
  }
}
BENCHMARK(BM_EpsteinZetaZ2);

void BM_EpsteinZetaSchiemann(benchmark::State& state) {
  const speclen::Lattice dual = speclen::Lattice::schiemann('-').dual();
  for (auto _ : state) {
    benchmark::DoNotOptimize(speclen::epstein_zeta(dual, 4.5));
  }
}
BENCHMARK(BM_EpsteinZetaSchiemann);

void BM_HeatTraceSmallT(benchmark::State& state) {
  const speclen::HeatTrace trace{
      speclen::FlatTorus(speclen::Lattice::integers(2))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace(1e-4));
  }
}
BENCHMARK(BM_HeatTraceSmallT);

void BM_SpectralNorm(benchmark::State& state) {
  const Eigen::MatrixXd a = speclen::paper_A_matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(speclen::spectral_norm(a));
  }
}
BENCHMARK(BM_SpectralNorm);

void BM_TorusModeSearch(benchmark::State& state) {
  const speclen::TorusLinearMap map(
      speclen::paper_A_matrix(),
      speclen::FlatTorus(speclen::Lattice::schiemann('+')),
      speclen::FlatTorus(speclen::Lattice::schiemann('-')));
  const double bound = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(speclen::torus_length_lower_bound(map, bound, 3));
  }
}
BENCHMARK(BM_TorusModeSearch)->Arg(4)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
