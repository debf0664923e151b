// Serial reference implementations against the library kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "spectra/dissociation.hpp"
#include "spectra/energy.hpp"
#include "spectra/fourier.hpp"
#include "spectra/reference.hpp"

using namespace spectra;

namespace {

GroupSubset random_set(const GroupDescriptor& g, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::vector<Element> xs;
  for (Element x = 0; x < g.order(); ++x)
    if (keep(rng)) xs.push_back(x);
  return GroupSubset(g, xs);
}

void BM_DftDirect(benchmark::State& state) {
  const GroupSubset a = random_set(GroupDescriptor::cyclic(state.range(0)), 0.3, 1);
  const auto f = a.indicator();
  for (auto _ : state) benchmark::DoNotOptimize(reference::dft_direct(f));
}

void BM_DftCyclic(benchmark::State& state) {
  const GroupSubset a = random_set(GroupDescriptor::cyclic(state.range(0)), 0.3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft_cyclic(a));
}

void BM_WhtDirect(benchmark::State& state) {
  const GroupSubset a = random_set(GroupDescriptor::cube(state.range(0)), 0.3, 1);
  const auto f = a.indicator();
  for (auto _ : state) benchmark::DoNotOptimize(reference::wht_direct(f));
}

void BM_WhtCube(benchmark::State& state) {
  const GroupSubset a = random_set(GroupDescriptor::cube(state.range(0)), 0.3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(wht_cube(a));
}

void BM_EnergyTuples(benchmark::State& state) {
  const GroupSubset b = random_set(GroupDescriptor::cyclic(100003), state.range(0) / 100003.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::energy_by_tuples(b, 2));
}

void BM_EnergyBruteforce(benchmark::State& state) {
  const GroupSubset b = random_set(GroupDescriptor::cyclic(100003), state.range(0) / 100003.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(energy_bruteforce(b, 2));
}

void BM_EnergyFourier(benchmark::State& state) {
  const GroupSubset b = random_set(GroupDescriptor::cyclic(100003), state.range(0) / 100003.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(energy_via_fourier(b, 2));
}

void BM_DissociatedEnumeration(benchmark::State& state) {
  std::vector<Element> xs;
  for (int i = 0; i < state.range(0); ++i) xs.push_back(Element{1} << i);
  const GroupSubset d(GroupDescriptor::cyclic(std::uint64_t{1} << 40), xs);
  for (auto _ : state) benchmark::DoNotOptimize(reference::dissociated_by_enumeration(d.group(), d.elements()));
}

void BM_IsDissociated(benchmark::State& state) {
  std::vector<Element> xs;
  for (int i = 0; i < state.range(0); ++i) xs.push_back(Element{1} << i);
  const GroupSubset d(GroupDescriptor::cyclic(std::uint64_t{1} << 40), xs);
  for (auto _ : state) benchmark::DoNotOptimize(is_dissociated(d));
}

}  // namespace

BENCHMARK(BM_DftDirect)->Arg(512)->Arg(2048)->Arg(4099)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DftCyclic)->Arg(512)->Arg(2048)->Arg(4099)->Arg(1 << 20)->Arg(1000003)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WhtDirect)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WhtCube)->Arg(8)->Arg(11)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyTuples)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyBruteforce)->Arg(40)->Arg(80)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyFourier)->Arg(40)->Arg(80)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DissociatedEnumeration)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsDissociated)->Arg(10)->Arg(14)->Arg(24)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
