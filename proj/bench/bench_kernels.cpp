// Serial references vs the OpenMP kernels. Thread count comes from
// OMP_NUM_THREADS; run with --benchmark_filter to pick a kernel.
#include <benchmark/benchmark.h>

#include <random>

#include "weilcode/codes.hpp"
#include "weilcode/sums.hpp"

using namespace weilcode;

namespace {

// (p, N) pairs indexed by the benchmark argument
constexpr std::pair<std::uint64_t, std::uint64_t> kFields[] = {{3, 7}, {5, 9}, {23, 5}};

const Field& field_for(std::int64_t i) {
  static const Field fields[] = {Field::make(3, 7), Field::make(5, 9), Field::make(23, 5)};
  return fields[i];
}

std::pair<FqElem, FqElem> operands(const Field& f) {
  std::mt19937_64 rng(7);
  return {f.from_code(rng() % f.order()), f.from_code(1 + rng() % (f.order() - 1))};
}

void label(benchmark::State& state) {
  const auto [p, N] = kFields[state.range(0)];
  state.SetLabel("p=" + std::to_string(p) + " N=" + std::to_string(N));
}

void BM_SnabSerial(benchmark::State& state) {
  const Field& f = field_for(state.range(0));
  const auto [a, b] = operands(f);
  for (auto _ : state) benchmark::DoNotOptimize(serial::brute_snab(f, a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.order() - 1));
  label(state);
}

void BM_SnabParallel(benchmark::State& state) {
  const Field& f = field_for(state.range(0));
  const auto [a, b] = operands(f);
  for (auto _ : state) benchmark::DoNotOptimize(brute_snab(f, a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.order() - 1));
  label(state);
}

void BM_SnabStreaming(benchmark::State& state) {
  const Field& f = field_for(state.range(0));
  const auto [a, b] = operands(f);
  for (auto _ : state) benchmark::DoNotOptimize(brute_snab(f, a, b, Strategy::kStreaming));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.order() - 1));
  label(state);
}

const LinearCode& code_7_1() {
  static const LinearCode code = [] {
    const Field f = code_field(7, 1);
    return build_code(f);
  }();
  return code;
}

void BM_CensusSerial(benchmark::State& state) {
  const LinearCode& code = code_7_1();
  for (auto _ : state) benchmark::DoNotOptimize(serial::weight_distribution(code));
}

void BM_CensusParallel(benchmark::State& state) {
  const LinearCode& code = code_7_1();
  for (auto _ : state) benchmark::DoNotOptimize(brute_weight_distribution(code));
}

}  // namespace

BENCHMARK(BM_SnabSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SnabParallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SnabStreaming)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CensusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
