#include "bench_harness.hpp"

#include "geocensus/census.hpp"

using namespace geocensus;

namespace {

const Representation& bolza() {
  static Representation rep = Representation::load_preset("bolza");
  return rep;
}

void enumerate_L5(benchmark::State& state) {
  for (auto _ : state) {
    Census c = enumerate_census(bolza(), 5);
    benchmark::DoNotOptimize(c.size());
  }
}

void enumerate_L7(benchmark::State& state) {
  for (auto _ : state) {
    Census c = enumerate_census(bolza(), 7);
    benchmark::DoNotOptimize(c.size());
  }
}

void save_and_load_L5(benchmark::State& state) {
  Census c = enumerate_census(bolza(), 5);
  for (auto _ : state) {
    c.save("/tmp/geocensus_bench.census");
    Census back = Census::load("/tmp/geocensus_bench.census", bolza().id());
    benchmark::DoNotOptimize(back.size());
  }
}

}  // namespace

BENCHMARK(enumerate_L5);
BENCHMARK(enumerate_L7);
BENCHMARK(save_and_load_L5);

GEOCENSUS_BENCH_MAIN();
