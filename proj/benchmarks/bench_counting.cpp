#include "bench_harness.hpp"

#include <cmath>

#include "geocensus/asymptotics.hpp"
#include "geocensus/counting.hpp"

using namespace geocensus;

namespace {

const Census& census6() {
  static Census c = enumerate_census(Representation::load_preset("bolza"), 6);
  return c;
}

void histogram_unit(benchmark::State& state) {
  double x = std::exp(census6().completeness_length().to_double());
  for (auto _ : state) {
    benchmark::DoNotOptimize(histogram(census6(), x, WeightKind::Unit).total());
  }
}

void pair_count_at_lstar(benchmark::State& state) {
  double x = std::exp(census6().completeness_length().to_double());
  PairQuery q{HomologyVector{0, 0, 0, 0}, x, x};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_count(census6(), q));
  }
}

void gaussian_check_window20(benchmark::State& state) {
  AsymptoticModel m = AsymptoticModel::standard(2);
  HomologyVector beta{1, 0, 1, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_convolution_check(m, beta, 50, 50, 20).rel_err);
  }
}

void covariance_estimate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_covariance(census6(), 0.0, 1e9).sigma2_hat);
  }
}

}  // namespace

BENCHMARK(histogram_unit);
BENCHMARK(pair_count_at_lstar);
BENCHMARK(gaussian_check_window20);
BENCHMARK(covariance_estimate);

GEOCENSUS_BENCH_MAIN();
