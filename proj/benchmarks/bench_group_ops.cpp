#include "bench_harness.hpp"

#include <random>

#include "geocensus/representation.hpp"
#include "geocensus/surface_group.hpp"

using namespace geocensus;

namespace {

const Presentation& pres() {
  static Presentation p(2);
  return p;
}

std::vector<Word> random_words(std::size_t count, std::size_t len) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> dist(0, 7);
  std::vector<Word> out;
  while (out.size() < count) {
    std::vector<Letter> w;
    while (w.size() < len) {
      Letter l = static_cast<Letter>(dist(rng));
      if (!w.empty() && l == inverse_letter(w.back())) continue;
      w.push_back(l);
    }
    out.push_back(Word{std::move(w)});
  }
  return out;
}

void dehn_reduce_len12(benchmark::State& state) {
  auto words = random_words(256, 12);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dehn_reduce(words[i++ % words.size()], pres()));
  }
}

void canonicalize_len10(benchmark::State& state) {
  auto words = random_words(256, 10);
  std::vector<CyclicWord> cyc;
  for (auto& w : words) {
    CyclicWord c = cyclic_reduce(w, pres());
    if (!c.empty()) cyc.push_back(c);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonicalize(cyc[i++ % cyc.size()], pres()));
  }
}

void word_to_trace_len10(benchmark::State& state) {
  static Representation rep = Representation::load_preset("bolza");
  auto words = random_words(256, 10);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(word_to_matrix(words[i++ % words.size()], rep).trace());
  }
}

void length_of_len10(benchmark::State& state) {
  static Representation rep = Representation::load_preset("bolza");
  auto words = random_words(64, 10);
  std::vector<Mat2> mats;
  for (auto& w : words) mats.push_back(word_to_matrix(w, rep));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(length_of(mats[i++ % mats.size()]).length.to_double());
  }
}

}  // namespace

BENCHMARK(dehn_reduce_len12);
BENCHMARK(canonicalize_len10);
BENCHMARK(word_to_trace_len10);
BENCHMARK(length_of_len10);

GEOCENSUS_BENCH_MAIN();
