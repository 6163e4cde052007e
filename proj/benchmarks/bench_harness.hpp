#ifndef GEOCENSUS_BENCH_HARNESS_HPP
#define GEOCENSUS_BENCH_HARNESS_HPP

// Thin subset of the google-benchmark interface, used when the real library
// is not installed. Each benchmark runs until it has accumulated ~0.5s and
// reports ns/op.

#if defined(GEOCENSUS_HAVE_GOOGLE_BENCHMARK)
#include <benchmark/benchmark.h>
#define GEOCENSUS_BENCH_MAIN BENCHMARK_MAIN
#else

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace benchmark {

class State {
 public:
  explicit State(std::int64_t iters) : left_(iters), iters_(iters) {}
  struct iterator {
    State* s;
    bool operator!=(const iterator&) const { return s->left_-- > 0; }
    void operator++() {}
    int operator*() const { return 0; }
  };
  iterator begin() { return {this}; }
  iterator end() { return {this}; }
  std::int64_t iterations() const { return iters_; }

 private:
  std::int64_t left_;
  std::int64_t iters_;
};

template <typename T>
inline void DoNotOptimize(T const& value) {
  asm volatile("" : : "r,m"(value) : "memory");
}

namespace detail {
struct Entry {
  std::string name;
  std::function<void(State&)> fn;
};
inline std::vector<Entry>& registry() {
  static std::vector<Entry> r;
  return r;
}
}  // namespace detail

struct Registrar {
  Registrar(const char* name, void (*fn)(State&)) {
    detail::registry().push_back({name, fn});
  }
};

inline int run_all() {
  using Clock = std::chrono::steady_clock;
  std::printf("%-40s %15s %12s\n", "benchmark", "iterations", "ns/op");
  for (auto& e : detail::registry()) {
    std::int64_t iters = 1;
    double secs = 0;
    for (;;) {
      State st(iters);
      auto t0 = Clock::now();
      e.fn(st);
      secs = std::chrono::duration<double>(Clock::now() - t0).count();
      if (secs > 0.5 || iters > (1ll << 40)) break;
      iters = secs < 0.01 ? iters * 16 : static_cast<std::int64_t>(iters * (0.7 / secs)) + 1;
    }
    std::printf("%-40s %15lld %12.1f\n", e.name.c_str(), static_cast<long long>(iters),
                secs * 1e9 / iters);
  }
  return 0;
}

}  // namespace benchmark

#define BENCHMARK(fn) \
  static ::benchmark::Registrar registrar_##fn(#fn, fn)
#define GEOCENSUS_BENCH_MAIN() \
  int main() { return ::benchmark::run_all(); }

#endif  // GEOCENSUS_HAVE_GOOGLE_BENCHMARK
#endif
