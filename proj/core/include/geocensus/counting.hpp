#ifndef GEOCENSUS_COUNTING_HPP
#define GEOCENSUS_COUNTING_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>

#include "geocensus/census.hpp"
#include "geocensus/word.hpp"

namespace geocensus {

// The homology norm ||.||_m. The source text names it the max norm but
// defines it as sum |r_i|; we implement the formula as printed (Sum) and keep
// the max norm selectable.
enum class HomNorm { Sum, Max };

int hom_norm(std::span<const std::int16_t> h, HomNorm kind);
int hom_norm(const HomologyVector& h, HomNorm kind);

// Truncation window u(x) = sqrt(log x) log log x.
double u_window(double x);

// Per-geodesic weights:
//   Unit     1                         (class counting)
//   RWeight  l / sinh(l/2)             (the trace-formula weight)
//   PWeight  2 log N / sqrt N = 2 l e^{-l/2}
enum class WeightKind { Unit, RWeight, PWeight };

double geodesic_weight(double length, WeightKind kind);

// Sparse histogram over homology classes at a norm cutoff. Bins are kept in
// key-sorted order so every sum below has one fixed, reproducible order.
struct HomologyHistogram {
  std::map<HomologyVector, double> bins;
  double cutoff_x = 0;
  WeightKind kind = WeightKind::Unit;

  double total() const;
};

// Query-side diagnostics: whether the cutoff exceeded the census completeness
// threshold, and how many classes sat within error of the cutoff boundary
// (such classes are included; the inequality is closed).
struct CountWarnings {
  bool beyond_completeness = false;
  std::size_t boundary_cases = 0;
};

// A pair-correlation query: ordered pairs with N(gamma_i) <= x_i and
// Phi(gamma_2) - Phi(gamma_1) = beta. The diagonal gamma_1 = gamma_2 is
// included by default (it only matters for beta = 0).
struct PairQuery {
  HomologyVector beta;
  double x1 = 0;
  double x2 = 0;
  double k = 0.5;  // standing size assumption x^k <= x_i <= x, x = max
  bool include_diagonal = true;

  void validate(unsigned genus) const;  // throws DomainError
};

// pi(x): primitive classes of norm <= x.
std::size_t pi_count(const Census& c, double x, CountWarnings* w = nullptr);

// pi_beta(x): restricted to homology class beta.
std::size_t pi_beta(const Census& c, const HomologyVector& beta, double x,
                    CountWarnings* w = nullptr);

// pi_B(x): restricted to homology classes satisfying a predicate.
std::size_t pi_predicate(const Census& c,
                         const std::function<bool(std::span<const std::int16_t>)>& in_B,
                         double x, CountWarnings* w = nullptr);

// R_beta(x) = sum of l/sinh(l/2) over primitive classes with norm <= x and
// homology beta.
double R_beta(const Census& c, const HomologyVector& beta, double x,
              CountWarnings* w = nullptr);

HomologyHistogram histogram(const Census& c, double x, WeightKind kind,
                            CountWarnings* w = nullptr);

// pi_2^beta(x1, x2) via sparse convolution of two unit histograms.
std::uint64_t pair_count(const Census& c, const PairQuery& q, CountWarnings* w = nullptr);

// R_2^beta and P_2^beta: the weighted pair counters.
double R2_beta(const Census& c, const PairQuery& q, CountWarnings* w = nullptr);
double P2_beta(const Census& c, const PairQuery& q, CountWarnings* w = nullptr);

// R~_2^beta: convolution restricted to ||alpha||_m <= window; `full` carries
// the unrestricted value so callers can see the discarded tail.
struct TruncatedR2 {
  double value = 0;
  double full = 0;
};
TruncatedR2 truncated_R2(const Census& c, const PairQuery& q, double window,
                         HomNorm norm_kind = HomNorm::Sum, CountWarnings* w = nullptr);

// Convolution against explicit histograms (shared by the counters above and
// by callers that reuse histograms across queries).
double convolve_pair(const HomologyHistogram& h1, const HomologyHistogram& h2,
                     const HomologyVector& beta);

}  // namespace geocensus

#endif
