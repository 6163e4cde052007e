#include "geocensus/counting.hpp"

#include <algorithm>
#include <cmath>

#include "geocensus/errors.hpp"

namespace geocensus {

namespace {

// Closed-inequality norm cutoff on a census record: include when the tracked
// interval around the length allows length <= log x; count boundary overlaps.
bool in_cutoff(const Census::Record& r, double logx, CountWarnings* w) {
  double lo = r.len_hi + r.len_lo - r.len_err;
  double hi = r.len_hi + r.len_lo + r.len_err;
  if (hi <= logx) return true;
  if (lo > logx) return false;
  if (w) ++w->boundary_cases;
  return true;  // closed inequality: boundary cases are included
}

void note_completeness(const Census& c, double x, CountWarnings* w) {
  if (!w) return;
  if (c.size() == 0 || std::log(x) > c.completeness_length().to_double())
    w->beyond_completeness = true;
}

double weight_of(const Census::Record& r, WeightKind kind) {
  double l = r.len_hi + r.len_lo;
  return geodesic_weight(l, kind);
}

}  // namespace

int hom_norm(std::span<const std::int16_t> h, HomNorm kind) {
  int v = 0;
  for (std::int16_t x : h) {
    int a = x < 0 ? -x : x;
    v = kind == HomNorm::Sum ? v + a : std::max(v, a);
  }
  return v;
}

int hom_norm(const HomologyVector& h, HomNorm kind) {
  int v = 0;
  for (std::int32_t x : h) {
    int a = x < 0 ? -x : x;
    v = kind == HomNorm::Sum ? v + a : std::max(v, a);
  }
  return v;
}

double u_window(double x) { return std::sqrt(std::log(x)) * std::log(std::log(x)); }

double geodesic_weight(double length, WeightKind kind) {
  switch (kind) {
    case WeightKind::Unit:
      return 1.0;
    case WeightKind::RWeight:
      return length / std::sinh(length / 2);
    case WeightKind::PWeight:
      return 2 * length * std::exp(-length / 2);
  }
  return 0;
}

double HomologyHistogram::total() const {
  long double s = 0;
  for (const auto& [k, v] : bins) s += v;
  return static_cast<double>(s);
}

void PairQuery::validate(unsigned genus) const {
  if (beta.size() != 2 * genus)
    throw DomainError("pair query beta must have 2g components");
  if (!(x1 > 1) || !(x2 > 1)) throw DomainError("pair query requires x1, x2 > 1");
  if (!(k > 0 && k < 1)) throw DomainError("pair query requires 0 < k < 1");
  double x = std::max(x1, x2);
  double xk = std::pow(x, k);
  if (x1 < xk || x2 < xk)
    throw DomainError("pair query violates the size assumption x^k <= x_i <= x");
}

std::size_t pi_count(const Census& c, double x, CountWarnings* w) {
  note_completeness(c, x, w);
  double logx = std::log(x);
  std::size_t n = 0;
  for (const auto& r : c.records())
    if (r.multiplicity == 1 && in_cutoff(r, logx, w)) ++n;
  return n;
}

std::size_t pi_beta(const Census& c, const HomologyVector& beta, double x, CountWarnings* w) {
  note_completeness(c, x, w);
  double logx = std::log(x);
  std::size_t n = 0;
  for (const auto& r : c.records()) {
    if (r.multiplicity != 1 || !in_cutoff(r, logx, w)) continue;
    bool match = true;
    for (std::size_t i = 0; i < beta.size(); ++i)
      if (r.hom[i] != beta[i]) {
        match = false;
        break;
      }
    if (match) ++n;
  }
  return n;
}

std::size_t pi_predicate(const Census& c,
                         const std::function<bool(std::span<const std::int16_t>)>& in_B,
                         double x, CountWarnings* w) {
  note_completeness(c, x, w);
  double logx = std::log(x);
  std::size_t n = 0;
  for (const auto& r : c.records())
    if (r.multiplicity == 1 && in_cutoff(r, logx, w) &&
        in_B(std::span<const std::int16_t>(r.hom, 2 * c.genus())))
      ++n;
  return n;
}

double R_beta(const Census& c, const HomologyVector& beta, double x, CountWarnings* w) {
  note_completeness(c, x, w);
  double logx = std::log(x);
  long double s = 0;
  for (const auto& r : c.records()) {
    if (r.multiplicity != 1 || !in_cutoff(r, logx, w)) continue;
    bool match = true;
    for (std::size_t i = 0; i < beta.size(); ++i)
      if (r.hom[i] != beta[i]) {
        match = false;
        break;
      }
    if (match) s += weight_of(r, WeightKind::RWeight);
  }
  return static_cast<double>(s);
}

HomologyHistogram histogram(const Census& c, double x, WeightKind kind, CountWarnings* w) {
  note_completeness(c, x, w);
  double logx = std::log(x);
  HomologyHistogram h;
  h.cutoff_x = x;
  h.kind = kind;
  for (const auto& r : c.records()) {
    if (r.multiplicity != 1 || !in_cutoff(r, logx, w)) continue;
    HomologyVector key(r.hom, r.hom + 2 * c.genus());
    h.bins[key] += weight_of(r, kind);
  }
  return h;
}

double convolve_pair(const HomologyHistogram& h1, const HomologyHistogram& h2,
                     const HomologyVector& beta) {
  const bool h1_small = h1.bins.size() <= h2.bins.size();
  const HomologyHistogram& small = h1_small ? h1 : h2;
  const HomologyHistogram& big = h1_small ? h2 : h1;
  long double s = 0;
  HomologyVector key;
  for (const auto& [alpha, v] : small.bins) {
    key = alpha;
    for (std::size_t i = 0; i < key.size(); ++i)
      key[i] = h1_small ? alpha[i] + beta[i] : alpha[i] - beta[i];
    auto it = big.bins.find(key);
    if (it != big.bins.end()) s += static_cast<long double>(v) * it->second;
  }
  return static_cast<double>(s);
}

namespace {

// Shared implementation of the three pair counters.
double pair_convolution(const Census& c, const PairQuery& q, WeightKind kind,
                        CountWarnings* w) {
  q.validate(c.genus());
  HomologyHistogram h1 = histogram(c, q.x1, kind, w);
  HomologyHistogram h2 = histogram(c, q.x2, kind, w);
  long double s = convolve_pair(h1, h2, q.beta);
  if (!q.include_diagonal &&
      std::all_of(q.beta.begin(), q.beta.end(), [](int v) { return v == 0; })) {
    double logmin = std::log(std::min(q.x1, q.x2));
    long double diag = 0;
    for (const auto& r : c.records())
      if (r.multiplicity == 1 && in_cutoff(r, logmin, nullptr)) {
        double wt = weight_of(r, kind);
        diag += static_cast<long double>(wt) * wt;
      }
    s -= diag;
  }
  return static_cast<double>(s);
}

}  // namespace

std::uint64_t pair_count(const Census& c, const PairQuery& q, CountWarnings* w) {
  double v = pair_convolution(c, q, WeightKind::Unit, w);
  return static_cast<std::uint64_t>(std::llround(v));
}

double R2_beta(const Census& c, const PairQuery& q, CountWarnings* w) {
  return pair_convolution(c, q, WeightKind::RWeight, w);
}

double P2_beta(const Census& c, const PairQuery& q, CountWarnings* w) {
  return pair_convolution(c, q, WeightKind::PWeight, w);
}

TruncatedR2 truncated_R2(const Census& c, const PairQuery& q, double window, HomNorm norm_kind,
                         CountWarnings* w) {
  q.validate(c.genus());
  HomologyHistogram h1 = histogram(c, q.x1, WeightKind::RWeight, w);
  HomologyHistogram h2 = histogram(c, q.x2, WeightKind::RWeight, w);
  TruncatedR2 out;
  long double full = 0, windowed = 0;
  HomologyVector key;
  for (const auto& [alpha, v] : h1.bins) {
    key = alpha;
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = alpha[i] + q.beta[i];
    auto it = h2.bins.find(key);
    if (it == h2.bins.end()) continue;
    long double term = static_cast<long double>(v) * it->second;
    full += term;
    if (hom_norm(alpha, norm_kind) <= window) windowed += term;
  }
  out.value = static_cast<double>(windowed);
  out.full = static_cast<double>(full);
  if (!q.include_diagonal &&
      std::all_of(q.beta.begin(), q.beta.end(), [](int v) { return v == 0; })) {
    double logmin = std::log(std::min(q.x1, q.x2));
    for (const auto& r : c.records())
      if (r.multiplicity == 1 && in_cutoff(r, logmin, nullptr)) {
        double wt = weight_of(r, WeightKind::RWeight);
        out.full -= wt * wt;
        if (hom_norm(std::span<const std::int16_t>(r.hom, 2 * c.genus()), norm_kind) <= window)
          out.value -= wt * wt;
      }
  }
  return out;
}

}  // namespace geocensus
