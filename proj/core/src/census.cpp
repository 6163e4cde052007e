#include "geocensus/census.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "geocensus/errors.hpp"

namespace geocensus {

namespace {

constexpr unsigned kShardDepth = 2;  // words at depth <= this belong to shard 0

std::uint64_t hash_bytes(const Letter* data, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ull;
  }
  return h ^ (h >> 29);
}

// Open-addressing set of record indices keyed by canonical word bytes.
class DedupTable {
 public:
  explicit DedupTable(std::size_t initial = 1 << 12) : slots_(initial, kEmpty) {}

  // Returns true if the word was new. `index` is the record index stored for
  // a new word.
  bool insert_if_new(const std::vector<Census::Record>& records,
                     const std::vector<Letter>& arena, const Letter* w, std::size_t n,
                     std::uint32_t index) {
    if ((count_ + 1) * 10 >= slots_.size() * 7) grow(records, arena);
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash_bytes(w, n) & mask;
    for (;;) {
      std::uint32_t s = slots_[pos];
      if (s == kEmpty) {
        slots_[pos] = index;
        ++count_;
        return true;
      }
      const Census::Record& r = records[s];
      if (r.word_length == n && std::memcmp(arena.data() + r.word_offset, w, n) == 0)
        return false;
      pos = (pos + 1) & mask;
    }
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  void grow(const std::vector<Census::Record>& records, const std::vector<Letter>& arena) {
    std::vector<std::uint32_t> bigger(slots_.size() * 2, kEmpty);
    std::size_t mask = bigger.size() - 1;
    for (std::uint32_t s : slots_) {
      if (s == kEmpty) continue;
      const Census::Record& r = records[s];
      std::size_t pos = hash_bytes(arena.data() + r.word_offset, r.word_length) & mask;
      while (bigger[pos] != kEmpty) pos = (pos + 1) & mask;
      bigger[pos] = s;
    }
    slots_ = std::move(bigger);
  }

  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
};

// Reusable word-to-trace pipeline: two alternating matrix accumulators, no
// per-step allocation.
class TraceComputer {
 public:
  explicit TraceComputer(const Representation& rep)
      : rep_(rep), acc0_(Mat2::identity(rep.precision())), acc1_(Mat2::identity(rep.precision())) {}

  ScalarHP trace(const Letter* w, std::size_t n) {
    Mat2* a = &acc0_;
    Mat2* d = &acc1_;
    acc0_ = Mat2::identity(rep_.precision());
    for (std::size_t i = 0; i < n; ++i) {
      const Mat2& g = rep_.image_of_letter(w[i]);
      d->m00.set_mul_add(a->m00, g.m00, a->m01, g.m10);
      d->m01.set_mul_add(a->m00, g.m01, a->m01, g.m11);
      d->m10.set_mul_add(a->m10, g.m00, a->m11, g.m10);
      d->m11.set_mul_add(a->m10, g.m01, a->m11, g.m11);
      std::swap(a, d);
    }
    return a->trace();
  }

 private:
  const Representation& rep_;
  Mat2 acc0_, acc1_;
};

struct ShardResult {
  std::vector<Census::Record> records;
  std::vector<Letter> arena;
};

class ShardWorker {
 public:
  ShardWorker(const Representation& rep, unsigned L, unsigned shard_count, unsigned shard_index)
      : rep_(rep),
        p_(rep.presentation()),
        L_(L),
        shard_count_(shard_count),
        shard_index_(shard_index),
        tracer_(rep) {
    w_.reserve(L + 1);
  }

  ShardResult run() {
    if (L_ >= 1) descend();
    return ShardResult{std::move(records_), std::move(arena_)};
  }

 private:
  void descend() {
    const unsigned pos = static_cast<unsigned>(w_.size());
    const unsigned nl = p_.alphabet_size();
    const unsigned runlen = p_.half_length() + 1;
    for (Letter c = (pos == 0 ? Letter(0) : w_[0]); c < nl; ++c) {
      if (pos > 0 && c == inverse_letter(w_[pos - 1])) continue;
      w_.push_back(c);
      bool ok = true;
      if (pos + 1 >= runlen && p_.rotation_with_prefix(&w_[pos + 1 - runlen]) >= 0) ok = false;
      if (ok) {
        bool owned = (pos + 1 <= kShardDepth) ? (shard_index_ == 0) : subtree_owned_;
        if (owned) try_emit();
        if (pos + 1 < L_) {
          if (pos + 1 == kShardDepth) {
            subtree_owned_ = (subtree_counter_++ % shard_count_) == shard_index_;
            if (subtree_owned_) descend();
          } else {
            descend();
          }
        }
      }
      w_.pop_back();
    }
  }

  bool is_least_rotation() const {
    const std::size_t n = w_.size();
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        Letter a = w_[(r + i) % n];
        Letter b = w_[i];
        if (a != b) {
          if (a < b) return false;
          break;
        }
      }
    }
    return true;
  }

  void try_emit() {
    const std::size_t n = w_.size();
    if (n >= 2 && w_[0] == inverse_letter(w_[n - 1])) return;
    const unsigned runlen = p_.half_length() + 1;
    Letter win[64];
    if (n >= runlen) {
      // Wraparound run windows; linear ones were pruned during descent.
      for (std::size_t s = n - runlen + 1; s < n; ++s) {
        for (unsigned j = 0; j < runlen; ++j) win[j] = w_[(s + j) % n];
        if (p_.rotation_with_prefix(win) >= 0) return;
      }
    }
    if (!is_least_rotation()) return;

    // Canonical form and root multiplicity. The fast path applies when no
    // exact-half window exists and the annular-cover test is negative: then
    // the class closure is the rotation orbit alone.
    const unsigned hl = p_.half_length();
    bool needs_closure = p_.fully_pair_covered(w_);
    if (!needs_closure && n >= hl) {
      for (std::size_t s = 0; s < n && !needs_closure; ++s) {
        for (unsigned j = 0; j < hl; ++j) win[j] = w_[(s + j) % n];
        if (p_.half_replacement(win) != nullptr) needs_closure = true;
      }
    }

    const Letter* canon = w_.data();
    std::size_t canon_len = n;
    unsigned mult;
    std::vector<Letter> canon_buf;
    if (!needs_closure) {
      mult = static_cast<unsigned>(n / smallest_period(w_));
    } else {
      CyclicWord cw;
      cw.letters = w_;
      CanonicalClosure cl = canonical_closure(cw, p_);
      if (cl.shrunk) return;  // class lives at a shorter word length
      std::size_t best_period = n;
      canon_buf = cl.members.front();
      for (const auto& m : cl.members) best_period = std::min(best_period, smallest_period(m));
      mult = static_cast<unsigned>(n / best_period);
      canon = canon_buf.data();
      canon_len = canon_buf.size();
    }

    if (!table_.insert_if_new(records_, arena_, canon, canon_len,
                              static_cast<std::uint32_t>(records_.size())))
      return;

    Census::Record rec{};
    rec.word_offset = arena_.size();
    rec.word_length = static_cast<std::uint8_t>(canon_len);
    rec.multiplicity = static_cast<std::uint8_t>(mult);
    HomologyVector h = abelianize(std::vector<Letter>(canon, canon + canon_len), p_.genus());
    for (std::size_t i = 0; i < h.size(); ++i) rec.hom[i] = static_cast<std::int16_t>(h[i]);

    ScalarHP len = class_length(canon, canon_len);
    auto [hi, lo] = len.to_double_double();
    rec.len_hi = hi;
    rec.len_lo = lo;
    rec.len_err = static_cast<float>(len.err());

    arena_.insert(arena_.end(), canon, canon + canon_len);
    records_.push_back(rec);
  }

  ScalarHP class_length(const Letter* w, std::size_t n) {
    try {
      ScalarHP t = abs(tracer_.trace(w, n));
      return length_from_trace(t);
    } catch (const PrecisionExhausted&) {
      // One automatic precision-doubling retry.
      if (!hi_rep_) {
        hi_rep_.emplace(rep_.with_precision(rep_.precision() * 2));
        hi_tracer_.emplace(*hi_rep_);
      }
      ScalarHP t = abs(hi_tracer_->trace(w, n));
      return length_from_trace(t);
    }
  }

  static ScalarHP length_from_trace(const ScalarHP& t) {
    if (!t.certainly_greater(2.0)) {
      if (t.upper_bound() <= 2.0) throw NotHyperbolic("census word with |trace| <= 2");
      throw PrecisionExhausted("trace too close to 2");
    }
    ScalarHP two(2.0, t.precision());
    return two * acosh(t / two);
  }

  const Representation& rep_;
  const Presentation& p_;
  unsigned L_, shard_count_, shard_index_;
  TraceComputer tracer_;
  std::optional<Representation> hi_rep_;
  std::optional<TraceComputer> hi_tracer_;
  std::vector<Letter> w_;
  std::uint64_t subtree_counter_ = 0;
  bool subtree_owned_ = false;
  std::vector<Census::Record> records_;
  std::vector<Letter> arena_;
  DedupTable table_;
};

// Lengths are compared through their 30-digit decimal serialization: that is
// the census interchange resolution, and the double-double low word is not
// pinned below it by a parse round trip.
bool lengths_equal(const Census::Record& a, const Census::Record& b, unsigned prec) {
  if (a.len_err != b.len_err) return false;
  if (a.len_hi == b.len_hi && a.len_lo == b.len_lo) return true;
  ScalarHP la = ScalarHP::from_double_double(a.len_hi, a.len_lo, prec);
  ScalarHP lb = ScalarHP::from_double_double(b.len_hi, b.len_lo, prec);
  return la.to_decimal(30) == lb.to_decimal(30);
}

bool record_fields_equal(const Census::Record& a, const Census::Record& b, unsigned genus,
                         unsigned prec) {
  if (a.word_length != b.word_length || a.multiplicity != b.multiplicity) return false;
  if (!lengths_equal(a, b, prec)) return false;
  for (unsigned i = 0; i < 2 * genus; ++i)
    if (a.hom[i] != b.hom[i]) return false;
  return true;
}

}  // namespace

Census enumerate_census(const Representation& rep, unsigned L, unsigned shard_count,
                        unsigned threads) {
  if (rep.genus() > kMaxCensusGenus)
    throw DomainError("census enumeration supports genus <= " +
                      std::to_string(kMaxCensusGenus));
  if (shard_count < 1) shard_count = 1;
  if (threads < 1) threads = 1;

  std::vector<ShardResult> results(shard_count);
  auto run_range = [&](unsigned lo, unsigned hi) {
    for (unsigned s = lo; s < hi; ++s)
      results[s] = ShardWorker(rep, L, shard_count, s).run();
  };
  if (threads <= 1 || shard_count == 1) {
    run_range(0, shard_count);
  } else {
    threads = std::min(threads, shard_count);
    std::vector<std::thread> pool;
    unsigned per = (shard_count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      unsigned lo = t * per, hi = std::min(shard_count, lo + per);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  Census c;
  c.genus_ = rep.genus();
  c.precision_ = rep.precision();
  c.wl_bound_ = L;
  c.rep_id_ = rep.id();

  if (shard_count == 1) {
    // A single shard has no cross-shard duplicates: sort its records in
    // place against its own arena. Keeps the peak memory at one copy.
    c.arena_ = std::move(results[0].arena);
    c.records_ = std::move(results[0].records);
    std::sort(c.records_.begin(), c.records_.end(),
              [&](const Census::Record& a, const Census::Record& b) {
                if (a.word_length != b.word_length) return a.word_length < b.word_length;
                return std::memcmp(c.arena_.data() + a.word_offset,
                                   c.arena_.data() + b.word_offset, a.word_length) < 0;
              });
    return c;
  }

  std::size_t total = 0, arena_total = 0;
  for (auto& r : results) {
    total += r.records.size();
    arena_total += r.arena.size();
  }
  std::vector<Census::Record> all;
  all.reserve(total);
  std::vector<Letter> arena;
  arena.reserve(arena_total);
  for (auto& r : results) {
    std::uint64_t base = arena.size();
    arena.insert(arena.end(), r.arena.begin(), r.arena.end());
    for (auto rec : r.records) {
      rec.word_offset += base;
      all.push_back(rec);
    }
    r.records = {};
    r.arena = {};
  }

  // Sort by (word length, word bytes); deduplicate across shards.
  std::vector<std::uint32_t> idx(all.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t x, std::uint32_t y) {
    const auto& a = all[x];
    const auto& b = all[y];
    if (a.word_length != b.word_length) return a.word_length < b.word_length;
    return std::memcmp(arena.data() + a.word_offset, arena.data() + b.word_offset,
                       a.word_length) < 0;
  });

  c.records_.reserve(all.size());
  c.arena_.reserve(arena_total);
  const Letter* prev_word = nullptr;
  std::size_t prev_len = 0;
  for (std::uint32_t i : idx) {
    const Census::Record& r = all[i];
    const Letter* wp = arena.data() + r.word_offset;
    if (prev_word && prev_len == r.word_length &&
        std::memcmp(prev_word, wp, prev_len) == 0) {
      assert(record_fields_equal(c.records_.back(), r, c.genus_, c.precision_));
      continue;
    }
    Census::Record rec = r;
    rec.word_offset = c.arena_.size();
    c.arena_.insert(c.arena_.end(), wp, wp + r.word_length);
    c.records_.push_back(rec);
    prev_word = wp;
    prev_len = r.word_length;
  }
  return c;
}

ScalarHP Census::ClassView::length() const {
  const Record& r = c_->records_[i_];
  return ScalarHP::from_double_double(r.len_hi, r.len_lo, c_->precision_, r.len_err);
}

ScalarHP Census::ClassView::norm() const { return exp(length()); }

HomologyVector Census::ClassView::homology_vector() const {
  auto h = homology();
  return HomologyVector(h.begin(), h.end());
}

std::size_t Census::count_at_word_length(unsigned wl) const {
  auto lo = std::lower_bound(records_.begin(), records_.end(), wl,
                             [](const Record& r, unsigned v) { return r.word_length < v; });
  auto hi = std::upper_bound(records_.begin(), records_.end(), wl,
                             [](unsigned v, const Record& r) { return v < r.word_length; });
  return static_cast<std::size_t>(hi - lo);
}

std::optional<std::size_t> Census::find(const CyclicWord& canonical) const {
  std::size_t lo = 0, hi = records_.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const Record& r = records_[mid];
    int c3;
    if (r.word_length != canonical.size())
      c3 = r.word_length < canonical.size() ? -1 : 1;
    else
      c3 = std::memcmp(arena_.data() + r.word_offset, canonical.letters.data(),
                       canonical.size());
    if (c3 == 0) return mid;
    if (c3 < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

ScalarHP Census::completeness_length(double safety_margin) const {
  if (records_.empty()) throw DomainError("completeness threshold of an empty census");
  const Record* best = nullptr;
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->word_length != wl_bound_) break;
    if (!best || it->len_hi < best->len_hi ||
        (it->len_hi == best->len_hi && it->len_lo < best->len_lo))
      best = &*it;
  }
  if (!best) throw DomainError("census has no classes on the word-length frontier");
  ScalarHP l =
      ScalarHP::from_double_double(best->len_hi, best->len_lo, precision_, best->len_err);
  return l - ScalarHP(safety_margin, precision_);
}

void Census::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  out << "geocensus-census v1 rep=" << rep_id_ << " genus=" << genus_
      << " precision=" << precision_ << " L=" << wl_bound_ << " classes=" << records_.size()
      << "\n";
  char errbuf[32];
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& r = records_[i];
    ScalarHP len = ClassView(this, i).length();
    std::string len_str = len.to_decimal(30);
    // The norm column is derived from the 30-digit length string, so that
    // serialization depends only on the interchange-resolution value.
    std::string norm_str = exp(ScalarHP::from_string(len_str, precision_)).to_decimal(30);
    std::snprintf(errbuf, sizeof errbuf, "%.9e", static_cast<double>(r.len_err));
    out << format_word(std::vector<Letter>(arena_.begin() + r.word_offset,
                                           arena_.begin() + r.word_offset + r.word_length))
        << ' ' << static_cast<unsigned>(r.word_length) << ' ' << len_str << ' ' << errbuf
        << ' ' << norm_str << ' ';
    for (unsigned k = 0; k < 2 * genus_; ++k) {
      if (k) out << ',';
      out << r.hom[k];
    }
    out << ' ' << (r.multiplicity == 1 ? 'p' : 'i') << ' '
        << static_cast<unsigned>(r.multiplicity) << "\n";
  }
  if (!out) throw FormatError("write failure on " + path);
}

Census Census::load(const std::string& path, const std::string& expected_rep_id) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open census cache " + path);
  std::string magic, version;
  in >> magic >> version;
  if (magic != "geocensus-census" || version != "v1")
    throw FormatError("not a geocensus v1 cache: " + path);
  Census c;
  std::size_t declared = 0;
  bool have_classes = false;
  std::string tok;
  while (!have_classes && in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw FormatError("malformed census header");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "rep")
      c.rep_id_ = val;
    else if (key == "genus")
      c.genus_ = static_cast<unsigned>(std::stoul(val));
    else if (key == "precision")
      c.precision_ = static_cast<unsigned>(std::stoul(val));
    else if (key == "L")
      c.wl_bound_ = static_cast<unsigned>(std::stoul(val));
    else if (key == "classes") {
      declared = std::stoull(val);
      have_classes = true;
    } else
      throw FormatError("unknown census header field " + key);
  }
  if (!have_classes) throw FormatError("census header missing class count");
  if (c.rep_id_ != expected_rep_id)
    throw FormatError("census cache " + path + " belongs to representation " + c.rep_id_ +
                      ", expected " + expected_rep_id);
  if (c.genus_ < 2 || c.genus_ > kMaxCensusGenus)
    throw FormatError("census cache genus out of range");

  std::string word_s, len_s, err_s, norm_s, hom_s;
  unsigned wl, mult;
  char flag;
  while (in >> word_s >> wl >> len_s >> err_s >> norm_s >> hom_s >> flag >> mult) {
    Record r{};
    Word w = parse_word(word_s, c.genus_);
    if (w.size() != wl || wl == 0 || wl > 255)
      throw FormatError("inconsistent word length in census row: " + word_s);
    r.word_offset = c.arena_.size();
    c.arena_.insert(c.arena_.end(), w.letters.begin(), w.letters.end());
    r.word_length = static_cast<std::uint8_t>(wl);
    double err = std::strtod(err_s.c_str(), nullptr);
    ScalarHP len = ScalarHP::from_string(len_s, c.precision_, err);
    auto [hi, lo] = len.to_double_double();
    r.len_hi = hi;
    r.len_lo = lo;
    r.len_err = static_cast<float>(err);
    HomologyVector h = parse_homology(hom_s, c.genus_);
    for (std::size_t i = 0; i < h.size(); ++i) r.hom[i] = static_cast<std::int16_t>(h[i]);
    if (mult < 1 || mult > 255 || (flag == 'p') != (mult == 1))
      throw FormatError("inconsistent primitivity flag in census row: " + word_s);
    r.multiplicity = static_cast<std::uint8_t>(mult);
    if (!c.records_.empty()) {
      const Record& prev = c.records_.back();
      bool ordered = prev.word_length < r.word_length ||
                     (prev.word_length == r.word_length &&
                      std::memcmp(c.arena_.data() + prev.word_offset,
                                  c.arena_.data() + r.word_offset, wl) < 0);
      if (!ordered) throw FormatError("census rows out of order (corrupt cache?)");
    }
    c.records_.push_back(r);
  }
  if (c.records_.size() != declared)
    throw FormatError("census cache truncated: declared " + std::to_string(declared) +
                      " classes, found " + std::to_string(c.records_.size()));
  return c;
}

bool Census::operator==(const Census& o) const {
  if (genus_ != o.genus_ || precision_ != o.precision_ || wl_bound_ != o.wl_bound_ ||
      rep_id_ != o.rep_id_ || records_.size() != o.records_.size())
    return false;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& a = records_[i];
    const Record& b = o.records_[i];
    if (!record_fields_equal(a, b, genus_, precision_)) return false;
    if (std::memcmp(arena_.data() + a.word_offset, o.arena_.data() + b.word_offset,
                    a.word_length) != 0)
      return false;
  }
  return true;
}

Census merge(const Census& a, const Census& b) {
  if (a.rep_id_ != b.rep_id_)
    throw IncompatibleCensus("representation mismatch: " + a.rep_id_ + " vs " + b.rep_id_);
  if (a.precision_ != b.precision_) throw IncompatibleCensus("precision mismatch");
  if (a.genus_ != b.genus_) throw IncompatibleCensus("genus mismatch");

  Census c;
  c.genus_ = a.genus_;
  c.precision_ = a.precision_;
  c.wl_bound_ = std::max(a.wl_bound_, b.wl_bound_);
  c.rep_id_ = a.rep_id_;
  std::size_t i = 0, j = 0;
  auto push = [&](const Census& src, std::size_t k) {
    Census::Record r = src.records_[k];
    const Letter* wp = src.arena_.data() + r.word_offset;
    r.word_offset = c.arena_.size();
    c.arena_.insert(c.arena_.end(), wp, wp + r.word_length);
    c.records_.push_back(r);
  };
  while (i < a.records_.size() || j < b.records_.size()) {
    if (i == a.records_.size()) {
      push(b, j++);
      continue;
    }
    if (j == b.records_.size()) {
      push(a, i++);
      continue;
    }
    const auto& ra = a.records_[i];
    const auto& rb = b.records_[j];
    int c3;
    if (ra.word_length != rb.word_length)
      c3 = ra.word_length < rb.word_length ? -1 : 1;
    else
      c3 = std::memcmp(a.arena_.data() + ra.word_offset, b.arena_.data() + rb.word_offset,
                       ra.word_length);
    if (c3 < 0)
      push(a, i++);
    else if (c3 > 0)
      push(b, j++);
    else {
      push(a, i++);
      ++j;
    }
  }
  return c;
}

bool brute_conjugacy_oracle(const Word& u, const Word& v, const Presentation& p,
                            unsigned radius) {
  Word ur = free_reduce(u), vr = free_reduce(v);
  if (abelianize(ur, p.genus()) != abelianize(vr, p.genus())) return false;
  Word vinv = inverse(vr);

  std::vector<Letter> g;
  auto test = [&]() {
    std::vector<Letter> cand;
    cand.reserve(2 * g.size() + ur.size() + vinv.size());
    cand.insert(cand.end(), g.begin(), g.end());
    cand.insert(cand.end(), ur.letters.begin(), ur.letters.end());
    for (auto it = g.rbegin(); it != g.rend(); ++it) cand.push_back(inverse_letter(*it));
    cand.insert(cand.end(), vinv.letters.begin(), vinv.letters.end());
    return dehn_reduce(Word{std::move(cand)}, p).empty();
  };

  const unsigned nl = p.alphabet_size();
  for (unsigned len = 0; len <= radius; ++len) {
    if (len == 0) {
      if (test()) return true;
      continue;
    }
    // Odometer over freely reduced conjugators of exactly `len` letters.
    g.assign(len, 0);
    for (unsigned i = 1; i < len; ++i)
      if (g[i] == inverse_letter(g[i - 1])) g[i] = 1;
    for (;;) {
      if (test()) return true;
      int pos = static_cast<int>(len) - 1;
      for (;;) {
        if (pos < 0) break;
        Letter next = static_cast<Letter>(g[pos] + 1);
        while (next < nl && pos > 0 && next == inverse_letter(g[pos - 1]))
          next = static_cast<Letter>(next + 1);
        if (next < nl) {
          g[pos] = next;
          for (unsigned k = pos + 1; k < len; ++k) {
            g[k] = 0;
            if (g[k] == inverse_letter(g[k - 1])) g[k] = 1;
          }
          break;
        }
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return false;
}

}  // namespace geocensus
