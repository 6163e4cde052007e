#ifndef GEOCENSUS_CENSUS_HPP
#define GEOCENSUS_CENSUS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geocensus/representation.hpp"
#include "geocensus/surface_group.hpp"
#include "geocensus/word.hpp"

namespace geocensus {

// Census enumeration stores homology in fixed-width rows; this caps the genus
// of enumerable groups (the algebra and predictor modules have no such cap).
inline constexpr unsigned kMaxCensusGenus = 4;

// The complete set of conjugacy classes of the surface group up to a word
// length bound, with geodesic lengths, homology classes, and primitivity.
// Records are kept sorted by (word length, canonical word), which makes saved
// caches byte-identical regardless of shard or thread count.
class Census {
 public:
  struct Record {
    std::uint64_t word_offset;   // into the letter arena
    double len_hi;               // geodesic length, double-double
    double len_lo;
    float len_err;               // absolute error bound
    std::uint8_t word_length;
    std::uint8_t multiplicity;   // root multiplicity; 1 = primitive
    std::int16_t hom[2 * kMaxCensusGenus];
  };

  // Read-only view of one class.
  class ClassView {
   public:
    ClassView(const Census* c, std::size_t i) : c_(c), i_(i) {}
    std::span<const Letter> letters() const {
      const Record& r = c_->records_[i_];
      return {c_->arena_.data() + r.word_offset, r.word_length};
    }
    CyclicWord word() const {
      CyclicWord w;
      auto ls = letters();
      w.letters.assign(ls.begin(), ls.end());
      return w;
    }
    unsigned word_length() const { return c_->records_[i_].word_length; }
    unsigned multiplicity() const { return c_->records_[i_].multiplicity; }
    bool primitive() const { return multiplicity() == 1; }
    double length_d() const { return c_->records_[i_].len_hi; }
    double length_err() const { return c_->records_[i_].len_err; }
    ScalarHP length() const;
    ScalarHP norm() const;
    std::span<const std::int16_t> homology() const {
      return {c_->records_[i_].hom, 2 * c_->genus_};
    }
    HomologyVector homology_vector() const;

   private:
    const Census* c_;
    std::size_t i_;
  };

  std::size_t size() const { return records_.size(); }
  ClassView operator[](std::size_t i) const { return ClassView(this, i); }
  unsigned genus() const { return genus_; }
  unsigned precision() const { return precision_; }
  unsigned word_length_bound() const { return wl_bound_; }
  const std::string& representation_id() const { return rep_id_; }
  std::size_t count_at_word_length(unsigned wl) const;

  std::optional<std::size_t> find(const CyclicWord& canonical) const;

  // Certified completeness threshold: the minimum geodesic length on the word
  // length frontier, minus the safety margin. Counting queries with
  // log x <= l* see every class. Throws DomainError on an empty census.
  ScalarHP completeness_length(double safety_margin = 0.0) const;

  void save(const std::string& path) const;
  static Census load(const std::string& path, const std::string& expected_rep_id);

  bool operator==(const Census& o) const;

  // Internal: used by the builder and merge.
  const std::vector<Record>& records() const { return records_; }
  const std::vector<Letter>& arena() const { return arena_; }

 private:
  friend Census enumerate_census(const Representation&, unsigned, unsigned, unsigned);
  friend Census merge(const Census&, const Census&);

  unsigned genus_ = 2;
  unsigned precision_ = 0;
  unsigned wl_bound_ = 0;
  std::string rep_id_;
  std::vector<Record> records_;
  std::vector<Letter> arena_;
};

// Enumerates every conjugacy class of word length 1..L: depth-first necklace
// generation with free-reduction, wraparound and relator-run pruning, then
// canonical-form deduplication. Lengths are always computed from the
// canonical representative, so the result is independent of traversal order,
// shard count, and thread count. A PrecisionExhausted length computation is
// retried once at doubled precision before propagating.
Census enumerate_census(const Representation& rep, unsigned L, unsigned shard_count = 1,
                        unsigned threads = 1);

// Set union keyed on canonical words; associative, commutative, idempotent.
// Throws IncompatibleCensus unless representation id, precision and genus all
// match.
Census merge(const Census& a, const Census& b);

// True iff g u g^-1 = v in the group for some freely reduced conjugator g of
// length <= radius; equality is decided by Dehn-reducing g u g^-1 v^-1 to the
// empty word. Exhaustive search, intended for validation at small radius.
bool brute_conjugacy_oracle(const Word& u, const Word& v, const Presentation& p,
                            unsigned radius);

}  // namespace geocensus

#endif
