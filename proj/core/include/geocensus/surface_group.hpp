#ifndef GEOCENSUS_SURFACE_GROUP_HPP
#define GEOCENSUS_SURFACE_GROUP_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geocensus/word.hpp"

namespace geocensus {

// The one-relator presentation of the genus-g surface group,
//   < a1,b1,...,ag,bg | [a1,b1][a2,b2]...[ag,bg] >,
// with the relator index precomputed for constant-time overlap scanning:
// every (2g+1)-letter window that starts a more-than-half relator run, and
// every 2g-letter window that is an exact half of a relator rotation, is
// tabulated (for genus 2 as flat lookup tables, generically as hash maps).
class Presentation {
 public:
  explicit Presentation(unsigned genus);

  unsigned genus() const { return genus_; }
  unsigned alphabet_size() const { return 4 * genus_; }
  const Word& relator() const { return relator_; }
  unsigned relator_length() const { return 4 * genus_; }
  unsigned half_length() const { return 2 * genus_; }

  // Rotations of the relator and its inverse; index < 4g rotates the relator,
  // index >= 4g rotates the inverse.
  const std::vector<Letter>& rotation(unsigned idx) const { return rotations_[idx]; }
  unsigned rotation_count() const { return static_cast<unsigned>(rotations_.size()); }

  // Does the (2g+1)-letter window at w start a more-than-half relator run?
  // Returns the rotation index, or -1.
  int rotation_with_prefix(const Letter* w) const {
    if (genus_ == 2) {
      std::uint32_t key = 0;
      for (int i = 0; i < 5; ++i) key = key * 8 + w[i];
      return lut_run_[key] - 1;
    }
    auto it = prefix_map_.find(pack_window(w, 2 * genus_ + 1));
    return it == prefix_map_.end() ? -1 : static_cast<int>(it->second);
  }

  // If the 2g-letter window at w is exactly half of a relator rotation,
  // returns the equally long replacement (the inverse of the other half).
  const std::vector<Letter>* half_replacement(const Letter* w) const {
    if (genus_ == 2) {
      std::uint32_t key = 0;
      for (int i = 0; i < 4; ++i) key = key * 8 + w[i];
      int idx = lut_half_[key] - 1;
      return idx < 0 ? nullptr : &half_replacements_[idx];
    }
    auto it = half_map_.find(pack_window(w, 2 * genus_));
    return it == half_map_.end() ? nullptr : &half_replacements_[it->second];
  }

  // True if some cyclic window of the sequence starts a more-than-half run.
  bool has_long_run_cyclic(const std::vector<Letter>& letters) const;

  // Is (a, b) a two-letter subword of some relator rotation?
  bool is_relator_pair(Letter a, Letter b) const {
    if (genus_ == 2) return lut_pair_[a * 8 + b] != 0;
    return pair_set_.count(pack_window(std::array<Letter, 2>{a, b}.data(), 2)) > 0;
  }

  // True when every cyclic position of the word lies inside a relator
  // two-letter run. Every annular conjugacy diagram between equal-length
  // cyclically Dehn-reduced words covers both boundaries with relator arcs of
  // length >= 2, so this is a necessary condition for a word to admit a
  // conjugate of the same length that rotations and half swaps cannot reach.
  bool fully_pair_covered(const std::vector<Letter>& letters) const;

  // Relator rotations whose first m letters (m = 2 or 3) match the window;
  // nullptr when none do. Used for the annular cell expansions in
  // canonical_closure.
  const std::vector<unsigned>* rotations_with_short_prefix(const Letter* w, unsigned m) const {
    const auto& map = m == 2 ? prefix2_map_ : prefix3_map_;
    auto it = map.find(pack_window(w, m));
    return it == map.end() ? nullptr : &it->second;
  }

 private:
  static std::string pack_window(const Letter* w, unsigned len) {
    return std::string(reinterpret_cast<const char*>(w), len);
  }

  unsigned genus_;
  Word relator_;
  std::vector<std::vector<Letter>> rotations_;
  std::vector<std::vector<Letter>> half_replacements_;
  std::unordered_map<std::string, unsigned> prefix_map_;
  std::unordered_map<std::string, unsigned> half_map_;
  std::unordered_map<std::string, char> pair_set_;
  std::unordered_map<std::string, std::vector<unsigned>> prefix2_map_;
  std::unordered_map<std::string, std::vector<unsigned>> prefix3_map_;
  std::vector<std::int16_t> lut_run_;   // genus 2: 8^5 entries
  std::vector<std::int16_t> lut_half_;  // genus 2: 8^4 entries
  std::vector<std::int16_t> lut_pair_;  // genus 2: 8^2 entries
};

// Free reduction: cancels adjacent letter-inverse pairs. Idempotent.
Word free_reduce(const Word& w);

// Dehn's algorithm for the word problem: repeatedly replaces any run of more
// than half a relator rotation by the shorter complement. The result is
// geodesic in the Cayley graph and empty iff w represents the identity.
Word dehn_reduce(const Word& w, const Presentation& p);

// Conjugacy preprocessing: strips conjugation, then removes more-than-half
// relator runs across the wraparound until none remain. The result is
// cyclically reduced, cyclically Dehn-reduced, and conjugate to w.
CyclicWord cyclic_reduce(const Word& w, const Presentation& p);

// All shortlex-least rotations of words reachable from c by exact-half
// relator swaps (the length-preserving closure). If a swap ever exposes a
// shorter conjugate (which the small-cancellation theory rules out for
// cyclically Dehn-reduced input), the shorter word is reported instead.
struct CanonicalClosure {
  std::vector<std::vector<Letter>> members;  // sorted, deduplicated
  std::optional<CyclicWord> shrunk;          // set iff a shorter conjugate appeared
};
CanonicalClosure canonical_closure(const CyclicWord& c, const Presentation& p);

// The unique conjugacy-class representative: the shortlex-least element of
// the closure of {rotations of c} under exact-half-relator swaps.
// Two cyclically Dehn-reduced words are conjugate iff their canonical forms
// are letter-identical (validated against the brute-force oracle).
CyclicWord canonicalize(const CyclicWord& c, const Presentation& p);

// Writes c = root^multiplicity with root not a proper power. The period is
// detected on the letter sequences of the whole closure, so a class is
// recognized as a power whenever any minimal representative is periodic.
std::pair<CyclicWord, unsigned> primitive_root(const CyclicWord& c, const Presentation& p);

// Exponent sums with respect to (a1..ag, b1..bg).
HomologyVector abelianize(const std::vector<Letter>& letters, unsigned genus);
inline HomologyVector abelianize(const Word& w, unsigned genus) {
  return abelianize(w.letters, genus);
}
inline HomologyVector abelianize(const CyclicWord& w, unsigned genus) {
  return abelianize(w.letters, genus);
}

// The unitary character chi_eps evaluated on a homology class:
// exp(2 pi i <h, eps>). Integer eps gives exactly 1.
std::complex<double> eval_character(const HomologyVector& h, const std::vector<double>& eps);

}  // namespace geocensus

#endif
