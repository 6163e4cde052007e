#ifndef GEOCENSUS_WORD_HPP
#define GEOCENSUS_WORD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace geocensus {

// A letter is an index into the alphabet a1, a1^-1, b1, b1^-1, a2, ...
// Encoding: letter = 2 * generator + (inverse ? 1 : 0) where generators are
// numbered a1=0, b1=1, a2=2, b2=3, ... (interleaved handle order).
// This is exactly the shortlex letter order a1 < a1^-1 < b1 < b1^-1 < ...
// and makes inversion a single bit flip.
using Letter = std::uint8_t;

constexpr Letter inverse_letter(Letter l) { return l ^ 1u; }
constexpr unsigned generator_of(Letter l) { return l >> 1u; }
constexpr bool is_inverse(Letter l) { return (l & 1u) != 0; }

// Homology coordinate of a letter's generator, in the (a1..ag, b1..bg)
// coordinate order used for H_1(M,Z) = Z^{2g}.
constexpr unsigned homology_coordinate(Letter l, unsigned genus) {
  unsigned gen = generator_of(l);
  unsigned handle = gen >> 1u;
  return (gen & 1u) ? genus + handle : handle;
}

// Exponent-sum vector in Z^{2g}; coordinates ordered (a1..ag, b1..bg).
using HomologyVector = std::vector<std::int32_t>;

// A freely reduced word over the 4g-letter alphabet.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const Word&) const = default;
};

// A cyclically reduced word considered up to rotation, stored in its
// shortlex-least rotation.
struct CyclicWord {
  std::vector<Letter> letters;

  CyclicWord() = default;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const CyclicWord&) const = default;
  bool operator<(const CyclicWord& o) const {
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    return letters < o.letters;
  }
};

bool is_freely_reduced(const std::vector<Letter>& letters);
bool is_cyclically_reduced(const std::vector<Letter>& letters);

// Shortlex-least rotation of a letter sequence (Booth's algorithm).
std::vector<Letter> least_rotation(const std::vector<Letter>& letters);

// Wraps a letter sequence into a CyclicWord, normalizing the rotation.
// Precondition: cyclically freely reduced.
CyclicWord make_cyclic(std::vector<Letter> letters);

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

// Smallest p dividing n with w[i] == w[(i+p) mod n] for all i.
std::size_t smallest_period(const std::vector<Letter>& letters);

// Serialization: "a1b1A1B1..." with capitals marking inverses.
std::string format_word(const std::vector<Letter>& letters);
inline std::string format_word(const Word& w) { return format_word(w.letters); }
inline std::string format_word(const CyclicWord& w) { return format_word(w.letters); }

// Parses the compact string form; throws FormatError on malformed input or a
// generator index exceeding the genus.
Word parse_word(const std::string& text, unsigned genus);

std::string format_homology(const HomologyVector& h);
HomologyVector parse_homology(const std::string& text, unsigned genus);

}  // namespace geocensus

#endif
