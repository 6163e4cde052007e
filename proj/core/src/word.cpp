#include "geocensus/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "geocensus/errors.hpp"

namespace geocensus {

bool is_freely_reduced(const std::vector<Letter>& letters) {
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (letters[i] == inverse_letter(letters[i - 1])) return false;
  return true;
}

bool is_cyclically_reduced(const std::vector<Letter>& letters) {
  if (!is_freely_reduced(letters)) return false;
  if (letters.size() >= 2 && letters.front() == inverse_letter(letters.back())) return false;
  return true;
}

std::vector<Letter> least_rotation(const std::vector<Letter>& letters) {
  const std::size_t n = letters.size();
  if (n <= 1) return letters;
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      Letter a = letters[(r + i) % n];
      Letter b = letters[(best + i) % n];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = letters[(best + i) % n];
  return out;
}

CyclicWord make_cyclic(std::vector<Letter> letters) {
  CyclicWord c;
  c.letters = least_rotation(letters);
  return c;
}

Word inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(inverse_letter(*it));
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

std::size_t smallest_period(const std::vector<Letter>& letters) {
  const std::size_t n = letters.size();
  for (std::size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i + p < n && ok; ++i) ok = letters[i] == letters[i + p];
    if (ok) return p;
  }
  return n;
}

std::string format_word(const std::vector<Letter>& letters) {
  if (letters.empty()) return "-";
  std::string s;
  for (Letter l : letters) {
    unsigned gen = generator_of(l);
    char base = (gen & 1u) ? 'b' : 'a';
    if (is_inverse(l)) base = static_cast<char>(base - 'a' + 'A');
    s += base;
    s += std::to_string(gen / 2 + 1);
  }
  return s;
}

Word parse_word(const std::string& text, unsigned genus) {
  Word w;
  if (text == "-" || text.empty()) return w;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i++];
    bool inv = false;
    unsigned which;  // 0 = a, 1 = b
    if (c == 'a' || c == 'A') which = 0;
    else if (c == 'b' || c == 'B') which = 1;
    else throw FormatError("bad letter '" + std::string(1, c) + "' in word \"" + text + "\"");
    if (c == 'A' || c == 'B') inv = true;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw FormatError("missing generator index in word \"" + text + "\"");
    unsigned long idx = std::strtoul(text.substr(start, i - start).c_str(), nullptr, 10);
    if (idx < 1 || idx > genus)
      throw FormatError("generator index out of range in word \"" + text + "\"");
    unsigned gen = 2 * static_cast<unsigned>(idx - 1) + which;
    w.letters.push_back(static_cast<Letter>(2 * gen + (inv ? 1 : 0)));
  }
  return w;
}

std::string format_homology(const HomologyVector& h) {
  std::string s;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(h[i]);
  }
  return s;
}

HomologyVector parse_homology(const std::string& text, unsigned genus) {
  HomologyVector h;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    long v = std::strtol(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0')
      throw FormatError("bad homology component \"" + item + "\"");
    h.push_back(static_cast<std::int32_t>(v));
  }
  if (h.size() != 2 * genus)
    throw FormatError("homology vector must have exactly " + std::to_string(2 * genus) +
                      " components, got " + std::to_string(h.size()));
  return h;
}

}  // namespace geocensus
