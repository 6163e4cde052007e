#include "geocensus/surface_group.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <set>

#include "geocensus/errors.hpp"

namespace geocensus {

namespace {

std::vector<Letter> invert_letters(const std::vector<Letter>& w) {
  std::vector<Letter> out(w.rbegin(), w.rend());
  for (auto& l : out) l = inverse_letter(l);
  return out;
}

// Free reduction and conjugation stripping only (no relator moves).
std::vector<Letter> free_cyclic_letters(std::vector<Letter> v) {
  v = free_reduce(Word{std::move(v)}).letters;
  while (v.size() >= 2 && v.front() == inverse_letter(v.back())) {
    v.erase(v.begin());
    v.pop_back();
  }
  return v;
}

}  // namespace

Presentation::Presentation(unsigned genus) : genus_(genus) {
  if (genus < 2)
    throw DomainError("surface presentation requires genus >= 2, got " + std::to_string(genus));

  // Relator [a1,b1][a2,b2]...[ag,bg]; letter codes 4h, 4h+2, 4h+1, 4h+3.
  for (unsigned h = 0; h < genus; ++h) {
    Letter a = static_cast<Letter>(4 * h);
    Letter b = static_cast<Letter>(4 * h + 2);
    relator_.letters.push_back(a);
    relator_.letters.push_back(b);
    relator_.letters.push_back(inverse_letter(a));
    relator_.letters.push_back(inverse_letter(b));
  }
  assert(is_cyclically_reduced(relator_.letters));
  assert(abelianize(relator_, genus_) == HomologyVector(2 * genus_, 0));

  const unsigned rl = relator_length();
  auto add_rotations = [&](const std::vector<Letter>& base) {
    for (unsigned r = 0; r < rl; ++r) {
      std::vector<Letter> rot(rl);
      for (unsigned i = 0; i < rl; ++i) rot[i] = base[(r + i) % rl];
      rotations_.push_back(std::move(rot));
    }
  };
  add_rotations(relator_.letters);
  add_rotations(invert_letters(relator_.letters));

  const unsigned hl = half_length();
  for (unsigned idx = 0; idx < rotations_.size(); ++idx) {
    const auto& rot = rotations_[idx];
    std::string pkey = pack_window(rot.data(), hl + 1);
    auto [pit, pinserted] = prefix_map_.emplace(pkey, idx);
    (void)pit;
    if (!pinserted)
      throw DomainError("relator rotations do not have distinct long-run prefixes");
    std::string hkey = pack_window(rot.data(), hl);
    std::vector<Letter> second_half(rot.begin() + hl, rot.end());
    half_replacements_.push_back(invert_letters(second_half));
    auto [hit, hinserted] = half_map_.emplace(hkey, static_cast<unsigned>(half_replacements_.size() - 1));
    (void)hit;
    if (!hinserted)
      throw DomainError("relator rotations do not have distinct half prefixes");
  }

  // Two-letter relator windows (cyclic), for the annular-cover test, and the
  // short-prefix index used by the annular cell expansions.
  for (unsigned idx = 0; idx < rotations_.size(); ++idx) {
    const auto& rot = rotations_[idx];
    pair_set_.emplace(pack_window(rot.data(), 2), 1);
    prefix2_map_[pack_window(rot.data(), 2)].push_back(idx);
    prefix3_map_[pack_window(rot.data(), 3)].push_back(idx);
  }

  if (genus_ == 2) {
    lut_run_.assign(8 * 8 * 8 * 8 * 8, 0);
    lut_half_.assign(8 * 8 * 8 * 8, 0);
    lut_pair_.assign(8 * 8, 0);
    for (auto& [key, idx] : prefix_map_) {
      std::uint32_t k = 0;
      for (char c : key) k = k * 8 + static_cast<std::uint8_t>(c);
      lut_run_[k] = static_cast<std::int16_t>(idx + 1);
    }
    for (auto& [key, idx] : half_map_) {
      std::uint32_t k = 0;
      for (char c : key) k = k * 8 + static_cast<std::uint8_t>(c);
      lut_half_[k] = static_cast<std::int16_t>(idx + 1);
    }
    for (auto& [key, v] : pair_set_) {
      (void)v;
      lut_pair_[static_cast<std::uint8_t>(key[0]) * 8 + static_cast<std::uint8_t>(key[1])] = 1;
    }
  }

}

bool Presentation::fully_pair_covered(const std::vector<Letter>& letters) const {
  const std::size_t n = letters.size();
  if (n < 6) return false;  // equal-length annular rewrites need length >= 6
  std::vector<char> covered(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_relator_pair(letters[i], letters[(i + 1) % n])) {
      covered[i] = 1;
      covered[(i + 1) % n] = 1;
    }
  }
  for (char c : covered)
    if (!c) return false;
  return true;
}

bool Presentation::has_long_run_cyclic(const std::vector<Letter>& letters) const {
  const std::size_t n = letters.size();
  const unsigned wlen = half_length() + 1;
  if (n < wlen) return false;
  std::vector<Letter> window(wlen);
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned j = 0; j < wlen; ++j) window[j] = letters[(i + j) % n];
    if (rotation_with_prefix(window.data()) >= 0) return true;
  }
  return false;
}

Word free_reduce(const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (Letter l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == inverse_letter(l))
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

Word dehn_reduce(const Word& w, const Presentation& p) {
  Word cur = free_reduce(w);
  const unsigned wlen = p.half_length() + 1;  // 2g+1, the shortest >half run
  const unsigned rl = p.relator_length();
  bool changed = true;
  while (changed) {
    changed = false;
    const auto& ls = cur.letters;
    if (ls.size() < wlen) break;
    for (std::size_t i = 0; i + wlen <= ls.size(); ++i) {
      int rot_idx = p.rotation_with_prefix(&ls[i]);
      if (rot_idx < 0) continue;
      const auto& rot = p.rotation(static_cast<unsigned>(rot_idx));
      // Extend the run as far as the rotation allows.
      std::size_t m = wlen;
      while (i + m < ls.size() && m < rl && ls[i + m] == rot[m]) ++m;
      // Replace the run by the inverse of the rotation's remainder.
      std::vector<Letter> next(ls.begin(), ls.begin() + i);
      for (std::size_t j = rl; j > m; --j) next.push_back(inverse_letter(rot[j - 1]));
      next.insert(next.end(), ls.begin() + i + m, ls.end());
      cur = free_reduce(Word(std::move(next)));
      changed = true;
      break;
    }
  }
  return cur;
}

CyclicWord cyclic_reduce(const Word& w, const Presentation& p) {
  std::vector<Letter> v = free_reduce(w).letters;
  const unsigned wlen = p.half_length() + 1;
  const unsigned rl = p.relator_length();

  for (;;) {
    // Strip conjugation: x u x^-1 ~ u.
    while (v.size() >= 2 && v.front() == inverse_letter(v.back())) {
      v.erase(v.begin());
      v.pop_back();
    }
    if (v.size() < wlen) break;

    // Hunt for a more-than-half run in the cyclic word (wraparound included).
    const std::size_t n = v.size();
    std::vector<Letter> window(wlen);
    int found_at = -1, rot_idx = -1;
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned j = 0; j < wlen; ++j) window[j] = v[(i + j) % n];
      rot_idx = p.rotation_with_prefix(window.data());
      if (rot_idx >= 0) {
        found_at = static_cast<int>(i);
        break;
      }
    }
    if (found_at < 0) break;

    // Rotate so the run is linear at the front, extend, replace.
    std::rotate(v.begin(), v.begin() + found_at, v.end());
    const auto& rot = p.rotation(static_cast<unsigned>(rot_idx));
    std::size_t m = wlen;
    while (m < std::min<std::size_t>(n, rl) && v[m % n] == rot[m]) ++m;
    if (m >= n) {
      // The whole cyclic word lies inside one relator rotation: it is either
      // the full relator (identity) or shorter than a run can be.
      if (n == rl) return CyclicWord{};
      m = n;
    }
    std::vector<Letter> next;
    for (std::size_t j = rl; j > m; --j) next.push_back(inverse_letter(rot[j - 1]));
    next.insert(next.end(), v.begin() + m, v.end());
    v = free_reduce(Word(std::move(next))).letters;
  }
  return make_cyclic(std::move(v));
}

CanonicalClosure canonical_closure(const CyclicWord& c, const Presentation& p) {
  CanonicalClosure out;
  const std::size_t n = c.size();
  const unsigned hl = p.half_length();
  std::set<std::vector<Letter>> seen;
  std::deque<std::vector<Letter>> queue;
  seen.insert(c.letters);
  queue.push_back(c.letters);

  auto admit = [&](std::vector<Letter>&& cand) -> bool {
    // Returns false when a shorter conjugate surfaced (closure aborts).
    if (cand.size() < n) {
      out.shrunk = make_cyclic(std::move(cand));
      return false;
    }
    std::vector<Letter> norm = least_rotation(cand);
    if (seen.insert(norm).second) queue.push_back(std::move(norm));
    return true;
  };

  while (!queue.empty()) {
    std::vector<Letter> cur = std::move(queue.front());
    queue.pop_front();

    // Exact-half relator swaps: length-preserving respellings.
    if (n >= hl) {
      std::vector<Letter> window(hl);
      for (std::size_t i = 0; i < n; ++i) {
        for (unsigned j = 0; j < hl; ++j) window[j] = cur[(i + j) % n];
        const std::vector<Letter>* repl = p.half_replacement(window.data());
        if (!repl) continue;
        std::vector<Letter> cand = *repl;
        cand.reserve(n);
        for (std::size_t j = hl; j < n; ++j) cand.push_back(cur[(i + j) % n]);
        if (!is_cyclically_reduced(cand) || p.has_long_run_cyclic(cand)) {
          // Not reachable for cyclically Dehn-reduced input; resolved by
          // dropping to the shorter conjugate.
          CyclicWord red = cyclic_reduce(Word(std::move(cand)), p);
          out.shrunk = red;
          out.members.assign(seen.begin(), seen.end());
          return out;
        }
        if (!admit(std::move(cand))) {
          out.members.assign(seen.begin(), seen.end());
          return out;
        }
      }
    }

    // Annular cell expansions: when every position sits in a relator pair,
    // the word may have same-length conjugates that no rotation or half swap
    // reaches (annular diagrams whose cells meet along single-letter pieces).
    // Peeling one cell replaces a short relator run by its longer complement;
    // the cyclic Dehn reduction then contracts across the neighboring cells.
    // Survivors of the original length are new spellings of the class.
    if (p.fully_pair_covered(cur)) {
      const unsigned rl = p.relator_length();
      const unsigned runlen = hl + 1;
      Letter win[3];
      for (std::size_t i = 0; i < n; ++i) {
        for (unsigned m = 2; m <= 3 && m < n; ++m) {
          for (unsigned j = 0; j < m; ++j) win[j] = cur[(i + j) % n];
          const std::vector<unsigned>* rots = p.rotations_with_short_prefix(win, m);
          if (!rots) continue;
          for (unsigned idx : *rots) {
            const auto& rot = p.rotation(idx);
            std::vector<Letter> cand;
            cand.reserve(n + rl - 2 * m);
            for (unsigned j = rl; j > m; --j) cand.push_back(inverse_letter(rot[j - 1]));
            for (std::size_t j = m; j < n; ++j) cand.push_back(cur[(i + j) % n]);
            cand = free_cyclic_letters(std::move(cand));
            if (cand.size() <= n) {
              // Degenerate expansion; fold straight back in.
              CyclicWord red = cyclic_reduce(Word(std::move(cand)), p);
              if (!admit(std::vector<Letter>(red.letters))) goto aborted;
              continue;
            }
            // The expanded word holds the re-formed cell next to its
            // neighbors: branch over every possible first contraction (the
            // deterministic reducer would always undo the expansion).
            {
              const std::size_t cn = cand.size();
              std::vector<Letter> cwin(runlen);
              for (std::size_t s = 0; s < cn; ++s) {
                for (unsigned j = 0; j < runlen; ++j) cwin[j] = cand[(s + j) % cn];
                int ridx = p.rotation_with_prefix(cwin.data());
                if (ridx < 0) continue;
                const auto& crot = p.rotation(static_cast<unsigned>(ridx));
                std::size_t cm = runlen;
                while (cm < std::min<std::size_t>(cn, rl) && cand[(s + cm) % cn] == crot[cm])
                  ++cm;
                std::vector<Letter> next;
                for (std::size_t j = rl; j > cm; --j)
                  next.push_back(inverse_letter(crot[j - 1]));
                for (std::size_t j = cm; j < cn; ++j) next.push_back(cand[(s + j) % cn]);
                CyclicWord red = cyclic_reduce(Word(std::move(next)), p);
                if (red.size() > n) continue;
                if (!admit(std::vector<Letter>(red.letters))) goto aborted;
              }
            }
          }
        }
      }
    }
    continue;
  aborted:
    out.members.assign(seen.begin(), seen.end());
    return out;
  }
  out.members.assign(seen.begin(), seen.end());
  return out;
}

CyclicWord canonicalize(const CyclicWord& c, const Presentation& p) {
  CanonicalClosure cl = canonical_closure(c, p);
  if (cl.shrunk) return canonicalize(*cl.shrunk, p);
  CyclicWord best;
  best.letters = cl.members.front();  // members are sorted; all same length
  return best;
}

std::pair<CyclicWord, unsigned> primitive_root(const CyclicWord& c, const Presentation& p) {
  if (c.empty()) return {c, 1};
  CanonicalClosure cl = canonical_closure(c, p);
  if (cl.shrunk) return primitive_root(canonicalize(*cl.shrunk, p), p);
  const std::size_t n = c.size();
  std::size_t best_period = n;
  const std::vector<Letter>* best_member = &cl.members.front();
  for (const auto& m : cl.members) {
    std::size_t period = smallest_period(m);
    if (period < best_period) {
      best_period = period;
      best_member = &m;
    }
  }
  unsigned mult = static_cast<unsigned>(n / best_period);
  std::vector<Letter> root(best_member->begin(), best_member->begin() + best_period);
  return {canonicalize(make_cyclic(std::move(root)), p), mult};
}

HomologyVector abelianize(const std::vector<Letter>& letters, unsigned genus) {
  HomologyVector h(2 * genus, 0);
  for (Letter l : letters) h[homology_coordinate(l, genus)] += is_inverse(l) ? -1 : 1;
  return h;
}

std::complex<double> eval_character(const HomologyVector& h, const std::vector<double>& eps) {
  if (h.size() != eps.size())
    throw DomainError("character argument dimension mismatch");
  double dot = 0;
  for (std::size_t i = 0; i < h.size(); ++i) dot += h[i] * eps[i];
  double frac = dot - std::nearbyint(dot);
  double angle = 2.0 * M_PI * frac;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace geocensus
