#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "geocensus/census.hpp"
#include "geocensus/errors.hpp"

using namespace geocensus;

namespace {

const Representation& bolza() {
  static Representation rep = Representation::load_preset("bolza");
  return rep;
}

Word W(const std::string& s) { return parse_word(s, 2); }

}  // namespace

TEST_CASE("bolza census at L=1: the eight generator classes, all systolic") {
  Census c = enumerate_census(bolza(), 1);
  // gamma and gamma^-1 are distinct classes (their homology differs), so the
  // 8 one-letter words are 8 classes; all four generators are systolic.
  CHECK(c.size() == 8);
  double systole = 2 * std::acosh(1 + std::sqrt(2.0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c[i].word_length() == 1);
    CHECK(c[i].primitive());
    CHECK(std::fabs(c[i].length_d() - systole) < 1e-12);
  }
  CHECK(std::fabs(c.completeness_length().to_double() - systole) < 1e-12);
}

TEST_CASE("census L=0 is empty") {
  Census c = enumerate_census(bolza(), 0);
  CHECK(c.size() == 0);
  CHECK_THROWS_AS(c.completeness_length(), DomainError);
}

TEST_CASE("census records are canonical, unique, and self-consistent") {
  const Presentation& p = bolza().presentation();
  Census c = enumerate_census(bolza(), 5);
  std::set<std::vector<Letter>> seen;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto v = c[i];
    CyclicWord w = v.word();
    CHECK(seen.insert(w.letters).second);  // no duplicates
    CHECK(canonicalize(w, p) == w);        // canonical is its own canonical form
    CHECK(abelianize(w, 2) == v.homology_vector());
    auto [root, mult] = primitive_root(w, p);
    CHECK(mult == v.multiplicity());
    if (mult > 1) {
      // the root class is present at its shorter word length
      CHECK(c.find(root).has_value());
    }
    // norm = exp(length)
    CHECK(v.norm().to_double() == doctest::Approx(std::exp(v.length_d())));
    // length from the canonical word's matrix
    LengthNorm ln = length_of(word_to_matrix(w, bolza()));
    CHECK(std::fabs(ln.length.to_double() - v.length_d()) < 1e-14);
  }
}

TEST_CASE("shard count and thread count do not change the census") {
  Census c1 = enumerate_census(bolza(), 5, 1, 1);
  Census c4 = enumerate_census(bolza(), 5, 4, 1);
  Census c7 = enumerate_census(bolza(), 5, 7, 2);
  CHECK(c1 == c4);
  CHECK(c1 == c7);

  // Byte-identical saved caches.
  c1.save("/tmp/geocensus_shard1.census");
  c4.save("/tmp/geocensus_shard4.census");
  std::ifstream f1("/tmp/geocensus_shard1.census", std::ios::binary);
  std::ifstream f4("/tmp/geocensus_shard4.census", std::ios::binary);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s4((std::istreambuf_iterator<char>(f4)), std::istreambuf_iterator<char>());
  CHECK(s1 == s4);
  CHECK(!s1.empty());
}

TEST_CASE("save/load round trip") {
  Census c = enumerate_census(bolza(), 4);
  const std::string path = "/tmp/geocensus_roundtrip.census";
  c.save(path);
  Census back = Census::load(path, bolza().id());
  CHECK(back == c);
  // Serialization is a fixed point: saving the loaded census is byte-identical.
  const std::string path2 = "/tmp/geocensus_roundtrip2.census";
  back.save(path2);
  std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);

  CHECK_THROWS_AS(Census::load(path, "g2-0000000000000000"), FormatError);
  CHECK_THROWS_AS(Census::load("/tmp/geocensus_missing.census", bolza().id()), FormatError);

  // Truncated file.
  std::string trunc = s1.substr(0, s1.size() * 2 / 3);
  trunc = trunc.substr(0, trunc.rfind('\n') + 1);
  {
    std::ofstream out("/tmp/geocensus_trunc.census", std::ios::binary);
    out << trunc;
  }
  CHECK_THROWS_AS(Census::load("/tmp/geocensus_trunc.census", bolza().id()), FormatError);
}

TEST_CASE("merge is union, idempotent, commutative") {
  Census c5 = enumerate_census(bolza(), 5);
  Census c3 = enumerate_census(bolza(), 3);
  Census empty = enumerate_census(bolza(), 0);

  CHECK(merge(c5, empty) == c5);
  CHECK(merge(c5, c5) == c5);
  CHECK(merge(c5, c3) == c5);  // c3 is a subset of c5
  CHECK(merge(c3, c5) == c5);

  Representation other = bolza().with_precision(192);
  Census cp = enumerate_census(other, 2);
  CHECK_THROWS_AS(merge(c5, cp), IncompatibleCensus);
}

TEST_CASE("brute conjugacy oracle basics") {
  const Presentation& p = bolza().presentation();
  CHECK(brute_conjugacy_oracle(W("a1b1"), W("b1a1"), p, 2));
  CHECK_FALSE(brute_conjugacy_oracle(W("a1"), W("a2"), p, 4));
  Word w = W("a1b2A1b1");
  CHECK(brute_conjugacy_oracle(w, w, p, 0));
  // Conjugation by an explicit element.
  Word g = W("b2a1");
  Word conj = free_reduce(concat(concat(g, w), inverse(g)));
  CHECK(brute_conjugacy_oracle(w, conj, p, 3));
  // Half-relator related words are conjugate.
  CHECK(brute_conjugacy_oracle(W("a1b1A1B1b2"), W("b2a2B2A2b2"), p, 5));
}

TEST_CASE("enumerate matches the oracle partition at small L") {
  // Exhaustive independent check: partition all reduced words of length <= 4
  // into conjugacy classes using only the oracle (plus homology and exact
  // trace as sound pre-filters for scheduling), and compare class count,
  // word-length multiset and homology multiset with the census.
  const Presentation& p = bolza().presentation();
  const Representation& rep = bolza();
  const unsigned L = 4;

  std::vector<Word> words;
  std::vector<Letter> cur;
  auto gen = [&](auto&& self, unsigned remaining) -> void {
    if (cur.size() > 0) words.push_back(Word{cur});
    if (remaining == 0) return;
    for (Letter l = 0; l < 8; ++l) {
      if (!cur.empty() && l == inverse_letter(cur.back())) continue;
      cur.push_back(l);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  gen(gen, L);

  // Group by (homology, rounded trace) to keep the quadratic oracle work small;
  // both are exact conjugacy invariants.
  std::map<std::pair<HomologyVector, long long>, std::vector<std::size_t>> bins;
  for (std::size_t i = 0; i < words.size(); ++i) {
    double t = std::fabs(word_to_matrix(words[i], rep).trace().to_double());
    bins[{abelianize(words[i], 2), llround(t * 1e9)}].push_back(i);
  }

  std::size_t n_classes = 0;
  std::map<unsigned, std::size_t> wl_multiset;
  std::map<HomologyVector, std::size_t> hom_multiset;
  for (auto& [key, members] : bins) {
    std::vector<std::size_t> reps;  // oracle-separated class representatives
    std::vector<unsigned> min_len;
    for (std::size_t wi : members) {
      bool joined = false;
      for (std::size_t r = 0; r < reps.size(); ++r) {
        if (brute_conjugacy_oracle(words[wi], words[reps[r]], p, 6)) {
          min_len[r] = std::min(min_len[r],
                                static_cast<unsigned>(cyclic_reduce(words[wi], p).size()));
          joined = true;
          break;
        }
      }
      if (!joined) {
        reps.push_back(wi);
        min_len.push_back(static_cast<unsigned>(cyclic_reduce(words[wi], p).size()));
      }
    }
    for (std::size_t r = 0; r < reps.size(); ++r) {
      ++n_classes;
      ++wl_multiset[min_len[r]];
      ++hom_multiset[key.first];
    }
  }

  Census c = enumerate_census(rep, L);
  CHECK(c.size() == n_classes);
  std::map<unsigned, std::size_t> census_wl;
  std::map<HomologyVector, std::size_t> census_hom;
  for (std::size_t i = 0; i < c.size(); ++i) {
    ++census_wl[c[i].word_length()];
    ++census_hom[c[i].homology_vector()];
  }
  CHECK(census_wl == wl_multiset);
  CHECK(census_hom == hom_multiset);
}

TEST_CASE("canonicalize agrees with the oracle pairwise (length <= 3 exhaustive)") {
  const Presentation& p = bolza().presentation();
  std::vector<Word> words;
  std::vector<Letter> cur;
  auto gen = [&](auto&& self, unsigned remaining) -> void {
    if (cur.size() > 0) words.push_back(Word{cur});
    if (remaining == 0) return;
    for (Letter l = 0; l < 8; ++l) {
      if (!cur.empty() && l == inverse_letter(cur.back())) continue;
      cur.push_back(l);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  gen(gen, 3);

  std::vector<CyclicWord> canon;
  for (const Word& w : words) canon.push_back(canonicalize(cyclic_reduce(w, p), p));

  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      bool same = canon[i] == canon[j];
      // Cheap exact invariant filter first; the oracle agrees with it.
      if (abelianize(words[i], 2) != abelianize(words[j], 2)) {
        CHECK_FALSE(same);
        continue;
      }
      CHECK(same == brute_conjugacy_oracle(words[i], words[j], p, 5));
    }
}

TEST_CASE("primitive roots match brute-force power enumeration (length <= 6)") {
  const Presentation& p = bolza().presentation();
  Census c = enumerate_census(bolza(), 6);
  // Build all powers r^m (m >= 2) of canonical roots with total length <= 6
  // and record their canonical forms.
  std::map<std::vector<Letter>, std::pair<std::vector<Letter>, unsigned>> power_of;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].primitive()) continue;
    CyclicWord r = c[i].word();
    for (unsigned m = 2; r.size() * m <= 6; ++m) {
      Word pw;
      for (unsigned k = 0; k < m; ++k)
        pw.letters.insert(pw.letters.end(), r.letters.begin(), r.letters.end());
      CyclicWord canon = canonicalize(cyclic_reduce(pw, p), p);
      power_of[canon.letters] = {r.letters, m};
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto it = power_of.find(c[i].word().letters);
    if (c[i].primitive()) {
      CHECK(it == power_of.end());
    } else {
      REQUIRE(it != power_of.end());
      CHECK(it->second.second == c[i].multiplicity());
      auto [root, mult] = primitive_root(c[i].word(), p);
      CHECK(root.letters == it->second.first);
      CHECK(mult == it->second.second);
    }
  }
}

