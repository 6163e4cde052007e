#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "geocensus/errors.hpp"
#include "geocensus/representation.hpp"
#include "geocensus/scalar_hp.hpp"

using namespace geocensus;

namespace {

const Representation& bolza() {
  static Representation rep = Representation::load_preset("bolza");
  return rep;
}

// Independent high-precision oracle: 2 arccosh(1 + sqrt 2) via raw mpfr.
double bolza_systole_oracle() {
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_sqrt_ui(x, 2, MPFR_RNDN);
  mpfr_add_ui(x, x, 1, MPFR_RNDN);
  mpfr_acosh(x, x, MPFR_RNDN);
  mpfr_mul_ui(x, x, 2, MPFR_RNDN);
  double v = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return v;
}

std::vector<Letter> random_reduced_word(std::mt19937& rng, std::size_t len) {
  std::uniform_int_distribution<int> dist(0, 7);
  std::vector<Letter> w;
  while (w.size() < len) {
    Letter l = static_cast<Letter>(dist(rng));
    if (!w.empty() && l == inverse_letter(w.back())) continue;
    w.push_back(l);
  }
  return w;
}

}  // namespace

TEST_CASE("ScalarHP arithmetic and error tracking") {
  ScalarHP a(1.5), b(2.25);
  CHECK((a + b).to_double() == doctest::Approx(3.75));
  CHECK((a * b).to_double() == doctest::Approx(3.375));
  CHECK((a / b).to_double() == doctest::Approx(2.0 / 3));
  CHECK(sqrt(ScalarHP(2.0)).to_double() == doctest::Approx(std::sqrt(2.0)));
  CHECK(exp(log(ScalarHP(7.0))).to_double() == doctest::Approx(7.0));
  CHECK(acosh(ScalarHP(std::cosh(1.0))).to_double() == doctest::Approx(1.0));
  CHECK(sinh(ScalarHP(1.0)).to_double() == doctest::Approx(std::sinh(1.0)));

  // Error bounds grow but stay conservative.
  ScalarHP x(1.0, 128, 1e-20);
  ScalarHP y = x * x + x;
  CHECK(y.err() >= 2e-20);
  CHECK(y.err() < 1e-15);

  // Comparing a value with itself is undecidable within err.
  CHECK_THROWS_AS(a.compare_certain(a), PrecisionExhausted);
  CHECK(a.compare_certain(b) == -1);
  CHECK(b.compare_certain(a) == 1);
  CHECK(a.certainly_less(2.0));
  CHECK(b.certainly_greater(2.0));

  CHECK_THROWS_AS(ScalarHP(1.0) / ScalarHP(0.0), PrecisionExhausted);
  CHECK_THROWS_AS(log(ScalarHP(-1.0)), DomainError);
  CHECK_THROWS_AS(sqrt(ScalarHP(-1.0)), DomainError);
  CHECK_THROWS_AS(acosh(ScalarHP(0.5)), DomainError);
}

TEST_CASE("ScalarHP decimal serialization round-trips") {
  ScalarHP v = sqrt(ScalarHP(2.0)) * ScalarHP(3.0);
  std::string s30 = v.to_decimal(30);
  ScalarHP back = ScalarHP::from_string(s30, 128);
  CHECK(back.to_decimal(30) == s30);
  CHECK(std::fabs(back.to_double() - v.to_double()) < 1e-15);
  CHECK(ScalarHP::from_string("1.25e2").to_double() == 125.0);
  CHECK_THROWS_AS(ScalarHP::from_string("not-a-number"), FormatError);
}

TEST_CASE("bolza preset loads and is validated") {
  const Representation& rep = bolza();
  CHECK(rep.genus() == 2);
  CHECK(rep.precision() == kDefaultPrecision);
  CHECK(rep.name() == "bolza");

  // All four generators are systolic: |trace| = 2(1 + sqrt 2).
  double expect = 2 * (1 + std::sqrt(2.0));
  for (unsigned g = 0; g < 4; ++g) {
    ScalarHP t = abs(rep.image(g).trace());
    CHECK(std::fabs(t.to_double() - expect) < 1e-12);
    ScalarHP d = rep.image(g).det();
    CHECK(std::fabs(d.to_double() - 1.0) < 1e-30);
  }

  // Relator image is +-identity within 1e-20 (it is in fact ~1e-36 at 128 bits).
  Mat2 r = word_to_matrix(rep.presentation().relator(), rep);
  double sign = r.m00.to_double() >= 0 ? 1.0 : -1.0;
  CHECK(std::fabs(r.m00.to_double() - sign) < 1e-20);
  CHECK(std::fabs(r.m11.to_double() - sign) < 1e-20);
  CHECK(std::fabs(r.m01.to_double()) < 1e-20);
  CHECK(std::fabs(r.m10.to_double()) < 1e-20);
}

TEST_CASE("length_of") {
  // |trace| = 2 cosh(1/2) has length exactly 1.
  ScalarHP half(0.5);
  ScalarHP lam = exp(half);
  Mat2 m{lam, ScalarHP(0.0), ScalarHP(0.0), ScalarHP(1.0) / lam};
  LengthNorm ln = length_of(m);
  CHECK(std::fabs(ln.length.to_double() - 1.0) < 1e-30);
  CHECK(std::fabs(ln.norm.to_double() - std::exp(1.0)) < 1e-14);

  // Bolza generator length is the systole 2 arccosh(1 + sqrt 2) = 3.05714...
  LengthNorm sys = length_of(word_to_matrix(parse_word("a1", 2), bolza()));
  CHECK(std::fabs(sys.length.to_double() - bolza_systole_oracle()) < 1e-25);
  CHECK(sys.length.to_double() == doctest::Approx(3.057141838961996).epsilon(1e-12));

  // Parabolic boundary: |trace| = 2.
  Mat2 par{ScalarHP(1.0), ScalarHP(1.0), ScalarHP(0.0), ScalarHP(1.0)};
  CHECK_THROWS_AS(length_of(par), NotHyperbolic);
  // Elliptic: |trace| < 2.
  Mat2 ell{ScalarHP(0.5), ScalarHP(-1.0), ScalarHP(1.0), ScalarHP(0.5)};
  CHECK_THROWS_AS(length_of(ell), NotHyperbolic);
  // Undecidable: trace 2 + tiny with a large error bound.
  Mat2 und{ScalarHP(1.0 + 1e-12, 128, 1e-6), ScalarHP(0.0), ScalarHP(0.0),
           ScalarHP(1.0, 128, 1e-6)};
  CHECK_THROWS_AS(length_of(und), PrecisionExhausted);
}

TEST_CASE("word_to_matrix basics") {
  const Representation& rep = bolza();
  Mat2 id = word_to_matrix(Word{}, rep);
  CHECK(id.m00.to_double() == 1.0);
  CHECK(id.m01.to_double() == 0.0);

  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    Word w{random_reduced_word(rng, 1 + rng() % 6)};
    Mat2 m = word_to_matrix(w, rep) * word_to_matrix(inverse(w), rep);
    CHECK(std::fabs(m.m00.to_double() - 1.0) < 1e-25);
    CHECK(std::fabs(m.m01.to_double()) < 1e-25);
    CHECK(std::fabs(m.m10.to_double()) < 1e-25);
    CHECK(std::fabs(m.m11.to_double() - 1.0) < 1e-25);
  }
}

TEST_CASE("trace is a conjugacy invariant (exhaustive to length 6)") {
  const Representation& rep = bolza();
  const Presentation& p = rep.presentation();
  std::vector<Letter> cur;
  std::size_t bad = 0, checked = 0;
  auto walk = [&](auto&& self, unsigned remaining) -> void {
    if (!cur.empty() && is_cyclically_reduced(cur)) {
      ++checked;
      double t0 = std::fabs(word_to_matrix(Word{cur}, rep).trace().to_double());
      for (std::size_t r = 1; r < cur.size(); ++r) {
        std::vector<Letter> rot(cur.begin() + r, cur.end());
        rot.insert(rot.end(), cur.begin(), cur.begin() + r);
        double t1 = std::fabs(word_to_matrix(Word{rot}, rep).trace().to_double());
        if (std::fabs(t0 - t1) > 1e-20 * std::max(1.0, t0)) ++bad;
      }
    }
    if (remaining == 0) return;
    for (Letter l = 0; l < 8; ++l) {
      if (!cur.empty() && l == inverse_letter(cur.back())) continue;
      if (!cur.empty() && l < cur[0]) continue;  // one representative per rotation
      cur.push_back(l);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  walk(walk, 6);
  CHECK(checked > 20000);
  CHECK(bad == 0);

  // canonicalize preserves the trace (it moves within the conjugacy class).
  std::mt19937 rng(9);
  for (int i = 0; i < 60; ++i) {
    CyclicWord c = cyclic_reduce(Word{random_reduced_word(rng, 1 + rng() % 6)}, p);
    if (c.empty()) continue;
    double t0 = std::fabs(word_to_matrix(c, rep).trace().to_double());
    double tc = std::fabs(word_to_matrix(canonicalize(c, p), rep).trace().to_double());
    CHECK(std::fabs(t0 - tc) < 1e-20 * std::max(1.0, t0));
  }
}

TEST_CASE("dehn_reduce preserves the group element (matrix check)") {
  const Representation& rep = bolza();
  const Presentation& p = rep.presentation();
  std::mt19937 rng(21);
  for (int i = 0; i < 80; ++i) {
    Word w{random_reduced_word(rng, 6 + rng() % 8)};
    Word d = dehn_reduce(w, p);
    Mat2 mw = word_to_matrix(w, rep);
    Mat2 md = word_to_matrix(d, rep);
    // mw * md^-1 = identity within the tracked error.
    Mat2 q = mw * md.inverse_det1();
    CHECK(std::fabs(q.m00.to_double() - 1.0) < 1e-20);
    CHECK(std::fabs(q.m01.to_double()) < 1e-20);
    CHECK(std::fabs(q.m10.to_double()) < 1e-20);
    CHECK(std::fabs(q.m11.to_double() - 1.0) < 1e-20);
  }
}

TEST_CASE("iterates scale length linearly") {
  const Representation& rep = bolza();
  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    CyclicWord c = cyclic_reduce(Word{random_reduced_word(rng, 1 + rng() % 4)},
                                 rep.presentation());
    if (c.empty()) continue;
    LengthNorm base = length_of(word_to_matrix(c, rep));
    Word pw;
    for (int k = 0; k < 3; ++k)
      pw.letters.insert(pw.letters.end(), c.letters.begin(), c.letters.end());
    LengthNorm cube = length_of(word_to_matrix(pw, rep));
    ScalarHP diff = cube.length - base.length * ScalarHP(3.0);
    CHECK(std::fabs(diff.to_double()) < 1e-25 + diff.err());
  }
}

TEST_CASE("representation files") {
  const Representation& rep = bolza();

  // Dump the bolza matrices and reload: same group id.
  std::string path = "/tmp/geocensus_test_rep.txt";
  {
    std::ofstream out(path);
    out << "genus 2\n";
    const char* names[4] = {"a1", "b1", "a2", "b2"};
    for (unsigned g = 0; g < 4; ++g) {
      const Mat2& m = rep.image(g);
      out << "generator " << names[g] << " " << m.m00.to_decimal(40) << " "
          << m.m01.to_decimal(40) << " " << m.m10.to_decimal(40) << " " << m.m11.to_decimal(40)
          << "\n";
    }
  }
  Representation loaded = Representation::load_preset(path);
  CHECK(loaded.id() == rep.id());
  CHECK(loaded.genus() == 2);

  // Identity matrices satisfy the relator but are not hyperbolic.
  std::string bad = "/tmp/geocensus_test_rep_bad.txt";
  {
    std::ofstream out(bad);
    out << "genus 2\n";
    for (const char* n : {"a1", "b1", "a2", "b2"})
      out << "generator " << n << " 1 0 0 1\n";
  }
  CHECK_THROWS_AS(Representation::load_preset(bad), ValidationFailed);

  CHECK_THROWS_AS(Representation::load_preset("/tmp/geocensus_no_such_file.txt"), FormatError);
  CHECK_THROWS_AS(Representation::load_preset("bolza", 32), DomainError);
}

TEST_CASE("with_precision re-derives the matrices") {
  Representation hi = bolza().with_precision(256);
  CHECK(hi.precision() == 256);
  CHECK(hi.id() == bolza().id());
  Mat2 r = word_to_matrix(hi.presentation().relator(), hi);
  double sign = r.m00.to_double() >= 0 ? 1.0 : -1.0;
  CHECK(std::fabs(r.m00.to_double() - sign) < 1e-40);
}
