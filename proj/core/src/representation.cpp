#include "geocensus/representation.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "geocensus/errors.hpp"

namespace geocensus {

Mat2 Mat2::identity(unsigned prec) {
  return Mat2{ScalarHP(1.0, prec), ScalarHP(0.0, prec), ScalarHP(0.0, prec), ScalarHP(1.0, prec)};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  Mat2 r = *this;
  r.m00.set_mul_add(m00, o.m00, m01, o.m10);
  r.m01.set_mul_add(m00, o.m01, m01, o.m11);
  r.m10.set_mul_add(m10, o.m00, m11, o.m10);
  r.m11.set_mul_add(m10, o.m01, m11, o.m11);
  return r;
}

Mat2 Mat2::inverse_det1() const { return Mat2{m11, -m01, -m10, m00}; }

ScalarHP Mat2::det() const { return m00 * m11 - m01 * m10; }

Representation::Representation(Presentation pres, unsigned precision)
    : presentation_(std::move(pres)), precision_(precision) {}

Representation Representation::load_preset(const std::string& name, unsigned precision) {
  if (precision < 64)
    throw DomainError("precision must be at least 64 bits");
  if (name == "bolza") return build_bolza(precision);
  return parse_file(name, precision);
}

// The Bolza surface: regular hyperbolic octagon with opposite sides paired.
// The four pairing translations t_k (k = 0..3) translate by 2 arccosh(1+sqrt 2)
// in direction k pi/4 through the octagon center; they satisfy
//   t0 t1^-1 t2 t3^-1 t0^-1 t1 t2^-1 t3 = 1.
// The fundamental generators used here are the Nielsen-transformed quadruple
//   a1 = t0 t1^-1,  b1 = t1^-1,  a2 = t1^-1 t0 t3,  b2 = t3^-1 t2,
// which satisfies the canonical relation [a1,b1][a2,b2] = 1 identically in the
// free group over the t_k, and whose four images are all systolic
// (|trace| = 2(1+sqrt 2)).
Representation Representation::build_bolza(unsigned precision) {
  Representation rep(Presentation(2), precision);
  rep.images_.clear();

  const unsigned p = precision;
  ScalarHP one(1.0, p), two(2.0, p);
  ScalarHP cosh_half = one + sqrt(two);                      // cosh(l0/2) = 1 + sqrt 2
  ScalarHP sinh_half = sqrt(cosh_half * cosh_half - one);    // sinh(l0/2)
  ScalarHP lam = cosh_half + sinh_half;                      // e^{l0/2}
  ScalarHP ilam = one / lam;
  ScalarHP pi8 = ScalarHP::pi(p) / ScalarHP(8.0, p);

  std::vector<Mat2> t;
  for (int k = 0; k < 4; ++k) {
    ScalarHP phi = ScalarHP(static_cast<double>(k), p) * pi8;
    ScalarHP c = cos(phi), s = sin(phi);
    // R(phi) diag(lam, 1/lam) R(-phi)
    Mat2 m;
    m.m00 = c * c * lam + s * s * ilam;
    m.m01 = c * s * (ilam - lam);
    m.m10 = m.m01;
    m.m11 = s * s * lam + c * c * ilam;
    t.push_back(m);
  }

  Mat2 t1i = t[1].inverse_det1();
  rep.images_.push_back(t[0] * t1i);               // a1
  rep.images_.push_back(t1i);                      // b1
  rep.images_.push_back(t1i * t[0] * t[3]);        // a2
  rep.images_.push_back(t[3].inverse_det1() * t[2]);  // b2

  rep.finish("bolza");
  return rep;
}

Representation Representation::parse_file(const std::string& path, unsigned precision) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open representation file: " + path);
  unsigned genus = 0;
  std::vector<std::string> entries;  // 4 per generator, in generator order
  std::vector<std::string> gen_names;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "genus") {
      if (!(ls >> genus)) throw FormatError("bad genus line in " + path);
    } else if (key == "generator") {
      std::string gname;
      ls >> gname;
      gen_names.push_back(gname);
      for (int i = 0; i < 4; ++i) {
        std::string e;
        if (!(ls >> e)) throw FormatError("generator " + gname + " needs 4 entries in " + path);
        entries.push_back(e);
      }
    } else {
      throw FormatError("unknown key \"" + key + "\" in " + path);
    }
  }
  if (genus < 2) throw FormatError("representation file must declare genus >= 2");
  if (gen_names.size() != 2 * genus)
    throw FormatError("expected " + std::to_string(2 * genus) + " generators, got " +
                      std::to_string(gen_names.size()));

  Representation rep(Presentation(genus), precision);
  rep.entry_strings_ = entries;
  for (unsigned g = 0; g < 2 * genus; ++g) {
    Mat2 m{ScalarHP::from_string(entries[4 * g + 0], precision),
           ScalarHP::from_string(entries[4 * g + 1], precision),
           ScalarHP::from_string(entries[4 * g + 2], precision),
           ScalarHP::from_string(entries[4 * g + 3], precision)};
    rep.images_.push_back(m);
  }
  rep.finish(path);
  return rep;
}

Representation Representation::with_precision(unsigned precision) const {
  if (name_ == "bolza") return build_bolza(precision);
  Representation rep(Presentation(genus()), precision);
  rep.entry_strings_ = entry_strings_;
  for (unsigned g = 0; g < 2 * genus(); ++g) {
    Mat2 m{ScalarHP::from_string(entry_strings_[4 * g + 0], precision),
           ScalarHP::from_string(entry_strings_[4 * g + 1], precision),
           ScalarHP::from_string(entry_strings_[4 * g + 2], precision),
           ScalarHP::from_string(entry_strings_[4 * g + 3], precision)};
    rep.images_.push_back(m);
  }
  rep.finish(name_);
  return rep;
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

void Representation::finish(const std::string& name) {
  name_ = name;
  inverses_.clear();
  for (const Mat2& m : images_) inverses_.push_back(m.inverse_det1());

  std::uint64_t h = fnv1a("genus=" + std::to_string(genus()));
  for (const Mat2& m : images_)
    for (const ScalarHP* e : {&m.m00, &m.m01, &m.m10, &m.m11}) h = fnv1a(e->to_decimal(25), h);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  id_ = std::string("g") + std::to_string(genus()) + "-" + buf;

  // Load-time invariants.
  // 1. The relator maps to +-identity.
  Mat2 r = word_to_matrix(presentation_.relator(), *this);
  double sign = r.m00.to_double() >= 0 ? 1.0 : -1.0;
  double dev = 0, errs = 0;
  for (const ScalarHP* e : {&r.m00, &r.m11}) {
    dev = std::max(dev, std::fabs(e->to_double() - sign));
    errs = std::max(errs, e->err());
  }
  for (const ScalarHP* e : {&r.m01, &r.m10}) {
    dev = std::max(dev, std::fabs(e->to_double()));
    errs = std::max(errs, e->err());
  }
  double tol = std::max(1e-10, 10 * errs);
  if (dev > tol)
    throw ValidationFailed("relator image deviates from +-identity by " + std::to_string(dev) +
                           " (tolerance " + std::to_string(tol) + ")");

  // 2. Every nonempty cyclically reduced word of length <= 3 is hyperbolic.
  const unsigned nl = 4 * genus();
  std::vector<Letter> w;
  auto check = [&]() {
    Word ww{std::vector<Letter>(w)};
    ScalarHP t = abs(word_to_matrix(ww, *this).trace());
    if (!t.certainly_greater(2.0))
      throw ValidationFailed("short word " + format_word(ww.letters) +
                             " is not hyperbolic (|trace| = " + std::to_string(t.to_double()) +
                             ")");
  };
  for (Letter l0 = 0; l0 < nl; ++l0) {
    w = {l0};
    check();
    for (Letter l1 = 0; l1 < nl; ++l1) {
      if (l1 == inverse_letter(l0) || l0 == inverse_letter(l1)) continue;
      w = {l0, l1};
      check();
      for (Letter l2 = 0; l2 < nl; ++l2) {
        if (l2 == inverse_letter(l1) || l0 == inverse_letter(l2)) continue;
        w = {l0, l1, l2};
        check();
      }
    }
  }
}

Mat2 word_to_matrix(const Word& w, const Representation& rep) {
  Mat2 m = Mat2::identity(rep.precision());
  for (Letter l : w.letters) m = m * rep.image_of_letter(l);
  return m;
}

Mat2 word_to_matrix(const CyclicWord& w, const Representation& rep) {
  Mat2 m = Mat2::identity(rep.precision());
  for (Letter l : w.letters) m = m * rep.image_of_letter(l);
  return m;
}

LengthNorm length_of(const Mat2& m) {
  ScalarHP t = abs(m.trace());
  if (!t.certainly_greater(2.0)) {
    if (t.upper_bound() <= 2.0)
      throw NotHyperbolic("|trace| <= 2");
    throw PrecisionExhausted("|trace| - 2 is smaller than the error bound");
  }
  ScalarHP half = t / ScalarHP(2.0, t.precision());
  ScalarHP len = ScalarHP(2.0, t.precision()) * acosh(half);
  return LengthNorm{len, exp(len)};
}

}  // namespace geocensus
