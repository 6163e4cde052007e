#ifndef GEOCENSUS_REPRESENTATION_HPP
#define GEOCENSUS_REPRESENTATION_HPP

#include <string>
#include <vector>

#include "geocensus/scalar_hp.hpp"
#include "geocensus/surface_group.hpp"
#include "geocensus/word.hpp"

namespace geocensus {

// 2x2 real matrix with high-precision entries; used projectively (PSL2), so
// only |trace| is ever meaningful.
struct Mat2 {
  ScalarHP m00, m01, m10, m11;

  static Mat2 identity(unsigned prec);
  Mat2 operator*(const Mat2& o) const;
  // Inverse of a determinant-one matrix (adjugate).
  Mat2 inverse_det1() const;
  ScalarHP trace() const { return m00 + m11; }
  ScalarHP det() const;
};

// Geodesic length l and norm N = e^l of a hyperbolic element.
struct LengthNorm {
  ScalarHP length;
  ScalarHP norm;
};

// A discrete faithful representation of the surface group into PSL2(R):
// one matrix per generator, validated at load time (relator maps to +-I,
// short cyclically reduced words are hyperbolic).
class Representation {
 public:
  // name is either the preset "bolza" or a path to a representation file.
  static Representation load_preset(const std::string& name,
                                    unsigned precision = kDefaultPrecision);

  const Presentation& presentation() const { return presentation_; }
  unsigned genus() const { return presentation_.genus(); }
  unsigned precision() const { return precision_; }
  const std::string& name() const { return name_; }
  // Stable identity of the represented group (hash of genus and generator
  // entries at 25 digits); precision-independent for precision >= 64.
  const std::string& id() const { return id_; }

  const Mat2& image(unsigned generator) const { return images_[generator]; }
  const Mat2& image_of_letter(Letter l) const {
    return is_inverse(l) ? inverses_[generator_of(l)] : images_[generator_of(l)];
  }

  // Same group, higher (or lower) working precision; re-derives the matrices
  // from their construction rather than re-rounding.
  Representation with_precision(unsigned precision) const;

 private:
  Representation(Presentation pres, unsigned precision) ;
  static Representation build_bolza(unsigned precision);
  static Representation parse_file(const std::string& path, unsigned precision);
  void finish(const std::string& name);  // inverses, id, validation

  Presentation presentation_;
  unsigned precision_;
  std::vector<Mat2> images_;
  std::vector<Mat2> inverses_;
  std::vector<std::string> entry_strings_;  // file-based reps: exact re-parse source
  std::string name_;
  std::string id_;
};

// Product of generator images along w. Precondition: w freely reduced.
Mat2 word_to_matrix(const Word& w, const Representation& rep);
Mat2 word_to_matrix(const CyclicWord& w, const Representation& rep);

// length = 2 arccosh(|tr|/2), norm = exp(length).
// Throws NotHyperbolic when |tr| <= 2, PrecisionExhausted when undecidable.
LengthNorm length_of(const Mat2& m);

}  // namespace geocensus

#endif
