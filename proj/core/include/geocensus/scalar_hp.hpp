#ifndef GEOCENSUS_SCALAR_HP_HPP
#define GEOCENSUS_SCALAR_HP_HPP

#include <mpfr.h>

#include <string>
#include <utility>

namespace geocensus {

inline constexpr unsigned kDefaultPrecision = 128;  // significant bits

// High-precision real with a conservatively propagated absolute error bound.
// Comparisons that the error bound cannot decide throw PrecisionExhausted
// instead of guessing.
class ScalarHP {
 public:
  ScalarHP() : ScalarHP(0.0, kDefaultPrecision) {}
  explicit ScalarHP(double v, unsigned prec = kDefaultPrecision, double err = 0.0);
  static ScalarHP from_string(const std::string& decimal, unsigned prec = kDefaultPrecision,
                              double err = 0.0);
  // Reassembles a value stored as a double-double pair (hi + lo).
  static ScalarHP from_double_double(double hi, double lo, unsigned prec = kDefaultPrecision,
                                     double err = 0.0);
  // Splits into a double-double pair: hi = nearest double, lo = remainder.
  std::pair<double, double> to_double_double() const;

  ScalarHP(const ScalarHP& o);
  ScalarHP(ScalarHP&& o) noexcept;
  ScalarHP& operator=(ScalarHP o) noexcept;
  ~ScalarHP();

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  double err() const { return err_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Directed bounds on the represented interval, as doubles.
  double lower_bound() const;
  double upper_bound() const;
  // Value rounded to `digits` significant decimal digits, scientific notation.
  std::string to_decimal(unsigned digits) const;

  static ScalarHP pi(unsigned prec = kDefaultPrecision);

  bool is_negative() const { return mpfr_sgn(v_) < 0; }

  // Certain comparisons: the intervals [v-err, v+err] must be disjoint.
  bool certainly_less(const ScalarHP& o) const;
  bool certainly_greater(const ScalarHP& o) const;
  bool certainly_less(double x) const;
  bool certainly_greater(double x) const;
  // -1, 0 never: throws PrecisionExhausted when the intervals overlap.
  int compare_certain(const ScalarHP& o) const;

  friend ScalarHP operator+(const ScalarHP& a, const ScalarHP& b);
  friend ScalarHP operator-(const ScalarHP& a, const ScalarHP& b);
  friend ScalarHP operator*(const ScalarHP& a, const ScalarHP& b);
  friend ScalarHP operator/(const ScalarHP& a, const ScalarHP& b);
  friend ScalarHP operator-(const ScalarHP& a);

  friend ScalarHP abs(const ScalarHP& a);
  friend ScalarHP sqrt(const ScalarHP& a);
  friend ScalarHP exp(const ScalarHP& a);
  friend ScalarHP log(const ScalarHP& a);
  friend ScalarHP acosh(const ScalarHP& a);
  friend ScalarHP sinh(const ScalarHP& a);
  friend ScalarHP cos(const ScalarHP& a);
  friend ScalarHP sin(const ScalarHP& a);

  // In-place fused update used by the matrix hot path: *this = a*b + c*d.
  void set_mul_add(const ScalarHP& a, const ScalarHP& b, const ScalarHP& c, const ScalarHP& d);
  void set_mul(const ScalarHP& a, const ScalarHP& b);

  friend void swap(ScalarHP& a, ScalarHP& b) noexcept {
    mpfr_swap(a.v_, b.v_);
    std::swap(a.err_, b.err_);
  }

 private:
  explicit ScalarHP(unsigned prec);  // uninitialized value
  double ulp_bound() const;          // |v| * 2^(1-prec)
  double abs_upper() const;          // |v| + err, rounded up a hair

  mpfr_t v_;
  double err_ = 0.0;
};

}  // namespace geocensus

#endif
