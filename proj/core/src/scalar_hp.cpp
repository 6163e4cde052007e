#include "geocensus/scalar_hp.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "geocensus/errors.hpp"

namespace geocensus {

namespace {
// Headroom absorbing the double rounding inside the error propagation itself.
constexpr double kFudge = 1.0 + 1e-9;
}  // namespace

ScalarHP::ScalarHP(unsigned prec) { mpfr_init2(v_, prec); }

ScalarHP::ScalarHP(double v, unsigned prec, double err) : err_(err) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

ScalarHP ScalarHP::from_string(const std::string& decimal, unsigned prec, double err) {
  ScalarHP s(prec);
  if (mpfr_set_str(s.v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
    throw FormatError("bad decimal literal \"" + decimal + "\"");
  s.err_ = err + s.ulp_bound();
  return s;
}

ScalarHP::ScalarHP(const ScalarHP& o) : err_(o.err_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

ScalarHP::ScalarHP(ScalarHP&& o) noexcept : err_(o.err_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

ScalarHP& ScalarHP::operator=(ScalarHP o) noexcept {
  swap(*this, o);
  return *this;
}

ScalarHP::~ScalarHP() { mpfr_clear(v_); }

double ScalarHP::ulp_bound() const {
  return std::fabs(mpfr_get_d(v_, MPFR_RNDN)) * std::ldexp(1.0, 1 - static_cast<int>(precision()));
}

double ScalarHP::abs_upper() const {
  return std::fabs(mpfr_get_d(v_, MPFR_RNDN)) * (1 + 1e-15) + err_;
}

std::string ScalarHP::to_decimal(unsigned digits) const {
  std::vector<char> buf(digits + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*RNe", static_cast<int>(digits - 1), v_);
  return std::string(buf.data());
}

bool ScalarHP::certainly_less(const ScalarHP& o) const {
  mpfr_t diff;
  mpfr_init2(diff, std::max(precision(), o.precision()));
  mpfr_sub(diff, o.v_, v_, MPFR_RNDN);
  bool ok = mpfr_get_d(diff, MPFR_RNDD) > (err_ + o.err_);
  mpfr_clear(diff);
  return ok;
}

bool ScalarHP::certainly_greater(const ScalarHP& o) const { return o.certainly_less(*this); }

bool ScalarHP::certainly_less(double x) const {
  return mpfr_get_d(v_, MPFR_RNDU) + err_ < x;
}

bool ScalarHP::certainly_greater(double x) const {
  return mpfr_get_d(v_, MPFR_RNDD) - err_ > x;
}

int ScalarHP::compare_certain(const ScalarHP& o) const {
  if (certainly_less(o)) return -1;
  if (o.certainly_less(*this)) return 1;
  throw PrecisionExhausted("comparison undecidable within error bounds");
}

ScalarHP operator+(const ScalarHP& a, const ScalarHP& b) {
  ScalarHP r(std::max(a.precision(), b.precision()));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  r.err_ = (a.err_ + b.err_ + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP operator-(const ScalarHP& a, const ScalarHP& b) {
  ScalarHP r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  r.err_ = (a.err_ + b.err_ + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP operator*(const ScalarHP& a, const ScalarHP& b) {
  ScalarHP r(std::max(a.precision(), b.precision()));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  r.err_ = (a.err_ * b.abs_upper() + b.err_ * std::fabs(mpfr_get_d(a.v_, MPFR_RNDN)) +
            r.ulp_bound()) *
           kFudge;
  return r;
}

ScalarHP operator/(const ScalarHP& a, const ScalarHP& b) {
  double babs = std::fabs(mpfr_get_d(b.v_, MPFR_RNDN));
  if (babs <= b.err_)
    throw PrecisionExhausted("division by a quantity indistinguishable from zero");
  ScalarHP r(std::max(a.precision(), b.precision()));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  double rabs = std::fabs(mpfr_get_d(r.v_, MPFR_RNDN));
  r.err_ = ((a.err_ + rabs * b.err_) / (babs - b.err_) + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP operator-(const ScalarHP& a) {
  ScalarHP r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  r.err_ = a.err_;
  return r;
}

ScalarHP abs(const ScalarHP& a) {
  ScalarHP r(a.precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  r.err_ = a.err_;
  return r;
}

ScalarHP sqrt(const ScalarHP& a) {
  double av = mpfr_get_d(a.v_, MPFR_RNDN);
  double lo = av - a.err_;
  if (lo < 0) {
    if (av + a.err_ < 0) throw DomainError("sqrt of a negative quantity");
    throw PrecisionExhausted("sqrt argument indistinguishable from zero");
  }
  ScalarHP r(a.precision());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  double deriv = lo > 0 ? 0.5 / std::sqrt(lo) : 0.0;
  r.err_ = (a.err_ * deriv + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP exp(const ScalarHP& a) {
  ScalarHP r(a.precision());
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  double rabs = std::fabs(mpfr_get_d(r.v_, MPFR_RNDN));
  r.err_ = (rabs * a.err_ * std::exp(std::min(a.err_, 1.0)) + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP log(const ScalarHP& a) {
  double av = mpfr_get_d(a.v_, MPFR_RNDN);
  double lo = av - a.err_;
  if (lo <= 0) {
    if (av + a.err_ <= 0) throw DomainError("log of a non-positive quantity");
    throw PrecisionExhausted("log argument indistinguishable from zero");
  }
  ScalarHP r(a.precision());
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  r.err_ = (a.err_ / lo + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP acosh(const ScalarHP& a) {
  double av = mpfr_get_d(a.v_, MPFR_RNDN);
  double lo = av - a.err_;
  if (lo <= 1) {
    if (av + a.err_ <= 1) throw DomainError("acosh argument <= 1");
    throw PrecisionExhausted("acosh argument indistinguishable from 1");
  }
  ScalarHP r(a.precision());
  mpfr_acosh(r.v_, a.v_, MPFR_RNDN);
  double deriv = 1.0 / std::sqrt(lo * lo - 1.0);
  r.err_ = (a.err_ * deriv + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP sinh(const ScalarHP& a) {
  ScalarHP r(a.precision());
  mpfr_sinh(r.v_, a.v_, MPFR_RNDN);
  double au = std::fabs(mpfr_get_d(a.v_, MPFR_RNDN)) + a.err_;
  r.err_ = (a.err_ * std::cosh(au) + r.ulp_bound()) * kFudge;
  return r;
}

ScalarHP cos(const ScalarHP& a) {
  ScalarHP r(a.precision());
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  r.err_ = (a.err_ + std::ldexp(1.0, 1 - static_cast<int>(r.precision()))) * kFudge;
  return r;
}

ScalarHP sin(const ScalarHP& a) {
  ScalarHP r(a.precision());
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  r.err_ = (a.err_ + std::ldexp(1.0, 1 - static_cast<int>(r.precision()))) * kFudge;
  return r;
}

ScalarHP ScalarHP::pi(unsigned prec) {
  ScalarHP r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  r.err_ = r.ulp_bound() * kFudge;
  return r;
}

double ScalarHP::lower_bound() const { return mpfr_get_d(v_, MPFR_RNDD) - err_; }
double ScalarHP::upper_bound() const { return mpfr_get_d(v_, MPFR_RNDU) + err_; }

ScalarHP ScalarHP::from_double_double(double hi, double lo, unsigned prec, double err) {
  ScalarHP r(prec);
  mpfr_set_d(r.v_, hi, MPFR_RNDN);
  mpfr_add_d(r.v_, r.v_, lo, MPFR_RNDN);
  r.err_ = err + r.ulp_bound();
  return r;
}

std::pair<double, double> ScalarHP::to_double_double() const {
  double hi = mpfr_get_d(v_, MPFR_RNDN);
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_sub_d(t, v_, hi, MPFR_RNDN);
  double lo = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return {hi, lo};
}

void ScalarHP::set_mul(const ScalarHP& a, const ScalarHP& b) {
  double ea = a.err_ * b.abs_upper() + b.err_ * std::fabs(mpfr_get_d(a.v_, MPFR_RNDN));
  mpfr_mul(v_, a.v_, b.v_, MPFR_RNDN);
  err_ = (ea + ulp_bound()) * kFudge;
}

void ScalarHP::set_mul_add(const ScalarHP& a, const ScalarHP& b, const ScalarHP& c,
                           const ScalarHP& d) {
  double ea = a.err_ * b.abs_upper() + b.err_ * std::fabs(mpfr_get_d(a.v_, MPFR_RNDN)) +
              c.err_ * d.abs_upper() + d.err_ * std::fabs(mpfr_get_d(c.v_, MPFR_RNDN));
  static thread_local mpfr_t t1, t2;
  static thread_local bool init = false;
  if (!init) {
    mpfr_init2(t1, 256);
    mpfr_init2(t2, 256);
    init = true;
  }
  mpfr_set_prec(t1, mpfr_get_prec(v_));
  mpfr_set_prec(t2, mpfr_get_prec(v_));
  mpfr_mul(t1, a.v_, b.v_, MPFR_RNDN);
  mpfr_mul(t2, c.v_, d.v_, MPFR_RNDN);
  mpfr_add(v_, t1, t2, MPFR_RNDN);
  err_ = (ea + 3 * ulp_bound()) * kFudge;
}

}  // namespace geocensus
