#pragma once

#include <mpfr.h>

#include <string>

#include "echeights/arith.hpp"

namespace ech {

/// Arbitrary-precision real backed by MPFR. Precision is a property of each value;
/// binary operations produce the larger of the operand precisions. There is no
/// global precision state.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = 64);
  Real(long value, mpfr_prec_t precision);
  Real(double value, mpfr_prec_t precision);
  Real(const Rational& value, mpfr_prec_t precision);
  Real(const Integer& value, mpfr_prec_t precision);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real pi(mpfr_prec_t precision);

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal rendering with the given number of significant digits.
  [[nodiscard]] std::string to_string(int digits) const;
  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }
  /// Floor as an Integer.
  [[nodiscard]] Integer floor() const;

  mpfr_ptr raw() { return value_; }
  [[nodiscard]] mpfr_srcptr raw() const { return value_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator-(const Real& a);

  friend Real operator*(Real a, long b);
  friend Real operator*(long b, Real a) { return std::move(a) * b; }
  friend Real operator/(Real a, long b);
  friend Real operator+(Real a, long b);
  friend Real operator-(Real a, long b);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

 private:
  mpfr_t value_;
};

Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real asin(const Real& x);
Real acos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real abs(const Real& x);
Real max(const Real& a, const Real& b);
/// 2^e at the given precision.
Real exp2i(long e, mpfr_prec_t precision);

struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t precision = 64) : re(precision), im(precision) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  [[nodiscard]] mpfr_prec_t precision() const { return re.precision(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
};

Real abs(const Complex& z);
Real norm(const Complex& z);
Complex exp(const Complex& z);
/// 1 - exp(w), accurate when w is near zero.
Complex one_minus_exp(const Complex& w);

}  // namespace ech
