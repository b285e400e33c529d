#include "echeights/real.hpp"

#include <algorithm>
#include <vector>

namespace ech {

namespace {

mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

void widen(Real& a, mpfr_prec_t precision) {
  if (a.precision() < precision) mpfr_prec_round(a.raw(), precision, MPFR_RNDN);
}

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real out(x.precision());
  fn(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

}  // namespace

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Integer& value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::pi(mpfr_prec_t precision) {
  Real out(precision);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

std::string Real::to_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Integer Real::floor() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

Real& Real::operator+=(const Real& o) {
  widen(*this, o.precision());
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(*this, o.precision());
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(*this, o.precision());
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(*this, o.precision());
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real operator-(const Real& a) {
  return unary(a, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { return mpfr_neg(r, x, rnd); });
}

Real operator*(Real a, long b) {
  mpfr_mul_si(a.raw(), a.raw(), b, MPFR_RNDN);
  return a;
}

Real operator/(Real a, long b) {
  mpfr_div_si(a.raw(), a.raw(), b, MPFR_RNDN);
  return a;
}

Real operator+(Real a, long b) {
  mpfr_add_si(a.raw(), a.raw(), b, MPFR_RNDN);
  return a;
}

Real operator-(Real a, long b) {
  mpfr_sub_si(a.raw(), a.raw(), b, MPFR_RNDN);
  return a;
}

Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real cbrt(const Real& x) { return unary(x, mpfr_cbrt); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real asin(const Real& x) { return unary(x, mpfr_asin); }
Real acos(const Real& x) { return unary(x, mpfr_acos); }
Real abs(const Real& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr v, mpfr_rnd_t rnd) { return mpfr_abs(r, v, rnd); });
}

Real atan2(const Real& y, const Real& x) {
  Real out(wider(y, x));
  mpfr_atan2(out.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return out;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real exp2i(long e, mpfr_prec_t precision) {
  Real out(precision);
  mpfr_set_ui_2exp(out.raw(), 1, e, MPFR_RNDN);
  return out;
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(const Complex& a, const Complex& b) {
  const Real d = norm(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
  Real out(z.precision());
  mpfr_hypot(out.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return out;
}

Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex one_minus_exp(const Complex& w) {
  // 1 - e^a (cos b + i sin b), with cos b - 1 = -2 sin^2(b/2)
  const Real half_sin = sin(w.im / 2);
  const Real cos_minus_one = -(half_sin * half_sin * 2);
  const Real re = -(expm1(w.re) * cos(w.im) + cos_minus_one);
  const Real im = -(exp(w.re) * sin(w.im));
  return {re, im};
}

}  // namespace ech
