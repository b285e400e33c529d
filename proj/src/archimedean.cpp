#include "echeights/archimedean.hpp"

#include <array>
#include <vector>

namespace ech {

mpfr_prec_t working_precision(long precision_bits) {
  if (precision_bits < 16) throw InputError("precision must be at least 16 bits");
  if (precision_bits > 100000) throw InputError("precision above 100000 bits is not supported");
  return static_cast<mpfr_prec_t>(precision_bits + 64);
}

namespace {

Real nearest_integer(const Real& x) { return Real((x + Real(0.5, x.precision())).floor(), x.precision()); }

Real agm(Real a, Real b) {
  const Real eps = exp2i(-static_cast<long>(a.precision()) + 4, a.precision());
  for (int i = 0; i < 10000; ++i) {
    if (abs(a - b) <= eps * abs(a)) return a;
    Real next_a = (a + b) / 2;
    b = sqrt(a * b);
    a = std::move(next_a);
  }
  throw InternalError("AGM failed to converge");
}

Real cubic_value(const Real& e, const Real& g2, const Real& g3) { return e * e * e * 4 - g2 * e - g3; }

Real newton_polish(Real e, const Real& g2, const Real& g3) {
  for (int i = 0; i < 12; ++i) {
    const Real d = e * e * 12 - g2;
    if (d.is_zero()) break;
    const Real step = cubic_value(e, g2, g3) / d;
    Real next = e - step;
    if (abs(cubic_value(next, g2, g3)) >= abs(cubic_value(e, g2, g3))) break;
    e = std::move(next);
  }
  return e;
}

// Landen/AGM evaluation of the real elliptic integral, with (a, b, c) seeded by the caller.
Real agm_elliptic_integral(Real a, Real b, Real c) {
  const mpfr_prec_t prec = a.precision();
  const Real eps = exp2i(-static_cast<long>(prec) + 4, prec);
  for (int i = 0; i < 10000 && abs(a - b) > eps * abs(a); ++i) {
    Real disc = c * c - a * a + b * b;
    if (disc.sign() < 0) disc = Real(prec);
    Real next_c = (c + sqrt(disc)) / 2;
    Real next_a = (a + b) / 2;
    b = sqrt(a * b);
    a = std::move(next_a);
    c = std::move(next_c);
  }
  Real ratio = a / c;
  if (ratio > Real(1L, prec)) ratio = Real(1L, prec);
  return asin(ratio) / a;
}

Complex times_i(const Complex& z) { return {-z.im, z.re}; }

// exp(2 pi i w)
Complex exp_2pi_i(const Complex& w) {
  const Real two_pi = Real::pi(w.precision()) * 2;
  return exp(Complex{-(w.im * two_pi), w.re * two_pi});
}

Complex one_minus_exp_2pi_i(const Complex& w) {
  const Real two_pi = Real::pi(w.precision()) * 2;
  return one_minus_exp(Complex{-(w.im * two_pi), w.re * two_pi});
}

Complex square(const Complex& z) { return z * z; }

Complex one(mpfr_prec_t prec) { return {Real(1L, prec), Real(prec)}; }

}  // namespace

PeriodLattice::PeriodLattice(const WeierstrassCurve& e, mpfr_prec_t precision)
    : prec_(precision),
      b2_(e.b2()),
      a1_(e.a1()),
      a3_(e.a3()),
      g2_(Rational(e.c4() / 12), precision),
      g3_(Rational(e.c6() / 216), precision),
      positive_discriminant_(sgn(e.discriminant()) > 0),
      e1_(precision),
      e2_(precision),
      e3_(precision),
      real_period_(precision),
      other_period_(precision),
      omega1_(precision),
      omega2_(precision),
      tau_(precision),
      q_(precision) {
  const Real pi = Real::pi(prec_);
  // 4e^3 - g2 e - g3 = 0  <=>  t^3 + p t + q0 = 0 with p = -g2/4, q0 = -g3/4.
  const Real p = -(g2_ / 4);
  const Real q0 = -(g3_ / 4);
  if (positive_discriminant_) {
    const Real r = sqrt(g2_ / 12) * 2;
    Real c = (q0 * 3) / (p * 2) * sqrt(Real(-3L, prec_) / p);
    if (c > Real(1L, prec_)) c = Real(1L, prec_);
    if (c < Real(-1L, prec_)) c = Real(-1L, prec_);
    const Real theta = acos(c) / 3;
    const Real third = pi * 2 / 3;
    std::array<Real, 3> roots = {r * cos(theta), r * cos(theta - third), r * cos(theta + third)};
    for (auto& root : roots) root = newton_polish(root, g2_, g3_);
    std::sort(roots.begin(), roots.end(), [](const Real& x, const Real& y) { return y < x; });
    e1_ = roots[0];
    e2_ = roots[1];
    e3_ = roots[2];
    real_period_ = {pi / agm(sqrt(e1_ - e3_), sqrt(e1_ - e2_)), Real(prec_)};
    other_period_ = {Real(prec_), pi / agm(sqrt(e1_ - e3_), sqrt(e2_ - e3_))};
  } else {
    const Real d = sqrt(q0 * q0 / 4 + p * p * p / 27);
    const Real half = -(q0 / 2);
    e1_ = newton_polish(cbrt(half + d) + cbrt(half - d), g2_, g3_);
    const Real beta = sqrt(e1_ * e1_ * 3 - g2_ / 4);
    const Real alpha = e1_ * 3;
    const Real w1 = pi * 2 / agm(sqrt(beta) * 2, sqrt(beta * 2 + alpha));
    real_period_ = {w1, Real(prec_)};
    other_period_ = {-(w1 / 2), pi / agm(sqrt(beta) * 2, sqrt(beta * 2 - alpha))};
  }

  // Reduce tau = omega2/omega1 to the fundamental domain.
  omega1_ = real_period_;
  omega2_ = other_period_;
  const Real one_r(1L, prec_);
  const Real slack = one_r - exp2i(-static_cast<long>(prec_) / 2, prec_);
  for (int iter = 0; iter < 1000; ++iter) {
    Complex t = omega2_ / omega1_;
    const Real k = nearest_integer(t.re);
    if (!k.is_zero()) {
      omega2_ = omega2_ - omega1_ * k;
      t = omega2_ / omega1_;
    }
    if (norm(t) < slack) {
      Complex next_omega1 = omega2_;
      omega2_ = -omega1_;
      omega1_ = std::move(next_omega1);
      continue;
    }
    tau_ = t;
    break;
  }
  if (tau_.im.sign() <= 0) throw InternalError("period ratio left the upper half plane");
  q_ = exp_2pi_i(tau_);
}

Complex PeriodLattice::reduce_to_cell(Complex w) const {
  const Real k = nearest_integer(w.im / tau_.im);
  if (!k.is_zero()) w = w - tau_ * k;
  const Real m = nearest_integer(w.re);
  if (!m.is_zero()) w.re -= m;
  return w;
}

Complex PeriodLattice::normalised(const Complex& z) const {
  Complex w = reduce_to_cell(z / omega1_);
  if (w.im.sign() < 0) w = -w;
  return w;
}

std::pair<Complex, Complex> PeriodLattice::weierstrass(const Complex& z) const {
  const Complex w = reduce_to_cell(z / omega1_);
  const Complex u = exp_2pi_i(w);
  const Complex u_inv = one(prec_) / u;
  const Complex c1 = one(prec_);
  const Complex one_minus_u = one_minus_exp_2pi_i(w);

  Complex s = square(u / one_minus_u) / u;  // u/(1-u)^2
  s.re += Real(Rational(1, 12), prec_);
  Complex sp = u * (c1 + u) / (one_minus_u * one_minus_u * one_minus_u);

  const Real tail_eps = exp2i(-static_cast<long>(prec_) - 8, prec_);
  const Real spread = max(abs(u), abs(u_inv)) + 1;
  Complex qn = q_;
  for (long n = 1; n < 100000; ++n) {
    const Complex a = qn * u;
    const Complex b = qn * u_inv;
    const Complex oa = c1 - a, ob = c1 - b, oq = c1 - qn;
    s += a / (oa * oa) + b / (ob * ob) - (qn / (oq * oq)) * Real(2L, prec_);
    sp += a * (c1 + a) / (oa * oa * oa) - b * (c1 + b) / (ob * ob * ob);
    if (abs(qn) * spread < tail_eps) break;
    qn = qn * q_;
  }
  const Real two_pi = Real::pi(prec_) * 2;
  const Complex w1_sq = omega1_ * omega1_;
  // (2 pi i)^2 = -(2 pi)^2 and (2 pi i)^3 = -i (2 pi)^3
  const Complex wp = -(s * (two_pi * two_pi)) / w1_sq;
  const Complex wpp = -times_i(sp * (two_pi * two_pi * two_pi)) / (w1_sq * omega1_);
  return {wp, wpp};
}

Real PeriodLattice::lambda_silverman(const Complex& z) const {
  const Complex w = normalised(z);
  if (w.re.is_zero() && w.im.is_zero()) throw DomainError("lambda' is undefined at the origin");
  const Real two_pi = Real::pi(prec_) * 2;
  const Real log_abs_q = -(two_pi * tau_.im);
  const Real t = w.im / tau_.im;
  const Real bernoulli = t * t - t + Real(Rational(1, 6), prec_);
  Real out = -(bernoulli * log_abs_q) / 2;
  out -= log(abs(one_minus_exp_2pi_i(w)));

  const Complex u = exp_2pi_i(w);
  const Complex u_inv = one(prec_) / u;
  const Complex c1 = one(prec_);
  const Real abs_q = abs(q_);
  const Real bound_factor = (abs(u) + abs(u_inv) + 1) / (Real(1L, prec_) - abs_q);
  const Real tail_eps = exp2i(-static_cast<long>(prec_) - 8, prec_);
  Complex qn = q_;
  Real abs_qn = abs_q;
  for (long n = 1; n < 100000; ++n) {
    out -= log(abs(c1 - qn * u)) + log(abs(c1 - qn * u_inv));
    // remaining terms are bounded by |q|^(n+1) (1 + |u| + 1/|u|) / (1 - |q|)
    abs_qn *= abs_q;
    if (abs_qn * bound_factor < tail_eps) break;
    qn = qn * q_;
  }
  return out;
}

Complex PeriodLattice::elliptic_log(const CurvePoint& point) const {
  if (point.is_origin()) return Complex(prec_);
  const Rational X = point.x() + b2_ / 12;
  const Rational Y = 2 * point.y() + a1_ * point.x() + a3_;
  const Real xr(X, prec_);
  const Real yr(Y, prec_);

  std::vector<Complex> candidates;
  const Complex half_real = real_period_ / Real(2L, prec_);
  const Complex half_other = other_period_ / Real(2L, prec_);
  auto real_c = [&](const Real& v) { return Complex{v, Real(prec_)}; };

  if (Y == 0) {
    candidates = {half_real, half_other, half_real + half_other};
  } else if (positive_discriminant_) {
    if (xr >= (e1_ + e2_) / 2) {
      const Real w = agm_elliptic_integral(sqrt(e1_ - e3_), sqrt(e1_ - e2_), sqrt(xr - e3_));
      candidates = {real_c(w), real_c(-w)};
    } else {
      // the bounded real component: move it to the unbounded one by a half period
      const Real shifted = e3_ + (e3_ - e1_) * (e3_ - e2_) / (xr - e3_);
      const Real w = agm_elliptic_integral(sqrt(e1_ - e3_), sqrt(e1_ - e2_), sqrt(shifted - e3_));
      candidates = {real_c(w) + half_other, real_c(-w) + half_other};
    }
  } else {
    const Real beta = sqrt(e1_ * e1_ * 3 - g2_ / 4);
    const Real alpha = e1_ * 3;
    const Real gap = xr - e1_;
    Real w(prec_);
    if (gap.sign() > 0) {
      w = agm_elliptic_integral(sqrt(beta) * 2, sqrt(beta * 2 + alpha), (gap + beta) / sqrt(gap));
    }
    candidates = {real_c(w), real_c(-w), half_real - real_c(w), real_c(w) - half_real};
  }

  const Real scale_x = abs(xr) + 1;
  const Real scale_y = abs(yr) + 1;
  std::optional<Complex> best;
  Real best_score(prec_);
  for (const auto& z : candidates) {
    const auto [wp, wpp] = weierstrass(z);
    const Real score = abs(wp - real_c(xr)) / scale_x + abs(wpp - real_c(yr)) / scale_y;
    if (!best || score < best_score) {
      best = z;
      best_score = score;
    }
  }
  const Real tolerance = exp2i(-static_cast<long>(prec_) / 2, prec_);
  if (!best || !(best_score < tolerance)) {
    throw InternalError("elliptic logarithm does not reproduce the point " + point.to_string());
  }
  return *best;
}

ArchParams period_lattice_and_log(const WeierstrassCurve& e, const CurvePoint& p, mpfr_prec_t precision) {
  const PeriodLattice lattice(e, precision);
  ArchParams out{lattice.tau(), Complex(precision), lattice.q(), Complex(precision), p.is_origin()};
  if (out.origin) {
    out.u = one(precision);
    return out;
  }
  out.z = lattice.normalised(lattice.elliptic_log(p));
  out.u = exp_2pi_i(out.z);
  return out;
}

}  // namespace ech
