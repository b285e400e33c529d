#include "echeights/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace ech {

CurveInvariants curve_invariants(const std::array<Rational, 5>& a) {
  const auto& [a1, a2, a3, a4, a6] = a;
  CurveInvariants inv;
  inv.b2 = a1 * a1 + 4 * a2;
  inv.b4 = 2 * a4 + a1 * a3;
  inv.b6 = a3 * a3 + 4 * a6;
  inv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
  inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
  inv.discriminant = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 -
                     27 * inv.b6 * inv.b6 + 9 * inv.b2 * inv.b4 * inv.b6;
  if (inv.discriminant == 0) throw SingularCurveError("singular curve: discriminant is zero");
  inv.j = inv.c4 * inv.c4 * inv.c4 / inv.discriminant;
  if (inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 != 1728 * inv.discriminant ||
      4 * inv.b8 != inv.b2 * inv.b6 - inv.b4 * inv.b4) {
    throw InternalError("curve invariant identities failed");
  }
  return inv;
}

WeierstrassCurve::WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
    : WeierstrassCurve(std::array<Rational, 5>{std::move(a1), std::move(a2), std::move(a3),
                                               std::move(a4), std::move(a6)}) {}

WeierstrassCurve::WeierstrassCurve(const std::array<Rational, 5>& a) : a_(a), inv_(curve_invariants(a)) {}

WeierstrassCurve WeierstrassCurve::parse(std::string_view text) {
  std::array<Rational, 5> a;
  std::size_t count = 0;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const auto field = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (count == 5) throw InputError("curve needs exactly five coefficients a1,a2,a3,a4,a6");
    a[count++] = parse_rational(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != 5) throw InputError("curve needs exactly five coefficients a1,a2,a3,a4,a6");
  return WeierstrassCurve(a);
}

bool WeierstrassCurve::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

std::string WeierstrassCurve::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) out += ",";
    out += ech::to_string(a_[i]);
  }
  return out + "]";
}

CurvePoint CurvePoint::parse(std::string_view text) {
  std::string trimmed;
  for (char c : text) {
    if (c != ' ' && c != '\t') trimmed.push_back(c);
  }
  if (trimmed == "O" || trimmed == "o") return origin();
  const auto comma = trimmed.find(',');
  if (comma == std::string::npos || trimmed.find(',', comma + 1) != std::string::npos) {
    throw InputError("point must be \"x,y\" or \"O\": '" + std::string(text) + "'");
  }
  return {parse_rational(trimmed.substr(0, comma)), parse_rational(trimmed.substr(comma + 1))};
}

const Rational& CurvePoint::x() const {
  if (!affine_) throw DomainError("the origin has no affine coordinates");
  return affine_->first;
}

const Rational& CurvePoint::y() const {
  if (!affine_) throw DomainError("the origin has no affine coordinates");
  return affine_->second;
}

std::string CurvePoint::to_string() const {
  if (is_origin()) return "O";
  return "(" + ech::to_string(x()) + "," + ech::to_string(y()) + ")";
}

bool on_curve(const WeierstrassCurve& e, const CurvePoint& p) {
  if (p.is_origin()) return true;
  const Rational& x = p.x();
  const Rational& y = p.y();
  return y * y + e.a1() * x * y + e.a3() * y == x * x * x + e.a2() * x * x + e.a4() * x + e.a6();
}

ModelMap ModelMap::then(const ModelMap& next) const {
  const Rational u2 = u * u;
  return {u * next.u, r + u2 * next.r, s + u * next.s, t + u2 * u * next.t + s * u2 * next.r};
}

ModelMap ModelMap::inverse() const {
  if (u == 0) throw InputError("model map with u = 0 is not invertible");
  const Rational u2 = u * u;
  return {1 / u, -r / u2, -s / u, (r * s - t) / (u2 * u)};
}

WeierstrassCurve ModelMap::apply(const WeierstrassCurve& e) const {
  if (u == 0) throw InputError("model map requires u != 0");
  const Rational u2 = u * u;
  const Rational u3 = u2 * u;
  const Rational na1 = (e.a1() + 2 * s) / u;
  const Rational na2 = (e.a2() - s * e.a1() + 3 * r - s * s) / u2;
  const Rational na3 = (e.a3() + r * e.a1() + 2 * t) / u3;
  const Rational na4 =
      (e.a4() - s * e.a3() + 2 * r * e.a2() - (t + r * s) * e.a1() + 3 * r * r - 2 * s * t) / (u2 * u2);
  const Rational na6 =
      (e.a6() + r * e.a4() + r * r * e.a2() + r * r * r - t * e.a3() - t * t - r * t * e.a1()) / (u3 * u3);
  return WeierstrassCurve(na1, na2, na3, na4, na6);
}

CurvePoint ModelMap::apply(const CurvePoint& p) const {
  if (p.is_origin()) return p;
  const Rational u2 = u * u;
  const Rational x = (p.x() - r) / u2;
  const Rational y = (p.y() - s * u2 * x - t) / (u2 * u);
  return {x, y};
}

TransformedCurve apply_transform(const WeierstrassCurve& e, const ModelMap& map) {
  return {map.apply(e), map};
}

namespace {

void require_on_curve(const WeierstrassCurve& e, const CurvePoint& p) {
  if (!on_curve(e, p)) throw InputError("point " + p.to_string() + " is not on curve " + e.to_string());
}

}  // namespace

CurvePoint negate(const WeierstrassCurve& e, const CurvePoint& p) {
  if (p.is_origin()) return p;
  return {p.x(), -p.y() - e.a1() * p.x() - e.a3()};
}

CurvePoint add_unchecked(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
  if (p.is_origin()) return q;
  if (q.is_origin()) return p;
  const Rational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  Rational lambda, nu;
  if (x1 == x2) {
    const Rational denom = y1 + y2 + e.a1() * x2 + e.a3();
    if (denom == 0) return CurvePoint::origin();
    // here y1 == y2 (the only other point with this x is -P)
    const Rational d = 2 * y1 + e.a1() * x1 + e.a3();
    lambda = (3 * x1 * x1 + 2 * e.a2() * x1 + e.a4() - e.a1() * y1) / d;
    nu = (-x1 * x1 * x1 + e.a4() * x1 + 2 * e.a6() - e.a3() * y1) / d;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
    nu = (y1 * x2 - y2 * x1) / (x2 - x1);
  }
  const Rational x3 = lambda * lambda + e.a1() * lambda - e.a2() - x1 - x2;
  const Rational y3 = -(lambda + e.a1()) * x3 - nu - e.a3();
  return {x3, y3};
}

CurvePoint add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
  require_on_curve(e, p);
  require_on_curve(e, q);
  return add_unchecked(e, p, q);
}

CurvePoint subtract(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
  require_on_curve(e, p);
  require_on_curve(e, q);
  return add_unchecked(e, p, negate(e, q));
}

CurvePoint multiply_unchecked(const WeierstrassCurve& e, const CurvePoint& p, long n) {
  CurvePoint base = n < 0 ? negate(e, p) : p;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  CurvePoint acc;
  while (k > 0) {
    if (k & 1UL) acc = add_unchecked(e, acc, base);
    k >>= 1;
    if (k) base = add_unchecked(e, base, base);
  }
  return acc;
}

CurvePoint multiply(const WeierstrassCurve& e, const CurvePoint& p, long n) {
  require_on_curve(e, p);
  return multiply_unchecked(e, p, n);
}

std::optional<Rational> double_x(const WeierstrassCurve& e, const Rational& x) {
  const Rational x2 = x * x;
  const Rational den = 4 * x2 * x + e.b2() * x2 + 2 * e.b4() * x + e.b6();
  if (den == 0) return std::nullopt;
  return (x2 * x2 - e.b4() * x2 - 2 * e.b6() * x - e.b8()) / den;
}

Rational division_polynomial_value(const WeierstrassCurve& e, const CurvePoint& p, long n) {
  if (n < 1) throw InputError("division polynomial index must be positive");
  require_on_curve(e, p);
  const Rational& x = p.x();
  const Rational& y = p.y();
  const Rational &b2 = e.b2(), &b4 = e.b4(), &b6 = e.b6(), &b8 = e.b8();
  std::map<long, Rational> memo;
  memo[0] = 0;
  memo[1] = 1;
  memo[2] = 2 * y + e.a1() * x + e.a3();
  const Rational x2 = x * x, x3 = x2 * x, x4 = x3 * x;
  memo[3] = 3 * x4 + b2 * x3 + 3 * b4 * x2 + 3 * b6 * x + b8;
  memo[4] = memo[2] * (2 * x4 * x2 + b2 * x4 * x + 5 * b4 * x4 + 10 * b6 * x3 + 10 * b8 * x2 +
                       (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6 * b6));
  std::function<Rational(long)> psi = [&](long k) -> Rational {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    const long m = k / 2;
    Rational value;
    if (k % 2) {
      value = psi(m + 2) * pow(psi(m), 3) - psi(m - 1) * pow(psi(m + 1), 3);
    } else {
      // psi_2 divides every even-index psi, so all of them vanish at 2-torsion points
      if (memo[2] == 0) return memo[k] = 0;
      value = (psi(m - 1) * psi(m - 1) * psi(m) * psi(m + 2) - psi(m - 2) * psi(m) * psi(m + 1) * psi(m + 1)) / memo[2];
    }
    memo[k] = value;
    return value;
  };
  return psi(n);
}

double naive_x_height(const CurvePoint& p) {
  if (p.is_origin()) throw DomainError("naive height of the origin is undefined");
  const Integer num = abs(p.x().get_num());
  const Integer den = p.x().get_den();
  return log_abs(std::max(num == 0 ? Integer(1) : num, den));
}

}  // namespace ech
