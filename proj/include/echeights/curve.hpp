#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "echeights/arith.hpp"

namespace ech {

struct CurveInvariants {
  Rational b2, b4, b6, b8;
  Rational c4, c6;
  Rational discriminant;
  Rational j;
};

/// b/c invariants, discriminant and j-invariant of [a1,a2,a3,a4,a6].
/// Throws SingularCurveError when the discriminant vanishes.
CurveInvariants curve_invariants(const std::array<Rational, 5>& a);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q, nonsingular.
class WeierstrassCurve {
 public:
  WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6);
  explicit WeierstrassCurve(const std::array<Rational, 5>& a);

  /// "a1,a2,a3,a4,a6" with integer or num/den entries.
  static WeierstrassCurve parse(std::string_view text);

  [[nodiscard]] const Rational& a1() const { return a_[0]; }
  [[nodiscard]] const Rational& a2() const { return a_[1]; }
  [[nodiscard]] const Rational& a3() const { return a_[2]; }
  [[nodiscard]] const Rational& a4() const { return a_[3]; }
  [[nodiscard]] const Rational& a6() const { return a_[4]; }
  [[nodiscard]] const std::array<Rational, 5>& coefficients() const { return a_; }

  [[nodiscard]] const CurveInvariants& invariants() const { return inv_; }
  [[nodiscard]] const Rational& b2() const { return inv_.b2; }
  [[nodiscard]] const Rational& b4() const { return inv_.b4; }
  [[nodiscard]] const Rational& b6() const { return inv_.b6; }
  [[nodiscard]] const Rational& b8() const { return inv_.b8; }
  [[nodiscard]] const Rational& c4() const { return inv_.c4; }
  [[nodiscard]] const Rational& c6() const { return inv_.c6; }
  [[nodiscard]] const Rational& discriminant() const { return inv_.discriminant; }
  [[nodiscard]] const Rational& j_invariant() const { return inv_.j; }

  [[nodiscard]] bool is_integral() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) { return a.a_ == b.a_; }

 private:
  std::array<Rational, 5> a_;
  CurveInvariants inv_;
};

/// The origin O or an affine rational point.
class CurvePoint {
 public:
  CurvePoint() = default;  // O
  CurvePoint(Rational x, Rational y) : affine_(std::in_place, std::move(x), std::move(y)) {}

  static CurvePoint origin() { return {}; }
  /// "x,y" or "O".
  static CurvePoint parse(std::string_view text);

  [[nodiscard]] bool is_origin() const { return !affine_.has_value(); }
  [[nodiscard]] const Rational& x() const;
  [[nodiscard]] const Rational& y() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;

 private:
  std::optional<std::pair<Rational, Rational>> affine_;
};

bool on_curve(const WeierstrassCurve& e, const CurvePoint& p);

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelMap {
  Rational u{1}, r{0}, s{0}, t{0};

  static ModelMap identity() { return {}; }
  static ModelMap scaling(Rational u) { return {std::move(u), 0, 0, 0}; }
  static ModelMap translation(Rational r, Rational s, Rational t) { return {1, std::move(r), std::move(s), std::move(t)}; }

  /// First this map, then `next` (which acts on this map's target model).
  [[nodiscard]] ModelMap then(const ModelMap& next) const;
  [[nodiscard]] ModelMap inverse() const;
  [[nodiscard]] bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }

  /// Transformed curve. Throws InputError if u = 0.
  [[nodiscard]] WeierstrassCurve apply(const WeierstrassCurve& e) const;
  /// Image of a point of the source model on the target model.
  [[nodiscard]] CurvePoint apply(const CurvePoint& p) const;

  friend bool operator==(const ModelMap&, const ModelMap&) = default;
};

struct TransformedCurve {
  WeierstrassCurve curve;
  ModelMap map;
  [[nodiscard]] CurvePoint operator()(const CurvePoint& p) const { return map.apply(p); }
};

TransformedCurve apply_transform(const WeierstrassCurve& e, const ModelMap& map);

// Group law. The checked variants validate that inputs lie on the curve and throw
// InputError otherwise; the unchecked ones trust their caller.
CurvePoint negate(const WeierstrassCurve& e, const CurvePoint& p);
CurvePoint add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint subtract(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint multiply(const WeierstrassCurve& e, const CurvePoint& p, long n);
CurvePoint add_unchecked(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint multiply_unchecked(const WeierstrassCurve& e, const CurvePoint& p, long n);

/// x(2P) from x(P) alone; nullopt when 2P = O.
std::optional<Rational> double_x(const WeierstrassCurve& e, const Rational& x);

/// psi_n(P) for the division polynomials normalised by psi_2 = 2y + a1 x + a3
/// (n >= 1, P affine and on the curve).
Rational division_polynomial_value(const WeierstrassCurve& e, const CurvePoint& p, long n);

/// log max(|num x|, den x). Throws DomainError for P = O.
double naive_x_height(const CurvePoint& p);

}  // namespace ech
