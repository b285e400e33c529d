#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "echeights/archimedean.hpp"
#include "echeights/fiber.hpp"
#include "echeights/tate.hpp"

namespace ech {

/// coefficient * log p
struct NonArchHeight {
  Rational coefficient;
  Integer p;

  [[nodiscard]] Real value(mpfr_prec_t precision) const;
  /// "-1/2 * log 7", or "0" for a vanishing height.
  [[nodiscard]] std::string exact_string() const;
  friend bool operator==(const NonArchHeight&, const NonArchHeight&) = default;
};

struct ArchHeight {
  Real value;
  long precision_bits = 64;
};

using LocalHeightValue = std::variant<NonArchHeight, ArchHeight>;

/// The pieces of the intersection formula at p, all as coefficients of log p.
struct IntersectionTerms {
  Rational section;      // (P . O) on the p-minimal model
  Rational phi_pairing;  // (Phi((P) - (O)) . P - O)
  Rational model_shift;  // correction from the p-minimal model to the input model
  KodairaType kodaira;
  ComponentLabel label;

  /// 2 (P . O) - phi_pairing + model_shift; with_phi = false drops the vertical correction.
  [[nodiscard]] Rational coefficient(bool with_phi = true) const;
};

IntersectionTerms intersection_terms(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime);

/// lambda_p(P) from the intersection formula on the p-minimal model, transported
/// to the input model. Throws DomainError for P = O.
NonArchHeight local_height_nonarch(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime);

/// The same kind of value through the auxiliary divisor (P+Q) - (Q):
/// lambda_p(P) = -(D + Phi . D_Q)_p + log|x(P) - x(Q)|_p.
NonArchHeight intlambda_height(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q,
                               const Integer& prime);

/// Moves a height computed on the p-minimal model to `e`:
/// lambda_e = lambda_min - (v_p(Delta_e) - v_p(Delta_min)) / 6.
NonArchHeight adjust_for_model(const WeierstrassCurve& e, const Integer& prime, const NonArchHeight& on_minimal);

/// lambda_inf(P) = 2 lambda'(P) + log|Delta| / 6 with Delta from `e`.
ArchHeight local_height_arch(const WeierstrassCurve& e, const CurvePoint& p, long precision_bits);

/// g_D(D_Q) = 2 lambda'(Q) - lambda'(P+Q) - lambda'(P-Q) for D = (P) - (O), D_Q = (P+Q) - (Q).
Real green_pairing(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q, long precision_bits);

struct PlaceHeight {
  std::string place;  // "inf" or the prime
  std::optional<NonArchHeight> exact;
  Real value;
  std::optional<KodairaType> kodaira;
  std::optional<std::string> component;
};

struct HeightBreakdown {
  std::vector<PlaceHeight> places;  // "inf" first, then primes ascending
  Real total;
  long precision_bits = 64;
};

/// The local height at one place: "inf" or a prime written in decimal.
PlaceHeight place_height(const WeierstrassCurve& e, const CurvePoint& p, std::string_view place,
                         long precision_bits);

/// Every place with a possibly nonzero local height, and their sum.
HeightBreakdown height_breakdown(const WeierstrassCurve& e, const CurvePoint& p, long precision_bits);

/// hat h_{2(O)}(P) as a sum of local heights.
Real canonical_height(const WeierstrassCurve& e, const CurvePoint& p, long precision_bits);

struct DoublingEstimate {
  double value = 0;
  bool torsion = false;
  int steps = 0;
};

/// 4^-n h_x(2^n P); torsion points (some 2^k P = O, or a repeated x) give 0 with the flag set.
DoublingEstimate doubling_limit_oracle(const WeierstrassCurve& e, const CurvePoint& p, int n_steps = 8);

/// lambda_p(P) ~ hat h - lambda_inf - sum over the other finite places, with hat h from
/// the doubling oracle and every other finite term read off x(P) alone. Requires P to
/// reduce into E^0 at every other bad prime; otherwise throws DomainError naming one.
double residual_oracle(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime, long precision_bits,
                       int n_steps = 8);

}  // namespace ech
