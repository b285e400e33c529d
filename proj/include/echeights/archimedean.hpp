#pragma once

#include <utility>

#include "echeights/curve.hpp"
#include "echeights/real.hpp"

namespace ech {

/// Period lattice of E(C) for the model Y^2 = 4X^3 - g2 X - g3 with
/// X = x + b2/12, Y = 2y + a1 x + a3. The stored basis is reduced so that
/// tau = omega2/omega1 lies in the standard fundamental domain.
class PeriodLattice {
 public:
  PeriodLattice(const WeierstrassCurve& e, mpfr_prec_t precision);

  [[nodiscard]] mpfr_prec_t precision() const { return prec_; }
  [[nodiscard]] const Complex& omega1() const { return omega1_; }
  [[nodiscard]] const Complex& omega2() const { return omega2_; }
  [[nodiscard]] const Complex& tau() const { return tau_; }
  [[nodiscard]] const Complex& q() const { return q_; }
  [[nodiscard]] const Real& g2() const { return g2_; }
  [[nodiscard]] const Real& g3() const { return g3_; }

  /// z in C with (wp(z), wp'(z)) = (X(P), Y(P)); zero for the origin. Throws
  /// InternalError when no candidate reproduces the point.
  [[nodiscard]] Complex elliptic_log(const CurvePoint& p) const;

  /// z / omega1 moved into the parallelogram centred at 0 with Im >= 0 (the sign
  /// flip is harmless for even functions only).
  [[nodiscard]] Complex normalised(const Complex& z) const;

  /// wp(z) and wp'(z) for the lattice, by q-series.
  [[nodiscard]] std::pair<Complex, Complex> weierstrass(const Complex& z) const;

  /// Silverman's lambda'(z) from the Bernoulli q-series; z must not be a lattice point.
  [[nodiscard]] Real lambda_silverman(const Complex& z) const;

 private:
  [[nodiscard]] Complex reduce_to_cell(Complex w) const;

  mpfr_prec_t prec_;
  Rational b2_, a1_, a3_;
  Real g2_, g3_;
  bool positive_discriminant_;
  Real e1_, e2_, e3_;                  // e2_, e3_ unused when the discriminant is negative
  Complex real_period_, other_period_;  // basis before reduction, from the AGM
  Complex omega1_, omega2_, tau_, q_;
};

/// Uniformisation data for P: tau, z = elliptic_log/omega1 reduced, q and u.
struct ArchParams {
  Complex tau;
  Complex z;
  Complex q;
  Complex u;
  bool origin = false;
};

ArchParams period_lattice_and_log(const WeierstrassCurve& e, const CurvePoint& p, mpfr_prec_t precision = 64);

/// Working precision used for a requested output precision.
mpfr_prec_t working_precision(long precision_bits);

}  // namespace ech
