#pragma once

#include <optional>
#include <string>
#include <vector>

#include "echeights/local_heights.hpp"

namespace ech {

struct Table1Fixture {
  std::string row;  // e.g. "I_n (n=3)"
  KodairaType kodaira;
  Integer p;
  WeierstrassCurve curve;
  CurvePoint P0;
  CurvePoint P1;
  std::optional<CurvePoint> P2;
  std::optional<int> n;
};

/// The eight families, with I_n instantiated for n = 2..5 at p = 5 and I_n* for
/// n = 1..4 at p = 2.
std::vector<Table1Fixture> table1_fixtures();

/// Closed form of lambda_p (coefficient of log p) for a point on a non-identity
/// component of the given type.
Rational closed_form_height(const KodairaType& type, const ComponentLabel& label);

struct CheckResult {
  std::string row;
  std::string check;
  bool passed = false;
  std::string detail;
  std::optional<double> expected;
  std::optional<double> observed;
  std::optional<double> residual;
};

struct VerificationReport {
  std::string name;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::size_t failures() const;
};

struct Table1Options {
  bool drop_phi = false;  // negative control: recompute every lambda_p with Phi = 0
  long precision_bits = 64;
  int oracle_steps = 8;
};

VerificationReport verify_table1(const Table1Options& options = {});

struct FhResult {
  Real pairing;        // (D + Phi(D) . D') over all places
  double height = 0;   // doubling-oracle estimate of hat h(P)
  double residual = 0;  // pairing + height
};

/// Faltings-Hriljac check for D = (P) - (O), D' = (P+Q) - (Q) on the global minimal model.
FhResult fh_global_check(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q, long precision_bits,
                         int n_steps = 8);

struct ParallelogramCase {
  WeierstrassCurve curve;
  CurvePoint P, Q;
};

/// lambda'(P+Q) + lambda'(P-Q) - 2 lambda'(P) - 2 lambda'(Q) + log|x(P)-x(Q)| - log|Delta|/6.
Real parallelogram_residual(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q,
                            long precision_bits);

/// Deterministic pseudo-random (P, Q) pairs drawn from small combinations of known points.
std::vector<ParallelogramCase> parallelogram_samples(std::size_t count, unsigned seed = 20240601);

struct SampleCurve {
  std::string label;
  WeierstrassCurve curve;
  std::vector<CurvePoint> generators;
};

/// Curves with known non-torsion points used by the property checks.
std::vector<SampleCurve> sample_curves();

VerificationReport verify_parallelogram(long precision_bits = 64, std::size_t samples = 100);
VerificationReport verify_fh(long precision_bits = 64);

}  // namespace ech
