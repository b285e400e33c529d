#include "echeights/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace ech {

namespace {

WeierstrassCurve curve_of(long a1, long a2, long a3, long a4, long a6) {
  return WeierstrassCurve(a1, a2, a3, a4, a6);
}

WeierstrassCurve curve_of(const Integer& a2, const Integer& a3, const Integer& a4, const Integer& a6) {
  return WeierstrassCurve(0, Rational(a2), Rational(a3), Rational(a4), Rational(a6));
}

}  // namespace

std::vector<Table1Fixture> table1_fixtures() {
  std::vector<Table1Fixture> out;
  const Integer five = 5;
  for (int n = 2; n <= 5; ++n) {
    // y^2 = (x + 1 - p)(x^2 - p^(n-1) x + p^n) at p = 5
    const Integer a = pow(five, n - 1), b = pow(five, n);
    out.push_back({"I_n (n=" + std::to_string(n) + ")", KodairaType::I(n), five,
                   curve_of(-a - 4, 0, b + 4 * a, -4 * b), {4, 0}, {5, 5}, std::nullopt, n});
  }
  out.push_back({"III", {KodairaSymbol::III, 0}, 7, curve_of(0, 0, 0, 7, 49), {-3, 1}, {0, 7}, std::nullopt,
                 std::nullopt});
  out.push_back({"IV", {KodairaSymbol::IV, 0}, 7, curve_of(0, 0, 0, 0, 4 * 49), {-3, 13}, {0, 14}, std::nullopt,
                 std::nullopt});
  out.push_back({"I0*", KodairaType::I_star(0), 7, curve_of(0, 7, 49, 49, 0), {-6, -6}, {0, 0}, CurvePoint(14, 49),
                 std::nullopt});
  for (int k = 2; k <= 3; ++k) {
    // n = 2k - 3: y^2 + 2^k y = x (x - (2^k - 2)) (x + 2^(k+1))
    const Integer K = pow(Integer(2), k);
    const int n = 2 * k - 3;
    out.push_back({"I_n* odd (n=" + std::to_string(n) + ")", KodairaType::I_star(n), 2,
                   curve_of(K + 2, K, -2 * K * (K - 2), 0), {Rational(-1), Rational(K - 1)}, {0, 0}, std::nullopt,
                   n});
  }
  for (int k = 2; k <= 3; ++k) {
    // n = 2k - 2: y^2 - 2^(k+1) y = x (x - (2^k - 2)) (x + 2^k)
    const Integer K = pow(Integer(2), k);
    const int n = 2 * k - 2;
    const CurvePoint p0 = k == 2 ? CurvePoint(-1, -1) : CurvePoint(7, -5);
    out.push_back({"I_n* even (n=" + std::to_string(n) + ")", KodairaType::I_star(n), 2,
                   curve_of(2, -2 * K, -K * (K - 2), 0), p0, {0, 0}, CurvePoint(Rational(-K), 0), n});
  }
  out.push_back({"IV*", {KodairaSymbol::IVStar, 0}, 7, curve_of(0, 0, 0, 2 * 343, 2401), {32, 239}, {0, 49},
                 std::nullopt, std::nullopt});
  out.push_back({"III*", {KodairaSymbol::IIIStar, 0}, 7, curve_of(0, 0, 0, 343, 5 * 16807), {-38, 127},
                 {98, 1029}, std::nullopt, std::nullopt});
  return out;
}

Rational closed_form_height(const KodairaType& type, const ComponentLabel& label) {
  if (label.is_identity()) return 0;
  switch (type.symbol) {
    case KodairaSymbol::In: return -fraction(label.a * (type.n - label.a), type.n);
    case KodairaSymbol::III: return fraction(-1, 2);
    case KodairaSymbol::IV: return fraction(-2, 3);
    case KodairaSymbol::I0Star: return -1;
    case KodairaSymbol::InStar: {
      const bool near = type.n % 2 ? label == ComponentLabel{2, 0} : label == ComponentLabel{1, 1};
      return near ? Rational(-1) : -fraction(type.n + 4, 4);
    }
    case KodairaSymbol::IVStar: return fraction(-4, 3);
    case KodairaSymbol::IIIStar: return fraction(-3, 2);
    default: break;
  }
  throw InputError("no non-identity component for type " + type.to_string());
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

namespace {

constexpr double kOracleTolerance = 1e-3;
constexpr double kParallelogramTolerance = 1e-8;
constexpr double kFhTolerance = 1e-3;

std::string labels_string(const ComponentGroup& g, const std::vector<ComponentLabel>& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : ", ") + g.label_string(l);
  return out;
}

bool generates(const ComponentGroup& g, const std::vector<ComponentLabel>& labels) {
  std::vector<ComponentLabel> span{ComponentLabel{}};
  for (std::size_t i = 0; i < span.size(); ++i) {
    for (const auto& l : labels) {
      const ComponentLabel next = g.add(span[i], l);
      if (std::find(span.begin(), span.end(), next) == span.end()) span.push_back(next);
    }
  }
  return static_cast<int>(span.size()) == g.order();
}

// A non-torsion point on the same component as pj: pj + m P0 for the first suitable m.
std::optional<CurvePoint> oracle_target(const Table1Fixture& f, const CurvePoint& pj) {
  for (long m = 0; m <= 5; ++m) {
    const CurvePoint r = add(f.curve, pj, multiply(f.curve, f.P0, m));
    if (r.is_origin()) continue;
    if (!doubling_limit_oracle(f.curve, r, 4).torsion) return r;
  }
  return std::nullopt;
}

void check_point(const Table1Fixture& f, const std::string& name, const CurvePoint& pj, const LocalModelData& data,
                 const Table1Options& options, VerificationReport& report) {
  const std::string row = f.row;
  const IntersectionTerms terms = intersection_terms(f.curve, pj, f.p);
  const Rational lambda = terms.coefficient(!options.drop_phi);
  const double log_p = std::log(f.p.get_d());

  const SpecialFiberGraph fiber = fiber_for_type(data.kodaira);
  const Rational phi = phi_pairing(fiber, solve_phi(fiber, terms.label), terms.label);
  {
    CheckResult c{row, "phi identity " + name, lambda == -phi, "", -phi.get_d(), lambda.get_d(), std::nullopt};
    c.detail = "lambda_p = " + to_string(lambda) + " * log p, -phi_pairing = " + to_string(-phi);
    report.checks.push_back(c);
  }
  {
    const Rational expected = closed_form_height(data.kodaira, terms.label);
    CheckResult c{row, "closed form " + name, lambda == expected, "", expected.get_d(), lambda.get_d(),
                  std::nullopt};
    c.detail = "expected " + to_string(expected) + " on component " + data.component_group.label_string(terms.label);
    report.checks.push_back(c);
  }
  {
    CheckResult c{row, "residual oracle " + name, false, "", std::nullopt, std::nullopt, std::nullopt};
    const auto target = oracle_target(f, pj);
    if (!target) {
      c.detail = "no non-torsion point on the component of " + pj.to_string();
    } else {
      try {
        const double oracle = residual_oracle(f.curve, *target, f.p, options.precision_bits, options.oracle_steps);
        const double value = lambda.get_d() * log_p;
        c.expected = oracle;
        c.observed = value;
        c.residual = std::abs(value - oracle);
        c.passed = *c.residual < kOracleTolerance;
        c.detail = "oracle evaluated at " + target->to_string();
      } catch (const std::exception& ex) {
        c.detail = ex.what();
      }
    }
    report.checks.push_back(c);
  }
  {
    CheckResult c{row, "constancy " + name, true, "", lambda.get_d(), std::nullopt, std::nullopt};
    for (long m = 0; m <= 5; ++m) {
      const CurvePoint r = add(f.curve, pj, multiply(f.curve, f.P0, m));
      if (r.is_origin()) continue;
      const Rational v = intersection_terms(f.curve, r, f.p).coefficient(!options.drop_phi);
      if (v != lambda) {
        c.passed = false;
        c.detail = "m = " + std::to_string(m) + " gives " + to_string(v);
      }
    }
    if (c.passed) c.detail = "lambda_p(P + m P0) = " + to_string(lambda) + " for m = 0..5";
    report.checks.push_back(c);
  }
  {
    CheckResult c{row, "auxiliary point " + name, true, "", lambda.get_d(), std::nullopt, std::nullopt};
    int used = 0;
    const CurvePoint neg = negate(f.curve, pj);
    for (long m = 1; m <= 3; ++m) {
      for (const CurvePoint& q : {multiply(f.curve, f.P0, m), add(f.curve, multiply(f.curve, f.P0, m), pj)}) {
        if (q.is_origin() || q == pj || q == neg) continue;
        ++used;
        const Rational v = intlambda_height(f.curve, pj, q, f.p).coefficient;
        if (v != terms.coefficient()) {
          c.passed = false;
          c.detail = "Q = " + q.to_string() + " gives " + to_string(v);
        }
      }
    }
    if (used == 0) {
      c.passed = false;
      c.detail = "no admissible auxiliary point";
    } else if (c.passed) {
      c.detail = std::to_string(used) + " auxiliary points agree";
    }
    report.checks.push_back(c);
  }
}

}  // namespace

VerificationReport verify_table1(const Table1Options& options) {
  VerificationReport report{options.drop_phi ? "table1 (Phi forced to 0)" : "table1", {}};
  for (const auto& f : table1_fixtures()) {
    const LocalModelData data = local_data(f.curve, f.p);
    report.checks.push_back({f.row, "type", data.kodaira == f.kodaira,
                             "computed " + data.kodaira.to_string() + ", expected " + f.kodaira.to_string(),
                             std::nullopt, std::nullopt, std::nullopt});
    report.checks.push_back({f.row, "P0 in E^0", on_curve(f.curve, f.P0) && is_in_e0(data, f.P0),
                             "P0 = " + f.P0.to_string(), std::nullopt, std::nullopt, std::nullopt});
    std::vector<std::pair<std::string, CurvePoint>> points{{"P1", f.P1}};
    if (f.P2) points.emplace_back("P2", *f.P2);
    std::vector<ComponentLabel> labels;
    for (const auto& [name, pj] : points) {
      const bool on = on_curve(f.curve, pj);
      const bool off = on && !is_in_e0(data, pj);
      report.checks.push_back({f.row, name + " off E^0", off, name + " = " + pj.to_string(), std::nullopt,
                               std::nullopt, std::nullopt});
      if (on) labels.push_back(component_index(data, pj));
    }
    report.checks.push_back({f.row, "generators", generates(data.component_group, labels),
                             "labels {" + labels_string(data.component_group, labels) + "} in " +
                                 data.component_group.to_string(),
                             std::nullopt, std::nullopt, std::nullopt});
    for (const auto& [name, pj] : points) {
      if (on_curve(f.curve, pj)) check_point(f, name, pj, data, options, report);
    }
  }
  return report;
}

FhResult fh_global_check(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q, long precision_bits,
                         int n_steps) {
  if (!on_curve(e, p) || !on_curve(e, q)) throw InputError("points must lie on the curve");
  if (p.is_origin() || q.is_origin() || q == p || q == negate(e, p)) {
    throw DomainError("the auxiliary point must differ from O, P and -P");
  }
  const mpfr_prec_t w = working_precision(precision_bits);
  const MinimalModel global = global_minimal_model(e);
  const WeierstrassCurve& em = global.curve;
  const CurvePoint pm = global.map.apply(p), qm = global.map.apply(q);
  const CurvePoint sum = add(em, pm, qm), diff = subtract(em, qm, pm);

  // Horizontal part: sum over all p of (P.P+Q) - (P.Q) - (O.P+Q) + (O.Q), where
  // (A.B)_p = max(-v_p(x(B - A)), 0) / 2, so each sum over p is log(den x) / 2.
  auto log_den = [&](const CurvePoint& r) { return log(Real(Integer(r.x().get_den()), w)); };
  Real pairing = (log_den(qm) * 2 - log_den(diff) - log_den(sum)) / 2;

  for (const auto& prime : bad_primes(em)) {
    const LocalModelData data = local_data(em, prime);
    const SpecialFiberGraph fiber = fiber_for_type(data.kodaira);
    const VerticalQDivisor phi = solve_phi(fiber, component_index(data, pm));
    const Rational vertical = phi.phi.at(fiber.component_for(component_index(data, sum))) -
                              phi.phi.at(fiber.component_for(component_index(data, qm)));
    pairing += NonArchHeight{vertical, prime}.value(w);
  }
  pairing += green_pairing(em, pm, qm, precision_bits);

  const DoublingEstimate h = doubling_limit_oracle(e, p, n_steps);
  FhResult out{pairing, h.value, 0};
  out.residual = pairing.to_double() + h.value;
  return out;
}

Real parallelogram_residual(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q,
                            long precision_bits) {
  const CurvePoint sum = add(e, p, q), diff = subtract(e, p, q);
  if (p.is_origin() || q.is_origin() || sum.is_origin() || diff.is_origin()) {
    throw DomainError("parallelogram law needs P, Q, P+Q and P-Q all different from O");
  }
  const mpfr_prec_t w = working_precision(precision_bits);
  const PeriodLattice lattice(e, w);
  auto lam = [&](const CurvePoint& r) { return lattice.lambda_silverman(lattice.elliptic_log(r)); };
  return lam(sum) + lam(diff) - lam(p) * 2 - lam(q) * 2 + log(abs(Real(Rational(p.x() - q.x()), w))) -
         log(abs(Real(e.discriminant(), w))) / 6;
}

std::vector<SampleCurve> sample_curves() {
  return {
      {"37a", curve_of(0, 0, 1, -1, 0), {{0, 0}}},
      {"389a", curve_of(0, 1, 1, -2, 0), {{-1, 1}, {0, 0}}},
      {"5077a", curve_of(0, 0, 1, -7, 6), {{0, 2}, {1, 0}, {2, 0}}},
      {"53a", curve_of(1, -1, 1, 0, 0), {{0, 0}}},
      {"y^2=x^3-2", curve_of(0, 0, 0, 0, -2), {{3, 5}}},
      {"y^2=x^3-2x", curve_of(0, 0, 0, -2, 0), {{-1, 1}, {2, 2}}},
      {"y^2=x^3+7x+49", curve_of(0, 0, 0, 7, 49), {{-3, 1}, {0, 7}}},
  };
}

std::vector<ParallelogramCase> parallelogram_samples(std::size_t count, unsigned seed) {
  const auto curves = sample_curves();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<ParallelogramCase> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > count * 100) throw InternalError("could not draw enough parallelogram samples");
    const SampleCurve& s = curves[out.size() % curves.size()];
    auto draw = [&] {
      CurvePoint r;
      for (const auto& g : s.generators) r = add(s.curve, r, multiply(s.curve, g, coef(rng)));
      return r;
    };
    const CurvePoint p = draw(), q = draw();
    if (p.is_origin() || q.is_origin() || p.x() == q.x()) continue;
    out.push_back({s.curve, p, q});
  }
  return out;
}

VerificationReport verify_parallelogram(long precision_bits, std::size_t samples) {
  VerificationReport report{"parallelogram", {}};
  for (const auto& s : parallelogram_samples(samples)) {
    const double r = std::abs(parallelogram_residual(s.curve, s.P, s.Q, precision_bits).to_double());
    report.checks.push_back({s.curve.to_string(), "P=" + s.P.to_string() + " Q=" + s.Q.to_string(),
                             r < kParallelogramTolerance, "", 0.0, r, r});
  }
  return report;
}

VerificationReport verify_fh(long precision_bits) {
  struct Case {
    std::string label;
    WeierstrassCurve curve;
    CurvePoint p, q;
  };
  const std::vector<Case> cases = {
      {"37a", curve_of(0, 0, 1, -1, 0), {0, 0}, {1, 0}},
      {"389a", curve_of(0, 1, 1, -2, 0), {-1, 1}, {0, 0}},
      {"5077a", curve_of(0, 0, 1, -7, 6), {0, 2}, {1, 0}},
      {"y^2=x^3-2", curve_of(0, 0, 0, 0, -2), {3, 5}, {Rational(129, 100), Rational(-383, 1000)}},
      {"III row", curve_of(0, 0, 0, 7, 49), {0, 7}, {-3, 1}},
      {"I0* row", curve_of(0, 7, 49, 49, 0), {0, 0}, {-6, -6}},
      {"I_n row (n=3)", curve_of(0, -29, 0, 225, -500), {5, 5}, {4, 0}},
  };
  VerificationReport report{"fh", {}};
  for (const auto& c : cases) {
    CheckResult r{c.label, "P=" + c.p.to_string() + " Q=" + c.q.to_string(), false, "", std::nullopt,
                  std::nullopt, std::nullopt};
    try {
      const FhResult fh = fh_global_check(c.curve, c.p, c.q, precision_bits);
      r.expected = -fh.height;
      r.observed = fh.pairing.to_double();
      r.residual = std::abs(fh.residual);
      r.passed = *r.residual < kFhTolerance;
    } catch (const std::exception& ex) {
      r.detail = ex.what();
    }
    report.checks.push_back(r);
  }
  return report;
}

}  // namespace ech
