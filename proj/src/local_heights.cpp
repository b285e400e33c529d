#include "echeights/local_heights.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ech {

Real NonArchHeight::value(mpfr_prec_t precision) const {
  return Real(coefficient, precision) * log(Real(p, precision));
}

std::string NonArchHeight::exact_string() const {
  if (coefficient == 0) return "0";
  return to_string(coefficient) + " * log " + to_string(p);
}

namespace {

constexpr long kMaxOracleMultiple = 24;

void require_affine(const CurvePoint& p, const char* what) {
  if (p.is_origin()) throw DomainError(std::string(what) + " is undefined at the origin");
}

void require_on(const WeierstrassCurve& e, const CurvePoint& p) {
  if (!on_curve(e, p)) throw InputError("point " + p.to_string() + " is not on curve " + e.to_string());
}

Rational half_pole_order(const Rational& x, const Integer& p) {
  const long v = ord(x, p);
  return v < 0 ? fraction(-v, 2) : Rational(0);
}

// Denominator of x with every prime of `skip` divided out.
Integer strip(Integer n, const std::vector<Integer>& skip) {
  for (const auto& p : skip) {
    while (n % p == 0) n /= p;
  }
  return n;
}

}  // namespace

NonArchHeight adjust_for_model(const WeierstrassCurve& e, const Integer& prime, const NonArchHeight& on_minimal) {
  const MinimalModel minimal = minimal_model_at(e, prime);
  const long shift = ord(e.discriminant(), prime) - ord(minimal.curve.discriminant(), prime);
  return {on_minimal.coefficient - fraction(shift, 6), prime};
}

Rational IntersectionTerms::coefficient(bool with_phi) const {
  return 2 * section - (with_phi ? phi_pairing : Rational(0)) + model_shift;
}

IntersectionTerms intersection_terms(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime) {
  require_affine(p, "the local height");
  require_on(e, p);
  const LocalModelData data = local_data(e, prime);
  const CurvePoint pm = data.to_minimal.apply(p);
  const ComponentLabel label = component_index(data, p);
  const SpecialFiberGraph fiber = fiber_for_type(data.kodaira);
  const VerticalQDivisor phi = solve_phi(fiber, label);
  return {section_intersection(data.minimal_curve, pm, CurvePoint::origin(), prime),
          phi_pairing(fiber, phi, label),
          -fraction(ord(e.discriminant(), prime) - data.v_delta_min, 6),
          data.kodaira,
          label};
}

NonArchHeight local_height_nonarch(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime) {
  return {intersection_terms(e, p, prime).coefficient(), prime};
}

NonArchHeight intlambda_height(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q,
                               const Integer& prime) {
  require_affine(p, "the local height");
  require_on(e, p);
  require_on(e, q);
  if (q.is_origin() || q == p || q == negate(e, p)) {
    throw DomainError("auxiliary point must differ from O, P and -P");
  }
  const LocalModelData data = local_data(e, prime);
  const WeierstrassCurve& em = data.minimal_curve;
  const CurvePoint pm = data.to_minimal.apply(p);
  const CurvePoint qm = data.to_minimal.apply(q);
  const CurvePoint sum = add(em, pm, qm);
  const CurvePoint origin = CurvePoint::origin();

  // (D . D_Q) with D = P - O and D_Q = (P+Q) - (Q)
  const Rational sections = section_intersection(em, pm, sum, prime) - section_intersection(em, pm, qm, prime) -
                            section_intersection(em, origin, sum, prime) +
                            section_intersection(em, origin, qm, prime);
  const SpecialFiberGraph fiber = fiber_for_type(data.kodaira);
  const VerticalQDivisor phi = solve_phi(fiber, component_index(data, p));
  const Rational vertical = phi.phi.at(fiber.component_for(component_index(data, add(e, p, q)))) -
                            phi.phi.at(fiber.component_for(component_index(data, q)));
  const Rational on_minimal = -(sections + vertical) - ord(pm.x() - qm.x(), prime);
  const long shift = ord(e.discriminant(), prime) - data.v_delta_min;
  return {on_minimal - fraction(shift, 6), prime};
}

ArchHeight local_height_arch(const WeierstrassCurve& e, const CurvePoint& p, long precision_bits) {
  require_affine(p, "the archimedean local height");
  require_on(e, p);
  const mpfr_prec_t w = working_precision(precision_bits);
  const PeriodLattice lattice(e, w);
  const Real lambda = lattice.lambda_silverman(lattice.elliptic_log(p));
  const Real delta = abs(Real(e.discriminant(), w));
  return {lambda * 2 + log(delta) / 6, precision_bits};
}

Real green_pairing(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q, long precision_bits) {
  require_on(e, p);
  require_on(e, q);
  const CurvePoint sum = add(e, p, q);
  const CurvePoint diff = subtract(e, p, q);
  if (p.is_origin() || q.is_origin() || sum.is_origin() || diff.is_origin()) {
    throw DomainError("Green's pairing needs P, Q, P+Q and P-Q all different from O");
  }
  const PeriodLattice lattice(e, working_precision(precision_bits));
  auto lam = [&](const CurvePoint& r) { return lattice.lambda_silverman(lattice.elliptic_log(r)); };
  return lam(q) * 2 - lam(sum) - lam(diff);
}

PlaceHeight place_height(const WeierstrassCurve& e, const CurvePoint& p, std::string_view place,
                         long precision_bits) {
  if (place == "inf") {
    return {"inf", std::nullopt, local_height_arch(e, p, precision_bits).value, std::nullopt, std::nullopt};
  }
  require_affine(p, "a local height");
  require_on(e, p);
  const Integer prime = parse_rational(place).get_num();
  if (to_string(prime) != place || !is_prime(prime)) {
    throw InputError("place must be \"inf\" or a prime: '" + std::string(place) + "'");
  }
  const LocalModelData data = local_data(e, prime);
  const NonArchHeight h = local_height_nonarch(e, p, prime);
  return {to_string(prime), h, h.value(working_precision(precision_bits)), data.kodaira,
          data.component_group.label_string(component_index(data, p))};
}

HeightBreakdown height_breakdown(const WeierstrassCurve& e, const CurvePoint& p, long precision_bits) {
  require_affine(p, "the height breakdown");
  require_on(e, p);
  HeightBreakdown out{{}, Real(working_precision(precision_bits)), precision_bits};

  const std::vector<Integer> bad = bad_primes(e);
  std::set<Integer> primes(bad.begin(), bad.end());
  const Integer rest = strip(p.x().get_den(), bad);
  if (rest > 1) {
    for (const auto& [q, k] : factorize(rest)) primes.insert(q);
  }
  out.places.push_back(place_height(e, p, "inf", precision_bits));
  for (const auto& prime : primes) out.places.push_back(place_height(e, p, to_string(prime), precision_bits));
  for (const auto& place : out.places) out.total += place.value;
  return out;
}

Real canonical_height(const WeierstrassCurve& e, const CurvePoint& p, long precision_bits) {
  const mpfr_prec_t w = working_precision(precision_bits);
  if (p.is_origin()) return Real(w);
  require_on(e, p);
  Real total = local_height_arch(e, p, precision_bits).value;
  const std::vector<Integer> bad = bad_primes(e);
  for (const auto& prime : bad) total += local_height_nonarch(e, p, prime).value(w);
  // At the remaining primes the model is minimal with good reduction, so only the pole order of x counts.
  const Integer rest = strip(p.x().get_den(), bad);
  if (rest > 1) total += log(Real(rest, w));
  return total;
}

DoublingEstimate doubling_limit_oracle(const WeierstrassCurve& e, const CurvePoint& p, int n_steps) {
  if (n_steps < 0 || n_steps > 12) throw InputError("doubling steps must lie in 0..12");
  require_on(e, p);
  if (p.is_origin()) return {0, true, 0};
  Rational x = p.x();
  std::vector<Rational> seen{x};
  for (int n = 1; n <= n_steps; ++n) {
    const auto next = double_x(e, x);
    if (!next) return {0, true, n};
    x = *next;
    if (std::find(seen.begin(), seen.end(), x) != seen.end()) return {0, true, n};
    seen.push_back(x);
  }
  const CurvePoint probe(x, 0);  // only x enters the naive height
  return {naive_x_height(probe) / std::pow(4.0, n_steps), false, n_steps};
}

double residual_oracle(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime, long precision_bits,
                       int n_steps) {
  require_affine(p, "the residual oracle");
  require_on(e, p);
  if (!is_prime(prime)) throw InputError("not a prime: " + to_string(prime));
  const mpfr_prec_t w = working_precision(precision_bits);

  std::vector<Integer> bad = bad_primes(e);
  if (std::find(bad.begin(), bad.end(), prime) == bad.end()) bad.push_back(prime);
  std::vector<LocalModelData> others;
  for (const auto& q : bad) {
    if (q != prime) others.push_back(local_data(e, q));
  }

  // Smallest N with N P in E^0 at every other bad prime. Then
  // lambda_p(P) = (lambda_p(N P) + 2 log|psi_N(P)|_p) / N^2.
  long n = 0;
  CurvePoint r;
  for (long k = 1; k <= kMaxOracleMultiple && n == 0; ++k) {
    r = multiply(e, p, k);
    if (r.is_origin()) throw DomainError("residual oracle: P is torsion of order " + std::to_string(k));
    const bool clean = std::all_of(others.begin(), others.end(), [&](const auto& d) { return is_in_e0(d, r); });
    if (clean) n = k;
  }
  if (n == 0) {
    for (const auto& d : others) {
      if (!is_in_e0(d, p)) {
        throw DomainError("residual oracle: no small multiple of P reduces into E^0 at the bad prime " +
                          to_string(d.p));
      }
    }
  }

  Real others_sum = local_height_arch(e, r, precision_bits).value;
  for (const auto& d : others) {
    const Rational coefficient = 2 * half_pole_order(d.to_minimal.apply(r).x(), d.p) -
                                 fraction(ord(e.discriminant(), d.p) - d.v_delta_min, 6);
    others_sum += NonArchHeight{coefficient, d.p}.value(w);
  }
  const Integer rest = strip(r.x().get_den(), bad);
  if (rest > 1) others_sum += log(Real(rest, w));

  const DoublingEstimate h = doubling_limit_oracle(e, p, n_steps);
  const double n2 = static_cast<double>(n * n);
  const double lambda_multiple = n2 * h.value - others_sum.to_double();
  const long psi_order = ord(division_polynomial_value(e, p, n), prime);
  return (lambda_multiple - 2.0 * static_cast<double>(psi_order) * std::log(prime.get_d())) / n2;
}

}  // namespace ech
