#include <doctest.h>

#include <cmath>

#include "echeights/harness.hpp"

using namespace ech;

namespace {

const WeierstrassCurve k37a(0, 0, 1, -1, 0);
constexpr long kBits = 64;

double d(const Real& r) { return r.to_double(); }

// Naive height kept separate from the library: log max(|num x|, den x) from mantissa and exponent.
double log_mpz(const Integer& n) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, n.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

double naive(const Rational& x) {
  const Integer num = abs(x.get_num());
  return std::max(num == 0 ? 0.0 : log_mpz(num), log_mpz(x.get_den()));
}

}  // namespace

TEST_CASE("intersection formula at bad primes") {
  const WeierstrassCurve iii(0, 0, 0, 7, 49), iv(0, 0, 0, 0, 196);
  CHECK(local_height_nonarch(iii, {0, 7}, 7).coefficient == Rational(-1, 2));
  CHECK(local_height_nonarch(iv, {0, 14}, 7).coefficient == Rational(-2, 3));
  CHECK(local_height_nonarch(iii, {0, 7}, 7).exact_string() == "-1/2 * log 7");
  CHECK(local_height_nonarch(iii, {-3, 1}, 7).exact_string() == "0");
  CHECK_THROWS_AS(local_height_nonarch(iii, CurvePoint(), 7), DomainError);
}

TEST_CASE("good reduction reduces to the pole order") {
  const CurvePoint p(Rational(1, 4), Rational(-5, 8));
  CHECK(local_height_nonarch(k37a, p, 2).coefficient == 2);
  CHECK(local_height_nonarch(k37a, p, 3).coefficient == 0);
  const IntersectionTerms t = intersection_terms(k37a, p, 2);
  CHECK(t.section == 1);
  CHECK(t.phi_pairing == 0);
}

TEST_CASE("parity at finite places") {
  for (const auto& f : table1_fixtures()) {
    for (const auto& pt : {f.P0, f.P1}) {
      CHECK(local_height_nonarch(f.curve, pt, f.p) == local_height_nonarch(f.curve, negate(f.curve, pt), f.p));
    }
  }
}

TEST_CASE("auxiliary-point formula matches") {
  const WeierstrassCurve iii(0, 0, 0, 7, 49);
  CHECK(intlambda_height(iii, {0, 7}, {-3, 1}, 7).coefficient == Rational(-1, 2));
  const WeierstrassCurve i2(0, -9, 0, 45, -100);  // the n = 2 row at p = 5
  const CurvePoint p1(5, 5), p0(4, 0);
  CHECK(intlambda_height(i2, p1, add(i2, p1, p0), 5).coefficient == Rational(-1, 2));
  const CurvePoint g(0, 0);
  const CurvePoint p5 = multiply(k37a, g, 5);
  CHECK(intlambda_height(k37a, p5, g, 2) == local_height_nonarch(k37a, p5, 2));
  CHECK_THROWS_AS(intlambda_height(iii, {0, 7}, {0, -7}, 7), DomainError);
  CHECK_THROWS_AS(intlambda_height(iii, {0, 7}, CurvePoint(), 7), DomainError);
}

TEST_CASE("model adjustment") {
  const WeierstrassCurve e(0, 0, 0, 7, 49);
  const WeierstrassCurve big = ModelMap::scaling(Rational(1, 7)).apply(e);
  const NonArchHeight on_min{Rational(-1, 2), 7};
  CHECK(adjust_for_model(e, 7, on_min) == on_min);
  CHECK(adjust_for_model(big, 7, on_min).coefficient == Rational(-5, 2));
  // the transported point sees the same total height on either model
  const CurvePoint p(0, 7);
  const CurvePoint pb = ModelMap::scaling(Rational(1, 7)).apply(p);
  CHECK(d(canonical_height(big, pb, kBits)) == doctest::Approx(d(canonical_height(e, p, kBits))).epsilon(1e-15));

  const WeierstrassCurve half = ModelMap::scaling(2).apply(k37a);
  const CurvePoint q = ModelMap::scaling(2).apply(CurvePoint(1, 0));
  CHECK(d(canonical_height(half, q, kBits)) == doctest::Approx(d(canonical_height(k37a, {1, 0}, kBits))).epsilon(1e-15));
}

TEST_CASE("square lattice of y^2 = x^3 - x") {
  const WeierstrassCurve e(0, 0, 0, -1, 0);
  const ArchParams a = period_lattice_and_log(e, {1, 0});
  CHECK(d(a.tau.re) == doctest::Approx(0).epsilon(1e-15));
  CHECK(d(a.tau.im) == doctest::Approx(1).epsilon(1e-15));
  // 2-torsion sits on a half lattice point
  for (const CurvePoint& t : {CurvePoint(1, 0), CurvePoint(0, 0), CurvePoint(-1, 0)}) {
    const ArchParams b = period_lattice_and_log(e, t);
    const double re = std::fmod(std::abs(2 * d(b.z.re)) + 1e-12, 1.0), im = std::fmod(2 * d(b.z.im) + 1e-12, 1.0);
    CHECK(re < 1e-9);
    CHECK(im < 1e-9);
  }
  CHECK(period_lattice_and_log(e, CurvePoint()).origin);
}

TEST_CASE("Bernoulli series against a direct evaluation") {
  // tau = i, z = 1/2: q = e^{-2 pi}, u = -1, so
  // lambda' = pi/6 - log 2 - 2 sum log(1 + q^n).
  const double pi = std::acos(-1.0), q = std::exp(-2 * pi);
  double series = pi / 6 - std::log(2.0);
  for (int n = 1; n < 20; ++n) series -= 2 * std::log1p(std::pow(q, n));
  const WeierstrassCurve e(0, 0, 0, -1, 0);
  const PeriodLattice lattice(e, 128);
  const Complex half{Real(0.5, 128) * lattice.omega1().re, Real(0.5, 128) * lattice.omega1().im};
  CHECK(d(lattice.lambda_silverman(half)) == doctest::Approx(series).epsilon(1e-14));
  CHECK(series == doctest::Approx(-0.173287).epsilon(1e-5));
}

TEST_CASE("elliptic logarithm inverts the Weierstrass function") {
  const PeriodLattice lattice(WeierstrassCurve(0, 1, 1, -2, 0), 128);
  const CurvePoint p(-1, 1);
  const auto [wp, dwp] = lattice.weierstrass(lattice.elliptic_log(p));
  // X = x + b2/12, Y = 2y + a1 x + a3
  CHECK(d(wp.re) == doctest::Approx(-1 + 4.0 / 12).epsilon(1e-15));
  CHECK(d(dwp.re) == doctest::Approx(3).epsilon(1e-15));
  CHECK(std::abs(d(wp.im)) < 1e-20);
}

TEST_CASE("archimedean height symmetries") {
  const PeriodLattice lattice(k37a, 128);
  const Complex z = lattice.elliptic_log({2, -3});
  const Real base = lattice.lambda_silverman(z);
  const Complex minus{-z.re, -z.im};
  const Complex shifted{z.re + lattice.omega1().re, z.im + lattice.omega1().im};
  CHECK(d(lattice.lambda_silverman(minus)) == doctest::Approx(d(base)).epsilon(1e-15));
  CHECK(d(lattice.lambda_silverman(shifted)) == doctest::Approx(d(base)).epsilon(1e-15));
  CHECK(d(local_height_arch(k37a, {2, -3}, kBits).value) ==
        doctest::Approx(d(local_height_arch(k37a, {2, 2}, kBits).value)).epsilon(1e-15));
  CHECK_THROWS_AS(local_height_arch(k37a, CurvePoint(), kBits), DomainError);
}

TEST_CASE("Green's pairing identity") {
  for (const auto& s : sample_curves()) {
    const CurvePoint p = s.generators.front();
    const CurvePoint q = multiply(s.curve, p, 2);
    CAPTURE(s.label);
    const double g = d(green_pairing(s.curve, p, q, kBits));
    const double lam = d(local_height_arch(s.curve, p, kBits).value);
    const double gap = std::log(std::abs(Rational(p.x() - q.x()).get_d()));
    CHECK(std::abs(g + lam - gap) < 1e-9);
    CHECK(d(green_pairing(s.curve, negate(s.curve, p), q, kBits)) == doctest::Approx(g).epsilon(1e-15));
  }
  CHECK_THROWS_AS(green_pairing(k37a, {0, 0}, {0, 0}, kBits), DomainError);
}

TEST_CASE("canonical height of 37a against an independent doubling loop") {
  CurvePoint q(0, 0);
  for (int i = 0; i < 8; ++i) q = add(k37a, q, q);
  const double oracle = naive(q.x()) / std::pow(4.0, 8);
  const double h = d(canonical_height(k37a, {0, 0}, kBits));
  CHECK(std::abs(h - oracle) < 1e-3);
  CHECK(h == doctest::Approx(0.0511114082).epsilon(1e-9));
  CHECK(d(canonical_height(k37a, {0, -1}, kBits)) == doctest::Approx(h).epsilon(1e-15));
  CHECK(d(canonical_height(k37a, CurvePoint(), kBits)) == 0);
}

TEST_CASE("doubling oracle") {
  const DoublingEstimate t = doubling_limit_oracle(WeierstrassCurve(0, 0, 0, 0, 1), {2, 3});
  CHECK(t.torsion);
  CHECK(t.value == 0);
  const DoublingEstimate a = doubling_limit_oracle(k37a, {0, 0}, 8);
  const DoublingEstimate b = doubling_limit_oracle(k37a, {1, 0}, 7);  // (1,0) = 2 (0,0)
  CHECK_FALSE(a.torsion);
  CHECK(b.value / 4 == doctest::Approx(a.value).epsilon(1e-12));
  CHECK_THROWS_AS(doubling_limit_oracle(k37a, {0, 0}, 13), InputError);
}

TEST_CASE("residual oracle agrees with the main theorem") {
  const WeierstrassCurve iii(0, 0, 0, 7, 49);
  const double oracle = residual_oracle(iii, {0, 7}, 7, kBits);
  CHECK(std::abs(oracle + 0.5 * std::log(7.0)) < 1e-3);
  const CurvePoint p5 = multiply(k37a, CurvePoint(0, 0), 5);
  CHECK(std::abs(residual_oracle(k37a, p5, 2, kBits) - 2 * std::log(2.0)) < 1e-3);
  CHECK_THROWS_AS(residual_oracle(WeierstrassCurve(0, 0, 0, 0, 196), {0, 14}, 7, kBits), DomainError);
}

TEST_CASE("height breakdown lists every relevant place") {
  const HeightBreakdown b = height_breakdown(k37a, {Rational(1, 4), Rational(-5, 8)}, kBits);
  REQUIRE(b.places.size() == 3);
  CHECK(b.places[0].place == "inf");
  CHECK(b.places[1].place == "2");
  CHECK(b.places[2].place == "37");
  CHECK(b.places[1].exact->exact_string() == "2 * log 2");
  CHECK(d(b.total) == doctest::Approx(25 * 0.0511114082).epsilon(1e-9));
  CHECK_THROWS_AS(place_height(k37a, {0, 0}, "8", kBits), InputError);
}

TEST_CASE("quadraticity on sample curves") {
  for (const auto& s : sample_curves()) {
    for (const auto& g : s.generators) {
      const double h = d(canonical_height(s.curve, g, kBits));
      const double h3 = d(canonical_height(s.curve, multiply(s.curve, g, 3), kBits));
      CHECK(std::abs(h3 - 9 * h) < 1e-6);
      CHECK(h > 0);
    }
  }
}
