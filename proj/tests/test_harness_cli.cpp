#include <doctest.h>

#include "echeights/json_io.hpp"

using namespace ech;

TEST_CASE("fixture shapes") {
  const auto fixtures = table1_fixtures();
  CHECK(fixtures.size() == 13);
  for (const auto& f : fixtures) {
    CAPTURE(f.row);
    const bool needs_p2 = f.kodaira.symbol == KodairaSymbol::I0Star ||
                          (f.kodaira.symbol == KodairaSymbol::InStar && f.kodaira.n % 2 == 0);
    CHECK(f.P2.has_value() == needs_p2);
    CHECK(on_curve(f.curve, f.P0));
    CHECK(on_curve(f.curve, f.P1));
  }
}

TEST_CASE("closed forms") {
  CHECK(closed_form_height(KodairaType::I(5), {2, 0}) == Rational(-6, 5));
  CHECK(closed_form_height(KodairaType::I_star(4), {1, 0}) == -2);
  CHECK(closed_form_height(KodairaType::I_star(4), {1, 1}) == -1);
  CHECK(closed_form_height({KodairaSymbol::III, 0}, {}) == 0);
  CHECK_THROWS_AS(closed_form_height({KodairaSymbol::II, 0}, {1, 0}), InputError);
}

TEST_CASE("table 1 verification and its negative control") {
  const VerificationReport report = verify_table1();
  CHECK(report.passed());
  const VerificationReport dropped = verify_table1({true, 64, 8});
  CHECK_FALSE(dropped.passed());
  for (const auto& c : dropped.checks) {
    if (c.check.rfind("phi identity", 0) == 0) CHECK_FALSE(c.passed);
  }
}

TEST_CASE("global pairing") {
  const WeierstrassCurve e(0, 0, 1, -1, 0);
  const FhResult r = fh_global_check(e, {0, 0}, {1, 0}, 64);
  CHECK(std::abs(r.residual) < 1e-3);
  CHECK(r.height == doctest::Approx(0.0511).epsilon(1e-3));
  // a larger doubling depth tightens the residual
  CHECK(std::abs(fh_global_check(e, {0, 0}, {1, 0}, 64, 10).residual) < std::abs(fh_global_check(e, {0, 0}, {1, 0}, 64, 6).residual));
  // torsion P: the pairing itself vanishes
  const WeierstrassCurve t(0, 0, 0, 0, 1);
  CHECK(std::abs(fh_global_check(t, {2, 3}, {0, 1}, 64).pairing.to_double()) < 1e-9);
  CHECK_THROWS_AS(fh_global_check(e, {0, 0}, {0, -1}, 64), DomainError);
}

TEST_CASE("parallelogram samples are deterministic") {
  const auto a = parallelogram_samples(30), b = parallelogram_samples(30);
  REQUIRE(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].P == b[i].P);
  CHECK(verify_parallelogram(64, 20).passed());
}

TEST_CASE("JSON shapes") {
  const LocalModelData d = local_data(WeierstrassCurve(0, 0, 0, 7, 49), 7);
  const auto j = to_json(d);
  CHECK(j["kodaira"] == "III");
  CHECK(j["v_delta"] == 3);
  CHECK(j["component_group"] == "Z/2");
  CHECK(j["tamagawa"] == 2);
  CHECK(j["minimal_model"].dump() == R"(["0","0","0","7","49"])");

  const SpecialFiberGraph f = fiber_for_type(d.kodaira);
  const auto jf = to_json(f);
  CHECK(jf["identity"] == 0);
  CHECK(jf["components"].size() == 2);
  CHECK(jf["edges"][0]["mult"] == 2);
  CHECK(to_json(solve_phi(f, {1, 0}))["1"] == "1/2");

  const PlaceHeight h = place_height(WeierstrassCurve(0, 0, 0, 7, 49), {0, 7}, "7", 64);
  const auto jh = to_json(h, 64);
  CHECK(jh["exact"] == "-1/2 * log 7");
  CHECK(jh["place"] == "7");
  CHECK(jh["precision_bits"] == 64);
  CHECK(to_json(place_height(WeierstrassCurve(0, 0, 0, 7, 49), {0, 7}, "inf", 64), 64)["exact"].is_null());
  CHECK(decimal_string(Real(Rational(1, 3), 128), 20) == "0.333333");
}
