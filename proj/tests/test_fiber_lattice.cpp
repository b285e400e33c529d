#include <doctest.h>

#include "echeights/fiber.hpp"

using namespace ech;

namespace {

std::vector<KodairaType> all_types() {
  std::vector<KodairaType> out;
  for (int n = 1; n <= 8; ++n) out.push_back(KodairaType::I(n));
  for (int n = 0; n <= 5; ++n) out.push_back(KodairaType::I_star(n));
  for (auto s : {KodairaSymbol::I0, KodairaSymbol::II, KodairaSymbol::III, KodairaSymbol::IV, KodairaSymbol::IVStar,
                 KodairaSymbol::IIIStar, KodairaSymbol::IIStar}) {
    out.push_back({s, 0});
  }
  return out;
}

Rational expected_pairing(const KodairaType& t, const ComponentLabel& c) {
  if (c.is_identity()) return 0;
  switch (t.symbol) {
    case KodairaSymbol::In: return fraction(c.a * (t.n - c.a), t.n);
    case KodairaSymbol::III: return Rational(1, 2);
    case KodairaSymbol::IV: return Rational(2, 3);
    case KodairaSymbol::I0Star: return 1;
    case KodairaSymbol::InStar: {
      const bool near = t.n % 2 ? c == ComponentLabel{2, 0} : c == ComponentLabel{1, 1};
      return near ? Rational(1) : fraction(t.n + 4, 4);
    }
    case KodairaSymbol::IVStar: return Rational(4, 3);
    case KodairaSymbol::IIIStar: return Rational(3, 2);
    default: return 0;
  }
}

}  // namespace

TEST_CASE("intersection matrices annihilate the fibre") {
  for (const auto& t : all_types()) {
    CAPTURE(t.to_string());
    const SpecialFiberGraph f = fiber_for_type(t);
    const auto m = f.multiplicities();
    CHECK(m[f.identity_id()] == 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
      long row = 0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        CHECK(f.gram()[i][j] == f.gram()[j][i]);
        row += f.gram()[i][j] * m[j];
      }
      CHECK(row == 0);
    }
    // multiplicity-one components are in bijection with the group
    std::size_t ones = 0;
    for (const auto& c : f.components()) ones += c.multiplicity == 1;
    CHECK(static_cast<int>(ones) == f.group().order());
  }
}

TEST_CASE("component count matches the symbol") {
  CHECK(fiber_for_type(KodairaType::I(7)).size() == 7);
  CHECK(fiber_for_type(KodairaType::I_star(3)).size() == 8);
  CHECK(fiber_for_type({KodairaSymbol::IVStar, 0}).size() == 7);
  CHECK(fiber_for_type({KodairaSymbol::IIIStar, 0}).size() == 8);
  CHECK(fiber_for_type({KodairaSymbol::IIStar, 0}).size() == 9);
  CHECK(fiber_for_type({KodairaSymbol::II, 0}).size() == 1);
}

TEST_CASE("reduced Gram determinant is the group order") {
  for (const auto& t : all_types()) {
    CAPTURE(t.to_string());
    const SpecialFiberGraph f = fiber_for_type(t);
    CHECK(abs(bareiss_determinant(reduced_gram(f))) == f.group().order());
  }
  CHECK(bareiss_determinant({{Integer(2), Integer(1)}, {Integer(1), Integer(2)}}) == 3);
  CHECK(bareiss_determinant({{Integer(0), Integer(1)}, {Integer(1), Integer(0)}}) == -1);
}

TEST_CASE("vertical corrections solve the orthogonality equations") {
  for (const auto& t : all_types()) {
    const SpecialFiberGraph f = fiber_for_type(t);
    for (const auto& label : f.group().elements()) {
      CAPTURE(t.to_string());
      CAPTURE(f.group().label_string(label));
      const VerticalQDivisor phi = solve_phi(f, label);
      CHECK(phi.phi[f.identity_id()] == 0);
      const int cp = f.component_for(label);
      for (std::size_t j = 0; j < f.size(); ++j) {
        // ((P) - (O) + Phi) . F_j
        Rational total = Rational(static_cast<long>(j) == cp) - Rational(static_cast<long>(j) == f.identity_id());
        for (std::size_t i = 0; i < f.size(); ++i) total += phi.phi[i] * f.gram()[i][j];
        CHECK(total == 0);
      }
      const Rational pairing = phi_pairing(f, phi, label);
      CHECK(pairing == expected_pairing(t, label));
      CHECK(phi_pairing(f, phi.plus_fiber(f, Rational(5, 2)), label) == pairing);
    }
  }
}

TEST_CASE("foreign labels are rejected") {
  const SpecialFiberGraph f = fiber_for_type(KodairaType::I(3));
  CHECK_THROWS_AS(static_cast<void>(f.component_for({5, 0})), InputError);
}

TEST_CASE("section intersections") {
  const WeierstrassCurve e(0, 0, 1, -1, 0);
  const CurvePoint p(0, 0);
  const CurvePoint p5 = multiply(e, p, 5);  // x = 1/4
  CHECK(section_intersection(e, CurvePoint(), p5, 2) == 1);
  CHECK(section_intersection(e, CurvePoint(), p5, 3) == 0);
  // (P . Q) depends on Q - P only
  CHECK(section_intersection(e, p, multiply(e, p, 6), 2) == 1);
  CHECK_THROWS_AS(section_intersection(e, p, p, 2), DomainError);
}
