#include "echeights/tate.hpp"

#include <algorithm>
#include <numeric>

namespace ech {

KodairaType KodairaType::I(int n) {
  if (n < 0) throw InputError("I_n needs n >= 0");
  return {n == 0 ? KodairaSymbol::I0 : KodairaSymbol::In, n};
}

KodairaType KodairaType::I_star(int n) {
  if (n < 0) throw InputError("I_n* needs n >= 0");
  return {n == 0 ? KodairaSymbol::I0Star : KodairaSymbol::InStar, n};
}

std::string KodairaType::to_string() const {
  switch (symbol) {
    case KodairaSymbol::I0: return "I0";
    case KodairaSymbol::In: return "I" + std::to_string(n);
    case KodairaSymbol::II: return "II";
    case KodairaSymbol::III: return "III";
    case KodairaSymbol::IV: return "IV";
    case KodairaSymbol::I0Star: return "I0*";
    case KodairaSymbol::InStar: return "I" + std::to_string(n) + "*";
    case KodairaSymbol::IVStar: return "IV*";
    case KodairaSymbol::IIIStar: return "III*";
    case KodairaSymbol::IIStar: return "II*";
  }
  return "?";
}

KodairaType KodairaType::parse(std::string_view label) {
  const std::string s(label);
  if (s == "II") return {KodairaSymbol::II, 0};
  if (s == "III") return {KodairaSymbol::III, 0};
  if (s == "IV") return {KodairaSymbol::IV, 0};
  if (s == "IV*") return {KodairaSymbol::IVStar, 0};
  if (s == "III*") return {KodairaSymbol::IIIStar, 0};
  if (s == "II*") return {KodairaSymbol::IIStar, 0};
  if (s.size() >= 2 && s[0] == 'I') {
    const bool star = s.back() == '*';
    const std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const int n = std::stoi(digits);
      return star ? I_star(n) : I(n);
    }
  }
  throw InputError("unknown Kodaira symbol '" + s + "'");
}

ComponentGroup ComponentGroup::for_type(const KodairaType& type) {
  switch (type.symbol) {
    case KodairaSymbol::I0:
    case KodairaSymbol::II:
    case KodairaSymbol::IIStar: return cyclic(1);
    case KodairaSymbol::In: return cyclic(type.n);
    case KodairaSymbol::III:
    case KodairaSymbol::IIIStar: return cyclic(2);
    case KodairaSymbol::IV:
    case KodairaSymbol::IVStar: return cyclic(3);
    case KodairaSymbol::I0Star: return klein();
    case KodairaSymbol::InStar: return type.n % 2 ? cyclic(4) : klein();
  }
  throw InternalError("unhandled Kodaira symbol");
}

ComponentLabel ComponentGroup::add(const ComponentLabel& x, const ComponentLabel& y) const {
  if (kind_ == Kind::Klein) return {x.a ^ y.a, x.b ^ y.b};
  return {(x.a + y.a) % order_, 0};
}

ComponentLabel ComponentGroup::negate(const ComponentLabel& x) const {
  if (kind_ == Kind::Klein) return x;
  return {(order_ - x.a) % order_, 0};
}

ComponentLabel ComponentGroup::multiply(const ComponentLabel& x, long m) const {
  if (kind_ == Kind::Klein) return (m % 2 != 0) ? x : ComponentLabel{};
  const long r = ((x.a * (m % order_)) % order_ + order_) % order_;
  return {static_cast<int>(r), 0};
}

int ComponentGroup::order_of(const ComponentLabel& x) const {
  if (kind_ == Kind::Klein) return x.is_identity() ? 1 : 2;
  return order_ / std::gcd(x.a, order_);
}

std::vector<ComponentLabel> ComponentGroup::elements() const {
  if (kind_ == Kind::Klein) return {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  std::vector<ComponentLabel> out;
  for (int a = 0; a < order_; ++a) out.push_back({a, 0});
  return out;
}

std::string ComponentGroup::label_string(const ComponentLabel& x) const {
  if (kind_ == Kind::Klein) return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")";
  return std::to_string(x.a);
}

std::string ComponentGroup::to_string() const {
  if (kind_ == Kind::Klein) return "Z/2xZ/2";
  if (order_ == 1) return "trivial";
  return "Z/" + std::to_string(order_);
}

namespace {

struct Run {
  WeierstrassCurve curve;
  ModelMap map;
  void apply(const ModelMap& m) {
    curve = m.apply(curve);
    map = map.then(m);
  }
};

struct Classification {
  KodairaType kodaira;
  int tamagawa = 1;
  locator::Rule rule;
};

Integer ipow(const Integer& p, long e) { return pow(p, static_cast<unsigned long>(e)); }

Rational scaled(const Rational& a, const Integer& p, long e) { return a / Rational(ipow(p, e)); }

void require(bool condition, const char* what) {
  if (!condition) throw InternalError(std::string("Tate's algorithm: ") + what);
}

ModelMap singular_point_shift(const WeierstrassCurve& c, const Integer& p) {
  auto moves_to_origin = [&](const ModelMap& m) {
    const WeierstrassCurve e = m.apply(c);
    return ord(e.a3(), p) >= 1 && ord(e.a4(), p) >= 1 && ord(e.a6(), p) >= 1;
  };
  if (p <= 3) {
    for (Integer r = 0; r < p; ++r) {
      for (Integer t = 0; t < p; ++t) {
        const ModelMap m = ModelMap::translation(r, 0, t);
        if (moves_to_origin(m)) return m;
      }
    }
    throw InternalError("no singular point found on the reduction");
  }
  Integer r;
  if (ord(c.c4(), p) >= 1) {
    r = residue(-c.b2() / 12, p);
  } else {
    r = residue(-(c.c6() + c.b2() * c.c4()) / (12 * c.c4()), p);
  }
  const Integer t = residue(-(c.a1() * r + c.a3()) / 2, p);
  const ModelMap m = ModelMap::translation(r, 0, t);
  require(moves_to_origin(m), "singular point shift");
  return m;
}

bool has_double_root(const std::vector<std::pair<Integer, int>>& roots) {
  return std::any_of(roots.begin(), roots.end(), [](const auto& r) { return r.second >= 2; });
}

std::vector<Integer> root_values(const std::vector<std::pair<Integer, int>>& roots) {
  std::vector<Integer> out;
  for (const auto& r : roots) out.push_back(r.first);
  return out;
}

Integer hensel_root(const Integer& a1, const Integer& a2, Integer root, const Integer& modulus) {
  // root of T^2 + a1 T - a2 lifted from a simple root mod p
  for (int i = 0; i < 200; ++i) {
    Integer g = (root * root + a1 * root - a2) % modulus;
    if (g == 0) return root;
    const Integer dg = (2 * root + a1) % modulus;
    root = (root - g * inverse_mod(dg, modulus)) % modulus;
    if (root < 0) root += modulus;
  }
  throw InternalError("Hensel lift did not converge");
}

locator::Multiplicative centre_node(const WeierstrassCurve& c, const Integer& p, int n, bool split) {
  locator::Multiplicative rule;
  rule.n = n;
  rule.split = split;
  rule.precision = 2L * n + 16;
  if (!split) return rule;
  const Integer modulus = ipow(p, rule.precision);
  const Integer a1 = residue(c.a1(), modulus), a2 = residue(c.a2(), modulus);
  const Integer a3 = residue(c.a3(), modulus), a4 = residue(c.a4(), modulus);
  Integer x = 0, y = 0;
  auto reduce = [&](Integer v) {
    v %= modulus;
    if (v < 0) v += modulus;
    return v;
  };
  for (int iter = 0; iter < 200; ++iter) {
    const Integer fx = reduce(a1 * y - 3 * x * x - 2 * a2 * x - a4);
    const Integer fy = reduce(2 * y + a1 * x + a3);
    if (fx == 0 && fy == 0) break;
    const Integer hxx = -6 * x - 2 * a2;
    const Integer det_inv = inverse_mod(reduce(hxx * 2 - a1 * a1), modulus);
    x = reduce(x - (2 * fx - a1 * fy) * det_inv);
    y = reduce(y - (-a1 * fx + hxx * fy) * det_inv);
  }
  rule.node_x = x;
  rule.node_y = y;
  const WeierstrassCurve centred = ModelMap::translation(x, 0, y).apply(c);
  const auto roots = roots_mod_p({-centred.a2(), centred.a1(), 1}, p);
  require(roots.size() == 2, "split node has two tangent slopes");
  const Integer ca1 = residue(centred.a1(), modulus), ca2 = residue(centred.a2(), modulus);
  rule.slope_alpha = hensel_root(ca1, ca2, roots[0].first, modulus);
  rule.slope_beta = hensel_root(ca1, ca2, roots[1].first, modulus);
  return rule;
}

// One pass of Tate's algorithm on a p-integral model. Returns nullopt if the model
// turns out non-minimal (the caller rescales and retries).
std::optional<Classification> classify(Run& run, const Integer& p) {
  const long vd = ord(run.curve.discriminant(), p);
  if (vd == 0) return Classification{KodairaType::I(0), 1, locator::Trivial{}};

  run.apply(singular_point_shift(run.curve, p));
  const WeierstrassCurve& c0 = run.curve;

  if (ord(c0.b2(), p) == 0) {
    const bool split = !roots_mod_p({-c0.a2(), c0.a1(), 1}, p).empty();
    const int n = static_cast<int>(vd);
    const int tamagawa = split ? n : (n % 2 == 0 ? 2 : 1);
    if (n == 1) return Classification{KodairaType::I(1), 1, locator::Trivial{}};
    return Classification{KodairaType::I(n), tamagawa, centre_node(c0, p, n, split)};
  }

  // additive: arrange p | a1, a2
  {
    const Integer s = p == 2 ? residue(c0.a2(), p) : residue(-c0.a1() / 2, p);
    run.apply(ModelMap::translation(0, s, 0));
    require(ord(run.curve.a1(), p) >= 1 && ord(run.curve.a2(), p) >= 1, "p | a1, a2");
  }
  const WeierstrassCurve& c = run.curve;
  if (ord(c.a6(), p) < 2) return Classification{{KodairaSymbol::II, 0}, 1, locator::Trivial{}};
  if (ord(c.b8(), p) < 3) return Classification{{KodairaSymbol::III, 0}, 2, locator::OffIsOne{}};
  if (ord(c.b6(), p) < 3) {
    require(ord(c.a4(), p) >= 2, "p^2 | a4 for type IV");
    const auto roots = roots_mod_p({-scaled(c.a6(), p, 2), scaled(c.a3(), p, 1), 1}, p);
    locator::ResidueRoots rule{true, 1, root_values(roots), {}};
    for (std::size_t i = 0; i < rule.roots.size(); ++i) rule.labels.push_back({static_cast<int>(i) + 1, 0});
    return Classification{{KodairaSymbol::IV, 0}, roots.size() == 2 ? 3 : 1, rule};
  }

  {
    const Integer t = p == 2 ? Integer(2 * residue(scaled(c.a6(), p, 2), p))
                             : residue(-c.a3() / 2, p * p);
    run.apply(ModelMap::translation(0, 0, t));
  }
  require(ord(run.curve.a1(), p) >= 1 && ord(run.curve.a2(), p) >= 1 && ord(run.curve.a3(), p) >= 2 &&
              ord(run.curve.a4(), p) >= 2 && ord(run.curve.a6(), p) >= 3,
          "normalisation before the cubic");

  const auto cubic = roots_mod_p(
      {scaled(run.curve.a6(), p, 3), scaled(run.curve.a4(), p, 2), scaled(run.curve.a2(), p, 1), 1}, p);
  const auto multiple = std::find_if(cubic.begin(), cubic.end(), [](const auto& r) { return r.second >= 2; });

  if (multiple == cubic.end()) {
    locator::ResidueRoots rule{false, 1, root_values(cubic), {}};
    const ComponentLabel legs[] = {{1, 0}, {0, 1}, {1, 1}};
    for (std::size_t i = 0; i < rule.roots.size(); ++i) rule.labels.push_back(legs[i]);
    return Classification{KodairaType::I_star(0), 1 + static_cast<int>(cubic.size()), rule};
  }

  run.apply(ModelMap::translation(p * multiple->first, 0, 0));

  if (multiple->second == 2) {
    locator::StarChain rule;
    rule.near_root = residue(-scaled(run.curve.a2(), p, 1), p);
    require(rule.near_root != 0, "simple root of the cubic is nonzero");
    long ex = 2, ey = 2;
    int n = 1;
    for (;;) {
      const auto& e1 = run.curve;
      const auto qy = roots_mod_p({-scaled(e1.a6(), p, ex + ey), scaled(e1.a3(), p, ey), 1}, p);
      if (!has_double_root(qy)) {
        rule.far_use_y = true;
        rule.far_exponent = ey;
        rule.far_roots = root_values(qy);
        break;
      }
      run.apply(ModelMap::translation(0, 0, ipow(p, ey) * qy.front().first));
      ++ey;
      ++n;
      const auto& e2 = run.curve;
      const auto qx = roots_mod_p(
          {scaled(e2.a6(), p, ex + ey), scaled(e2.a4(), p, ex + 1), scaled(e2.a2(), p, 1)}, p);
      if (!has_double_root(qx)) {
        rule.far_use_y = false;
        rule.far_exponent = ex;
        rule.far_roots = root_values(qx);
        break;
      }
      run.apply(ModelMap::translation(ipow(p, ex) * qx.front().first, 0, 0));
      ++ex;
      ++n;
    }
    rule.n = n;
    return Classification{KodairaType::I_star(n), rule.far_roots.size() == 2 ? 4 : 2, rule};
  }

  // triple root
  require(ord(run.curve.a2(), p) >= 2 && ord(run.curve.a4(), p) >= 3 && ord(run.curve.a6(), p) >= 4,
          "triple root normalisation");
  const auto qy = roots_mod_p({-scaled(run.curve.a6(), p, 4), scaled(run.curve.a3(), p, 2), 1}, p);
  if (!has_double_root(qy)) {
    locator::ResidueRoots rule{true, 2, root_values(qy), {}};
    for (std::size_t i = 0; i < rule.roots.size(); ++i) rule.labels.push_back({static_cast<int>(i) + 1, 0});
    return Classification{{KodairaSymbol::IVStar, 0}, qy.size() == 2 ? 3 : 1, rule};
  }
  run.apply(ModelMap::translation(0, 0, p * p * qy.front().first));
  require(ord(run.curve.a3(), p) >= 3 && ord(run.curve.a6(), p) >= 5, "III*/II* normalisation");
  if (ord(run.curve.a4(), p) < 4) return Classification{{KodairaSymbol::IIIStar, 0}, 2, locator::OffIsOne{}};
  if (ord(run.curve.a6(), p) < 6) return Classification{{KodairaSymbol::IIStar, 0}, 1, locator::Trivial{}};
  return std::nullopt;
}

void require_prime(const Integer& p) {
  if (!is_prime(p)) throw InputError("not a prime: " + p.get_str());
}

bool p_integral(const WeierstrassCurve& e, const Integer& p) {
  return std::all_of(e.coefficients().begin(), e.coefficients().end(),
                     [&](const Rational& a) { return ord(a, p) >= 0; });
}

struct TateOutcome {
  Classification cls;
  Run run;
};

TateOutcome run_tate(const WeierstrassCurve& e, const Integer& p) {
  static constexpr long kWeights[] = {1, 2, 3, 4, 6};
  long k = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const long v = ord(e.coefficients()[i], p);
    if (v < 0) k = std::max(k, (-v + kWeights[i] - 1) / kWeights[i]);
  }
  Run run{e, ModelMap::identity()};
  if (k > 0) run.apply(ModelMap::scaling(fraction(1, ipow(p, k))));
  for (;;) {
    if (auto cls = classify(run, p)) return {std::move(*cls), std::move(run)};
    run.apply(ModelMap::scaling(p));
  }
}

MinimalModel canonical_minimal(const WeierstrassCurve& e, const Integer& p, const Run& run) {
  const ModelMap pure = ModelMap::scaling(run.map.u);
  if (pure.is_identity()) return {e, pure};
  const WeierstrassCurve scaled_curve = pure.apply(e);
  if (p_integral(scaled_curve, p)) return {scaled_curve, pure};
  return {run.curve, run.map};
}

}  // namespace

MinimalModel minimal_model_at(const WeierstrassCurve& e, const Integer& p) {
  require_prime(p);
  const TateOutcome out = run_tate(e, p);
  return canonical_minimal(e, p, out.run);
}

LocalModelData local_data(const WeierstrassCurve& e, const Integer& p) {
  require_prime(p);
  TateOutcome out = run_tate(e, p);
  const MinimalModel minimal = canonical_minimal(e, p, out.run);
  LocalModelData data{p,
                      minimal.curve,
                      minimal.map,
                      out.cls.kodaira,
                      ord(minimal.curve.discriminant(), p),
                      ComponentGroup::for_type(out.cls.kodaira),
                      out.cls.tamagawa,
                      1,
                      out.run.curve,
                      minimal.map.inverse().then(out.run.map),
                      std::move(out.cls.rule)};
  data.n_components_mult_one = data.component_group.order();
  return data;
}

namespace {

struct TatePoint {
  Rational x, y;
};

std::optional<TatePoint> off_identity(const LocalModelData& data, const CurvePoint& point) {
  if (point.is_origin()) return std::nullopt;
  if (!on_curve(data.minimal_curve, data.to_minimal.apply(point))) {
    throw InputError("point " + point.to_string() + " is not on the curve");
  }
  const CurvePoint q = data.minimal_to_tate.apply(data.to_minimal.apply(point));
  if (data.v_delta_min == 0) return std::nullopt;
  if (ord(q.x(), data.p) < 1 || ord(q.y(), data.p) < 1) return std::nullopt;
  return TatePoint{q.x(), q.y()};
}

long index_of(const std::vector<Integer>& values, const Integer& v) {
  const auto it = std::find(values.begin(), values.end(), v);
  if (it == values.end()) throw InternalError("point residue matches no component");
  return it - values.begin();
}

struct Locate {
  const LocalModelData& data;
  const TatePoint& pt;

  ComponentLabel operator()(const locator::Trivial&) const {
    throw InternalError("point at a singular point although the component group is trivial");
  }
  ComponentLabel operator()(const locator::OffIsOne&) const { return {1, 0}; }

  ComponentLabel operator()(const locator::Multiplicative& m) const {
    if (!m.split) {
      if (m.n % 2) throw InternalError("non-split I_n with odd n has no rational non-identity component");
      return {m.n / 2, 0};
    }
    const Rational x = pt.x - m.node_x;
    const Rational y = pt.y - m.node_y;
    const long v1 = std::min(ord(y - m.slope_alpha * x, data.p), m.precision);
    const long v2 = std::min(ord(y - m.slope_beta * x, data.p), m.precision);
    const long low = std::min(v1, v2);
    if (low < 1 || 2 * low > m.n) throw InternalError("node branch valuations out of range");
    if (v1 == v2) {
      if (2 * low != m.n) throw InternalError("equal branch valuations away from the middle component");
      return {m.n / 2, 0};
    }
    return {static_cast<int>(v1 > v2 ? v2 : m.n - v1), 0};
  }

  ComponentLabel operator()(const locator::ResidueRoots& r) const {
    const Rational& v = r.use_y ? pt.y : pt.x;
    if (ord(v, data.p) < r.exponent) throw InternalError("point coordinate too shallow for this fibre");
    const Integer res = residue(v / Rational(pow(data.p, static_cast<unsigned long>(r.exponent))), data.p);
    return r.labels.at(static_cast<std::size_t>(index_of(r.roots, res)));
  }

  ComponentLabel operator()(const locator::StarChain& s) const {
    const bool odd = s.n % 2 != 0;
    if (ord(pt.x, data.p) == 1) {
      if (residue(pt.x / Rational(data.p), data.p) != s.near_root) {
        throw InternalError("point on a multiplicity-two component");
      }
      return odd ? ComponentLabel{2, 0} : ComponentLabel{1, 1};
    }
    const Rational& v = s.far_use_y ? pt.y : pt.x;
    if (ord(v, data.p) < s.far_exponent) throw InternalError("point stops inside the I_n* chain");
    const Integer res = residue(v / Rational(pow(data.p, static_cast<unsigned long>(s.far_exponent))), data.p);
    const long idx = index_of(s.far_roots, res);
    if (odd) return {idx == 0 ? 1 : 3, 0};
    return idx == 0 ? ComponentLabel{1, 0} : ComponentLabel{0, 1};
  }
};

}  // namespace

bool is_in_e0(const LocalModelData& data, const CurvePoint& p) { return !off_identity(data, p).has_value(); }

bool is_in_e0(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime) {
  return is_in_e0(local_data(e, prime), p);
}

ComponentLabel component_index(const LocalModelData& data, const CurvePoint& p) {
  const auto pt = off_identity(data, p);
  if (!pt) return {};
  return std::visit(Locate{data, *pt}, data.rule);
}

ComponentLabel component_index(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime) {
  return component_index(local_data(e, prime), p);
}

std::vector<Integer> bad_primes(const WeierstrassCurve& e) {
  std::vector<Integer> out = prime_support(e.discriminant());
  for (const auto& a : e.coefficients()) {
    if (a.get_den() != 1) {
      for (const auto& [p, k] : factorize(Integer(a.get_den()))) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinimalModel global_minimal_model(const WeierstrassCurve& e) {
  MinimalModel out{e, ModelMap::identity()};
  for (const auto& p : bad_primes(e)) {
    const MinimalModel local = minimal_model_at(out.curve, p);
    out.curve = local.curve;
    out.map = out.map.then(local.map);
  }
  return out;
}

}  // namespace ech
