#include "echeights/fiber.hpp"

#include <numeric>

namespace ech {

SpecialFiberGraph::SpecialFiberGraph(KodairaType type, std::vector<FiberComponent> components,
                                     const std::vector<FiberEdge>& edges)
    : type_(type), group_(ComponentGroup::for_type(type)), components_(std::move(components)) {
  const std::size_t n = components_.size();
  gram_.assign(n, std::vector<long>(n, 0));
  for (const auto& e : edges) {
    gram_[e.i][e.j] += e.multiplicity;
    gram_[e.j][e.i] += e.multiplicity;
  }
  // Self-intersections are forced by (F_i . full fibre) = 0.
  for (std::size_t i = 0; i < n; ++i) {
    long s = 0;
    for (std::size_t j = 0; j < n; ++j) s += gram_[i][j] * components_[j].multiplicity;
    if (s % components_[i].multiplicity != 0) throw InternalError("fibre multiplicities are inconsistent");
    gram_[i][i] = -s / components_[i].multiplicity;
  }
}

int SpecialFiberGraph::component_for(const ComponentLabel& label) const {
  for (const auto& c : components_) {
    if (c.label && *c.label == label) return c.id;
  }
  throw InputError("label " + group_.label_string(label) + " is not a component of a " + type_.to_string() +
                   " fibre");
}

std::vector<FiberEdge> SpecialFiberGraph::edges() const {
  std::vector<FiberEdge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (gram_[i][j] != 0) out.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(gram_[i][j])});
    }
  }
  return out;
}

std::vector<long> SpecialFiberGraph::multiplicities() const {
  std::vector<long> out;
  for (const auto& c : components_) out.push_back(c.multiplicity);
  return out;
}

namespace {

struct Builder {
  std::vector<FiberComponent> comps;
  std::vector<FiberEdge> edges;

  int add(int mult, std::string name, std::optional<ComponentLabel> label = std::nullopt) {
    const int id = static_cast<int>(comps.size());
    comps.push_back({id, mult, std::move(name), label});
    return id;
  }
  void join(int i, int j, int mult = 1) { edges.push_back({i, j, mult}); }
};

ComponentLabel cyc(int a) { return {a, 0}; }

}  // namespace

SpecialFiberGraph fiber_for_type(const KodairaType& kodaira) {
  Builder b;
  switch (kodaira.symbol) {
    case KodairaSymbol::I0:
    case KodairaSymbol::II:
      b.add(1, "Theta0", cyc(0));
      break;
    case KodairaSymbol::IIStar: {
      // E8~: a chain of eight from the identity, with the multiplicity-3 branch on E5.
      const int mults[] = {1, 2, 3, 4, 5, 6, 4, 2};
      for (int i = 0; i < 8; ++i) {
        b.add(mults[i], "E" + std::to_string(i), i == 0 ? std::optional(cyc(0)) : std::nullopt);
      }
      for (int i = 0; i + 1 < 8; ++i) b.join(i, i + 1);
      b.join(5, b.add(3, "E8"));
      break;
    }
    case KodairaSymbol::In:
      if (kodaira.n == 1) {
        b.add(1, "Theta0", cyc(0));
        break;
      }
      for (int j = 0; j < kodaira.n; ++j) b.add(1, "Theta" + std::to_string(j), cyc(j));
      if (kodaira.n == 2) {
        b.join(0, 1, 2);
      } else {
        for (int j = 0; j < kodaira.n; ++j) b.join(j, (j + 1) % kodaira.n);
      }
      break;
    case KodairaSymbol::III:
      b.add(1, "Theta0", cyc(0));
      b.add(1, "Theta1", cyc(1));
      b.join(0, 1, 2);
      break;
    case KodairaSymbol::IV:
      for (int j = 0; j < 3; ++j) b.add(1, "Theta" + std::to_string(j), cyc(j));
      b.join(0, 1);
      b.join(1, 2);
      b.join(0, 2);
      break;
    case KodairaSymbol::I0Star: {
      b.add(1, "A", ComponentLabel{0, 0});
      b.add(1, "B", ComponentLabel{1, 0});
      b.add(1, "C", ComponentLabel{0, 1});
      b.add(1, "D", ComponentLabel{1, 1});
      const int z = b.add(2, "Z");
      for (int leg = 0; leg < 4; ++leg) b.join(leg, z);
      break;
    }
    case KodairaSymbol::InStar: {
      const int n = kodaira.n;
      const bool odd = n % 2 != 0;
      b.add(1, "A", cyc(0));
      b.add(1, "B", odd ? cyc(2) : ComponentLabel{1, 1});
      b.add(1, "C", odd ? cyc(1) : ComponentLabel{1, 0});
      b.add(1, "D", odd ? cyc(3) : ComponentLabel{0, 1});
      for (int k = 0; k <= n; ++k) {
        const int id = b.add(2, "Z" + std::to_string(k));
        if (k > 0) b.join(id - 1, id);
      }
      b.join(0, 4);
      b.join(1, 4);
      b.join(2, 4 + n);
      b.join(3, 4 + n);
      break;
    }
    case KodairaSymbol::IVStar: {
      // E6~: three arms of length two around a centre of multiplicity 3.
      b.add(1, "E0", cyc(0));
      b.add(2, "E1");
      b.add(3, "E2");
      b.add(2, "E3");
      b.add(1, "E4", cyc(1));
      b.add(2, "E5");
      b.add(1, "E6", cyc(2));
      b.join(0, 1);
      b.join(1, 2);
      b.join(2, 3);
      b.join(3, 4);
      b.join(2, 5);
      b.join(5, 6);
      break;
    }
    case KodairaSymbol::IIIStar: {
      const int mults[] = {1, 2, 3, 4, 3, 2, 1};
      for (int i = 0; i < 7; ++i) {
        std::optional<ComponentLabel> label;
        if (i == 0) label = cyc(0);
        if (i == 6) label = cyc(1);
        b.add(mults[i], "E" + std::to_string(i), label);
      }
      for (int i = 0; i + 1 < 7; ++i) b.join(i, i + 1);
      b.join(3, b.add(2, "E7"));
      break;
    }
  }
  return SpecialFiberGraph(kodaira, std::move(b.comps), b.edges);
}

VerticalQDivisor VerticalQDivisor::plus_fiber(const SpecialFiberGraph& fiber, const Rational& c) const {
  VerticalQDivisor out = *this;
  for (std::size_t i = 0; i < out.phi.size(); ++i) out.phi[i] += c * fiber.components()[i].multiplicity;
  return out;
}

VerticalQDivisor solve_phi(const SpecialFiberGraph& fiber, const ComponentLabel& c_p) {
  const std::size_t n = fiber.size();
  const int target = fiber.component_for(c_p);
  const int identity = fiber.identity_id();
  std::vector<Rational> rhs(n, 0);  // intersection of D with each component
  rhs[target] += 1;
  rhs[identity] -= 1;

  // Reduced system: rows and unknowns for every component except the identity.
  std::vector<int> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) != identity) index.push_back(static_cast<int>(i));
  }
  const std::size_t m = index.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) a[r][c] = fiber.gram()[index[r]][index[c]];
    a[r][m] = -rhs[index[r]];
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) throw InternalError("reduced intersection matrix is singular");
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  VerticalQDivisor out{std::vector<Rational>(n, 0)};
  for (std::size_t r = 0; r < m; ++r) out.phi[index[r]] = a[r][m] / a[r][r];

  for (std::size_t j = 0; j < n; ++j) {
    Rational s = rhs[j];
    for (std::size_t i = 0; i < n; ++i) s += out.phi[i] * fiber.gram()[i][j];
    if (s != 0) throw InternalError("vertical correction fails on component " + std::to_string(j));
  }
  return out;
}

IntersectionValue phi_pairing(const SpecialFiberGraph& fiber, const VerticalQDivisor& phi, const ComponentLabel& c_p) {
  return phi.phi.at(fiber.component_for(c_p)) - phi.phi.at(fiber.identity_id());
}

IntersectionValue section_intersection(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q,
                                       const Integer& prime) {
  if (p == q) throw DomainError("self-intersection of a section is not defined here");
  const CurvePoint d = subtract(e, q, p);
  const long v = ord(d.x(), prime);
  return v < 0 ? fraction(-v, 2) : Rational(0);
}

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<std::vector<Integer>> reduced_gram(const SpecialFiberGraph& fiber) {
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    if (static_cast<int>(i) == fiber.identity_id()) continue;
    std::vector<Integer> row;
    for (std::size_t j = 0; j < fiber.size(); ++j) {
      if (static_cast<int>(j) != fiber.identity_id()) row.push_back(fiber.gram()[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ech
