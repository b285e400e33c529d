#pragma once

#include <optional>
#include <string>
#include <vector>

#include "echeights/tate.hpp"

namespace ech {

/// Intersection numbers are stored as the rational coefficient of log p.
using IntersectionValue = Rational;

struct FiberComponent {
  int id = 0;
  int multiplicity = 1;
  std::string name;
  std::optional<ComponentLabel> label;  // set exactly for multiplicity-one components
};

struct FiberEdge {
  int i = 0;
  int j = 0;
  int multiplicity = 1;
};

/// Dual graph of the special fibre of the minimal regular model together with its
/// intersection matrix.
class SpecialFiberGraph {
 public:
  SpecialFiberGraph(KodairaType type, std::vector<FiberComponent> components, const std::vector<FiberEdge>& edges);

  [[nodiscard]] const KodairaType& type() const { return type_; }
  [[nodiscard]] const ComponentGroup& group() const { return group_; }
  [[nodiscard]] const std::vector<FiberComponent>& components() const { return components_; }
  [[nodiscard]] const std::vector<std::vector<long>>& gram() const { return gram_; }
  [[nodiscard]] int identity_id() const { return 0; }
  [[nodiscard]] std::size_t size() const { return components_.size(); }

  /// Component carrying a given group label; throws InputError for a foreign label.
  [[nodiscard]] int component_for(const ComponentLabel& label) const;
  /// Off-diagonal intersections, i < j.
  [[nodiscard]] std::vector<FiberEdge> edges() const;
  [[nodiscard]] std::vector<long> multiplicities() const;

 private:
  KodairaType type_;
  ComponentGroup group_;
  std::vector<FiberComponent> components_;
  std::vector<std::vector<long>> gram_;
};

SpecialFiberGraph fiber_for_type(const KodairaType& kodaira);

/// Coefficients of a vertical Q-divisor, indexed by component id.
struct VerticalQDivisor {
  std::vector<Rational> phi;

  /// The same divisor plus c times the full fibre (sum of m_i F_i).
  [[nodiscard]] VerticalQDivisor plus_fiber(const SpecialFiberGraph& fiber, const Rational& c) const;
};

/// Phi((P) - (O)) for P on component c_P: the vertical divisor with
/// (D + Phi . F_j) = 0 for every component, normalised by phi_identity = 0.
VerticalQDivisor solve_phi(const SpecialFiberGraph& fiber, const ComponentLabel& c_p);

/// (Phi . (P) - (O)) = phi_{c_P} - phi_identity.
IntersectionValue phi_pairing(const SpecialFiberGraph& fiber, const VerticalQDivisor& phi, const ComponentLabel& c_p);

/// (P . Q)_p = max(-v_p(x(Q - P)), 0) / 2 on a p-minimal model. Throws DomainError if P = Q.
IntersectionValue section_intersection(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q,
                                       const Integer& prime);

/// Exact determinant by fraction-free elimination.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m);

/// Gram matrix with the identity row and column removed.
std::vector<std::vector<Integer>> reduced_gram(const SpecialFiberGraph& fiber);

}  // namespace ech
