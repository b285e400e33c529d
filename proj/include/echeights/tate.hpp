#pragma once

#include <string>
#include <variant>
#include <vector>

#include "echeights/curve.hpp"

namespace ech {

enum class KodairaSymbol { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

struct KodairaType {
  KodairaSymbol symbol = KodairaSymbol::I0;
  int n = 0;  // n >= 1 for In and InStar, 0 otherwise

  static KodairaType I(int n);
  static KodairaType I_star(int n);
  static KodairaType parse(std::string_view label);

  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// A label in the geometric component group: `a` mod the cyclic order, or the
/// pair (a, b) in Z/2 x Z/2. Label 0 is the identity component.
struct ComponentLabel {
  int a = 0;
  int b = 0;

  [[nodiscard]] bool is_identity() const { return a == 0 && b == 0; }
  friend bool operator==(const ComponentLabel&, const ComponentLabel&) = default;
};

class ComponentGroup {
 public:
  enum class Kind { Cyclic, Klein };

  static ComponentGroup cyclic(int order) { return ComponentGroup(Kind::Cyclic, order); }
  static ComponentGroup klein() { return ComponentGroup(Kind::Klein, 4); }
  static ComponentGroup for_type(const KodairaType& type);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] ComponentLabel add(const ComponentLabel& x, const ComponentLabel& y) const;
  [[nodiscard]] ComponentLabel negate(const ComponentLabel& x) const;
  [[nodiscard]] ComponentLabel multiply(const ComponentLabel& x, long m) const;
  [[nodiscard]] int order_of(const ComponentLabel& x) const;
  [[nodiscard]] std::vector<ComponentLabel> elements() const;
  [[nodiscard]] std::string label_string(const ComponentLabel& x) const;
  /// "trivial", "Z/n" or "Z/2xZ/2".
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ComponentGroup&, const ComponentGroup&) = default;

 private:
  ComponentGroup(Kind kind, int order) : kind_(kind), order_(order) {}
  Kind kind_;
  int order_;
};

/// Per-reduction-type data needed to place a point of the Tate-normalised model on a
/// component. Coordinates are on `LocalModelData::tate_curve`, whose singular point
/// of the reduction (if any) is (0,0).
namespace locator {

struct Trivial {};       // I0, I1, II, II*: everything lands on E^0
struct OffIsOne {};      // III, III*: the unique non-identity component
struct Multiplicative {  // I_n
  int n = 0;
  bool split = false;
  long precision = 0;    // node position and slopes known modulo p^precision
  Integer node_x, node_y;
  Integer slope_alpha, slope_beta;
};
struct ResidueRoots {  // I0*, IV, IV*
  bool use_y = false;  // classify by y / p^exponent, else x / p^exponent
  long exponent = 1;
  std::vector<Integer> roots;             // all rational roots, sorted
  std::vector<ComponentLabel> labels;     // label per root
};
struct StarChain {  // I_n*, n >= 1
  int n = 0;
  Integer near_root;       // x / p mod p on the non-identity near leg
  bool far_use_y = false;  // last quadratic in y (else in x)
  long far_exponent = 2;
  std::vector<Integer> far_roots;  // rational roots of the last quadratic, sorted
};

using Rule = std::variant<Trivial, OffIsOne, Multiplicative, ResidueRoots, StarChain>;

}  // namespace locator

struct LocalModelData {
  Integer p;
  WeierstrassCurve minimal_curve;
  ModelMap to_minimal;  // input model -> minimal_curve
  KodairaType kodaira;
  long v_delta_min = 0;
  ComponentGroup component_group = ComponentGroup::cyclic(1);
  int tamagawa = 1;
  int n_components_mult_one = 1;

  // Tate-normalised integral model (translate of minimal_curve) used for point placement.
  WeierstrassCurve tate_curve;
  ModelMap minimal_to_tate;
  locator::Rule rule;

  [[nodiscard]] bool is_minimal_input() const { return to_minimal.is_identity(); }
};

struct MinimalModel {
  WeierstrassCurve curve;
  ModelMap map;  // input -> curve
};

/// p-minimal, p-integral model. Returns the input unchanged (identity map) when it
/// is already p-integral and p-minimal, and a pure rescaling whenever that suffices.
MinimalModel minimal_model_at(const WeierstrassCurve& e, const Integer& p);

/// Tate's algorithm at p. Throws InputError if p is not prime.
LocalModelData local_data(const WeierstrassCurve& e, const Integer& p);

/// Whether P (on the input model of `data`) reduces to a smooth point of the minimal model.
bool is_in_e0(const LocalModelData& data, const CurvePoint& p);
bool is_in_e0(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime);

/// Néron component hit by P (on the input model of `data`).
ComponentLabel component_index(const LocalModelData& data, const CurvePoint& p);
ComponentLabel component_index(const WeierstrassCurve& e, const CurvePoint& p, const Integer& prime);

/// Globally minimal integral model, obtained by minimalising at each bad prime.
MinimalModel global_minimal_model(const WeierstrassCurve& e);

/// Primes where the model is non-integral or has bad reduction (ascending).
std::vector<Integer> bad_primes(const WeierstrassCurve& e);

}  // namespace ech
