// Command-line front end: heights <subcommand> [options]

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "echeights/json_io.hpp"

namespace {

using nlohmann::json;
using namespace ech;

constexpr int kExitInput = 1;
constexpr int kExitVerification = 2;

struct Options {
  std::string curve;
  std::string point;
  std::string aux_point;
  std::string prime;
  long precision = 64;
  bool json = false;
  std::string target;
  bool drop_phi = false;
  std::size_t samples = 100;
  int steps = 8;
};

WeierstrassCurve require_curve(const Options& o) { return WeierstrassCurve::parse(o.curve); }

CurvePoint require_point(const WeierstrassCurve& e, const std::string& text, const char* flag) {
  if (text.empty()) throw InputError(std::string("missing ") + flag);
  const CurvePoint p = CurvePoint::parse(text);
  if (!on_curve(e, p)) throw InputError("point " + p.to_string() + " is not on curve " + e.to_string());
  return p;
}

Integer require_prime(const std::string& text) {
  if (text.empty()) throw InputError("missing -p/--prime");
  const Rational q = parse_rational(text);
  if (q.get_den() != 1 || !is_prime(q.get_num())) throw InputError("not a prime: '" + text + "'");
  return q.get_num();
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string local_line(const LocalModelData& d) {
  std::ostringstream s;
  s << "p=" << d.p << ": " << d.kodaira.to_string() << ", v(Delta_min)=" << d.v_delta_min
    << ", component group " << d.component_group.to_string() << ", tamagawa " << d.tamagawa
    << ", minimal model " << d.minimal_curve.to_string() << "\n";
  return s.str();
}

int cmd_model(const Options& o) {
  const WeierstrassCurve e = require_curve(o);
  const MinimalModel global = global_minimal_model(e);
  std::vector<Integer> primes = o.prime.empty() ? bad_primes(e) : std::vector<Integer>{require_prime(o.prime)};
  json local = json::array();
  std::ostringstream text;
  text << "curve: " << e.to_string() << "\n"
       << "global minimal model: " << global.curve.to_string() << "\n"
       << "discriminant: " << to_string(e.discriminant()) << "\n"
       << "j-invariant: " << to_string(e.j_invariant()) << "\n";
  for (const auto& p : primes) {
    const LocalModelData d = local_data(e, p);
    local.push_back(to_json(d));
    text << local_line(d);
  }
  emit(o,
       {{"curve", to_json(e)},
        {"global_minimal_model", to_json(global.curve)},
        {"discriminant", to_string(e.discriminant())},
        {"j_invariant", to_string(e.j_invariant())},
        {"local", local}},
       text.str());
  return 0;
}

std::string place_text(const PlaceHeight& h, long bits) {
  std::ostringstream s;
  s << "place " << h.place << ": ";
  if (h.exact) s << h.exact->exact_string() << " = ";
  s << decimal_string(h.value, bits);
  if (h.kodaira) s << " (" << h.kodaira->to_string() << ", component " << *h.component << ")";
  s << "\n";
  return s.str();
}

int cmd_local(const Options& o) {
  const WeierstrassCurve e = require_curve(o);
  const CurvePoint p = require_point(e, o.point, "-P/--point");
  if (o.prime.empty()) throw InputError("missing -p/--prime (a prime or \"inf\")");
  const std::string place = o.prime == "inf" ? o.prime : to_string(require_prime(o.prime));
  const PlaceHeight h = place_height(e, p, place, o.precision);
  json j = to_json(h, o.precision);
  std::string text = place_text(h, o.precision);
  if (!o.aux_point.empty()) {
    if (place == "inf") throw InputError("-Q/--aux-point applies to finite places only");
    const CurvePoint q = require_point(e, o.aux_point, "-Q/--aux-point");
    const NonArchHeight via_q = intlambda_height(e, p, q, require_prime(place));
    j["via_aux_point"] = via_q.exact_string();
    text += "via auxiliary point " + q.to_string() + ": " + via_q.exact_string() + "\n";
  }
  emit(o, j, text);
  return 0;
}

int cmd_heights(const Options& o) {
  const WeierstrassCurve e = require_curve(o);
  const CurvePoint p = require_point(e, o.point, "-P/--point");
  const HeightBreakdown b = height_breakdown(e, p, o.precision);
  std::string text;
  for (const auto& h : b.places) text += place_text(h, o.precision);
  text += "total: " + decimal_string(b.total, o.precision) + "\n";
  emit(o, to_json(b), text);
  return 0;
}

int cmd_phi(const Options& o) {
  const WeierstrassCurve e = require_curve(o);
  const LocalModelData d = local_data(e, require_prime(o.prime));
  const SpecialFiberGraph fiber = fiber_for_type(d.kodaira);
  std::vector<ComponentLabel> labels;
  if (!o.point.empty()) {
    const CurvePoint p = require_point(e, o.point, "-P/--point");
    if (p.is_origin()) throw DomainError("the origin has no vertical correction to report");
    labels.push_back(component_index(d, p));
  } else {
    labels = d.component_group.elements();
  }

  std::ostringstream text;
  text << local_line(d) << "fiber " << fiber.type().to_string() << ":";
  for (const auto& c : fiber.components()) text << " " << c.id << "[" << c.name << ",m=" << c.multiplicity << "]";
  text << "\nedges:";
  for (const auto& edge : fiber.edges()) text << " " << edge.i << "-" << edge.j;
  text << "\n";

  json corrections = json::array();
  for (const auto& label : labels) {
    const VerticalQDivisor phi = solve_phi(fiber, label);
    const Rational pairing = phi_pairing(fiber, phi, label);
    const std::string name = d.component_group.label_string(label);
    corrections.push_back({{"component", name},
                           {"component_id", fiber.component_for(label)},
                           {"phi", to_json(phi)},
                           {"phi_pairing", to_string(pairing)}});
    text << "component " << name << " (id " << fiber.component_for(label) << "): phi =";
    for (const auto& c : phi.phi) text << " " << to_string(c);
    text << ", pairing " << to_string(pairing) << "\n";
  }
  emit(o, {{"local", to_json(d)}, {"fiber", to_json(fiber)}, {"corrections", corrections}}, text.str());
  return 0;
}

int cmd_canonical(const Options& o) {
  const WeierstrassCurve e = require_curve(o);
  const CurvePoint p = require_point(e, o.point, "-P/--point");
  const Real h = canonical_height(e, p, o.precision);
  json j{{"value", decimal_string(h, o.precision)}, {"precision_bits", o.precision}};
  std::string text = "canonical height: " + decimal_string(h, o.precision) + "\n";
  if (!p.is_origin()) {
    const DoublingEstimate est = doubling_limit_oracle(e, p, o.steps);
    j["oracle"] = {{"value", est.value}, {"steps", est.steps}, {"torsion", est.torsion}};
    std::ostringstream s;
    s.precision(9);
    s << "doubling oracle (" << est.steps << " steps): " << est.value << (est.torsion ? " (torsion)" : "") << "\n";
    text += s.str();
  }
  emit(o, j, text);
  return 0;
}

int cmd_verify(const Options& o) {
  VerificationReport report;
  if (o.target == "table1") {
    report = verify_table1({o.drop_phi, o.precision, o.steps});
  } else if (o.target == "parallelogram") {
    report = verify_parallelogram(o.precision, o.samples);
  } else if (o.target == "fh") {
    report = verify_fh(o.precision);
  } else {
    throw InputError("unknown verification target '" + o.target + "'");
  }
  std::ostringstream text;
  text.precision(6);
  for (const auto& c : report.checks) {
    text << (c.passed ? "PASS" : "FAIL") << "  " << c.row << " | " << c.check;
    if (c.residual) text << " | residual " << *c.residual;
    if (!c.detail.empty()) text << " | " << c.detail;
    text << "\n";
  }
  text << report.name << ": " << report.checks.size() - report.failures() << "/" << report.checks.size()
       << " checks passed\n";
  emit(o, to_json(report), text.str());
  return report.passed() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local and canonical heights on elliptic curves over Q"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision", o.precision, "Precision target in bits")->check(CLI::Range(16L, 100000L));
    sub->add_flag("--json", o.json, "Emit JSON");
  };
  auto add_curve = [&](CLI::App* sub) {
    sub->add_option("-c,--curve", o.curve, "Coefficients a1,a2,a3,a4,a6")->required();
  };

  auto* model = app.add_subcommand("model", "Minimal model and Kodaira data");
  add_curve(model);
  model->add_option("-p,--prime", o.prime, "Restrict to one prime");
  add_common(model);

  auto* local = app.add_subcommand("local", "Local height at one place");
  add_curve(local);
  local->add_option("-P,--point", o.point, "Point x,y")->required();
  local->add_option("-p,--prime", o.prime, "A prime or inf")->required();
  local->add_option("-Q,--aux-point", o.aux_point, "Auxiliary point for the second formula");
  add_common(local);

  auto* heights = app.add_subcommand("heights", "Local heights at every relevant place and their sum");
  add_curve(heights);
  heights->add_option("-P,--point", o.point, "Point x,y")->required();
  add_common(heights);

  auto* phi = app.add_subcommand("phi", "Fiber graph and vertical corrections at a prime");
  add_curve(phi);
  phi->add_option("-p,--prime", o.prime, "Prime")->required();
  phi->add_option("-P,--point", o.point, "Only the component of this point");
  add_common(phi);

  auto* canonical = app.add_subcommand("canonical", "Canonical height");
  add_curve(canonical);
  canonical->add_option("-P,--point", o.point, "Point x,y or O")->required();
  canonical->add_option("--steps", o.steps, "Doubling steps for the oracle estimate")->check(CLI::Range(0, 12));
  add_common(canonical);

  auto* verify = app.add_subcommand("verify", "Built-in verification suites");
  verify->add_option("target", o.target, "table1, parallelogram or fh")
      ->required()
      ->check(CLI::IsMember({"table1", "parallelogram", "fh"}));
  verify->add_flag("--drop-phi", o.drop_phi, "table1 negative control: set every vertical correction to 0");
  verify->add_option("--samples", o.samples, "Number of parallelogram samples")->check(CLI::Range(1, 100000));
  verify->add_option("--steps", o.steps, "Doubling steps for the oracles")->check(CLI::Range(0, 12));
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*model) return cmd_model(o);
    if (*local) return cmd_local(o);
    if (*heights) return cmd_heights(o);
    if (*phi) return cmd_phi(o);
    if (*canonical) return cmd_canonical(o);
    return cmd_verify(o);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
