#include "echeights/json_io.hpp"

#include <cmath>

namespace ech {

using nlohmann::json;

std::string decimal_string(const Real& value, long precision_bits) {
  const int digits = std::max(1, static_cast<int>(std::floor(precision_bits * std::log10(2.0))));
  return value.to_string(digits);
}

json to_json(const WeierstrassCurve& e) {
  json out = json::array();
  for (const auto& a : e.coefficients()) out.push_back(to_string(a));
  return out;
}

json to_json(const LocalModelData& data) {
  return {
      {"p", to_string(data.p)},
      {"kodaira", data.kodaira.to_string()},
      {"v_delta", data.v_delta_min},
      {"component_group", data.component_group.to_string()},
      {"tamagawa", data.tamagawa},
      {"minimal_model", to_json(data.minimal_curve)},
  };
}

json to_json(const SpecialFiberGraph& fiber) {
  json components = json::array();
  for (const auto& c : fiber.components()) {
    json entry{{"id", c.id}, {"mult", c.multiplicity}, {"name", c.name}};
    entry["label"] = c.label ? json(fiber.group().label_string(*c.label)) : json(nullptr);
    components.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const auto& edge : fiber.edges()) edges.push_back({{"i", edge.i}, {"j", edge.j}, {"mult", edge.multiplicity}});
  return {
      {"type", fiber.type().to_string()},
      {"components", std::move(components)},
      {"edges", std::move(edges)},
      {"identity", fiber.identity_id()},
  };
}

json to_json(const VerticalQDivisor& phi) {
  json out = json::object();
  for (std::size_t i = 0; i < phi.phi.size(); ++i) out[std::to_string(i)] = to_string(phi.phi[i]);
  return out;
}

json to_json(const PlaceHeight& height, long precision_bits) {
  json out{
      {"place", height.place},
      {"value", decimal_string(height.value, precision_bits)},
      {"precision_bits", precision_bits},
  };
  out["exact"] = height.exact ? json(height.exact->exact_string()) : json(nullptr);
  out["kodaira"] = height.kodaira ? json(height.kodaira->to_string()) : json(nullptr);
  out["component"] = height.component ? json(*height.component) : json(nullptr);
  return out;
}

json to_json(const HeightBreakdown& breakdown) {
  json places = json::array();
  for (const auto& place : breakdown.places) places.push_back(to_json(place, breakdown.precision_bits));
  return {
      {"places", std::move(places)},
      {"total", decimal_string(breakdown.total, breakdown.precision_bits)},
      {"precision_bits", breakdown.precision_bits},
  };
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry{{"row", c.row}, {"check", c.check}, {"passed", c.passed}, {"detail", c.detail}};
    auto optional = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    entry["expected"] = optional(c.expected);
    entry["observed"] = optional(c.observed);
    entry["residual"] = optional(c.residual);
    checks.push_back(std::move(entry));
  }
  return {
      {"name", report.name},
      {"passed", report.passed()},
      {"failures", report.failures()},
      {"checks", std::move(checks)},
  };
}

}  // namespace ech
