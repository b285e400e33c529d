#pragma once

#include <json.hpp>

#include "echeights/harness.hpp"

namespace ech {

/// Decimal rendering with as many significant digits as `precision_bits` carry.
std::string decimal_string(const Real& value, long precision_bits);

nlohmann::json to_json(const WeierstrassCurve& e);
nlohmann::json to_json(const LocalModelData& data);
nlohmann::json to_json(const SpecialFiberGraph& fiber);
/// {component_id: "num/den"}
nlohmann::json to_json(const VerticalQDivisor& phi);
nlohmann::json to_json(const PlaceHeight& height, long precision_bits);
nlohmann::json to_json(const HeightBreakdown& breakdown);
nlohmann::json to_json(const VerificationReport& report);

}  // namespace ech
