#pragma once

#include "taylor/expansion.hpp"
#include "taylor/quadrature.hpp"
#include "taylor/scheme.hpp"

#include "json.hpp"

namespace taylor {

// {"n": int, "t": [...], "omega": [...]}
[[nodiscard]] nlohmann::ordered_json scheme_to_json(const ExpansionScheme& scheme);
[[nodiscard]] ExpansionScheme scheme_from_json(const nlohmann::json& j);

// {"approx", "true", "remainder", "lo", "hi", "width", "contained"}
[[nodiscard]] nlohmann::ordered_json report_to_json(const RemainderReport& report);

// {"value", "true", "abs_error", "bound", "n"}; absent optionals are null.
[[nodiscard]] nlohmann::ordered_json quad_to_json(const QuadReport& report);

} // namespace taylor
