#pragma once

#include <string>

#include <json.hpp>

namespace specbound::detail {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number printed to 17 significant
/// digits (integral floats keep a trailing ".0"); non-finite numbers become
/// null. indent < 0 gives a single line.
std::string write_json(const Json& j, int indent = 2);

}  // namespace specbound::detail
