#pragma once

// Validator for the JSON-schema keywords the config schema uses: type,
// enum, properties, required, additionalProperties (boolean), items,
// minItems, minimum, maximum, exclusiveMinimum.

#include <string>
#include <vector>

#include <json.hpp>

namespace pstirap::cli {

/// One message per violation, each prefixed with its JSON pointer.
std::vector<std::string> schema_errors(const nlohmann::json& doc, const nlohmann::json& schema);

}  // namespace pstirap::cli
