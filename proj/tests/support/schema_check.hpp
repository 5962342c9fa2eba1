#pragma once

// Validator for the subset of JSON Schema used by schema/full.schema.json:
// $ref (local), type, enum, required, properties, additionalProperties:false,
// items, minimum, anyOf, pattern.

#include <string>
#include <vector>

#include <json.hpp>

namespace full::testing {

/// Errors found while validating `instance` against the schema node reached
/// by `pointer` (e.g. "/$defs/verdict") inside `root`. Empty means valid.
std::vector<std::string> validate(const nlohmann::json& root, const nlohmann::json& instance,
                                  const std::string& pointer = "");

nlohmann::json load_schema(const std::string& path);

}  // namespace full::testing
