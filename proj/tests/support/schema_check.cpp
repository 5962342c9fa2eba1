#include "schema_check.hpp"

#include <fstream>
#include <regex>
#include <stdexcept>

namespace full::testing {
namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  throw std::runtime_error("unsupported schema type " + t);
}

void check(const json& root, const json& schema, const json& v, const std::string& at, std::vector<std::string>& errs) {
  if (schema.contains("$ref")) {
    std::string ref = schema["$ref"];
    if (ref.rfind("#", 0) != 0) throw std::runtime_error("only local $ref supported");
    check(root, root.at(json::json_pointer(ref.substr(1))), v, at, errs);
  }
  if (schema.contains("type") && !has_type(v, schema["type"])) {
    errs.push_back(at + ": expected " + schema["type"].get<std::string>());
    return;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) errs.push_back(at + ": " + v.dump() + " not in enum");
  }
  if (schema.contains("anyOf")) {
    bool any = false;
    for (const auto& alt : schema["anyOf"]) {
      std::vector<std::string> sub;
      check(root, alt, v, at, sub);
      any = any || sub.empty();
    }
    if (!any) errs.push_back(at + ": matches no alternative");
  }
  if (schema.contains("minimum") && v.is_number() && v.get<double>() < schema["minimum"].get<double>())
    errs.push_back(at + ": below minimum");
  if (schema.contains("pattern") && v.is_string() &&
      !std::regex_search(v.get<std::string>(), std::regex(schema["pattern"].get<std::string>())))
    errs.push_back(at + ": does not match pattern");
  if (v.is_object()) {
    for (const auto& r : schema.value("required", json::array()))
      if (!v.contains(r.get<std::string>())) errs.push_back(at + ": missing '" + r.get<std::string>() + "'");
    const json props = schema.value("properties", json::object());
    for (const auto& [k, child] : v.items()) {
      if (props.contains(k))
        check(root, props[k], child, at + "/" + k, errs);
      else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false)
        errs.push_back(at + ": unexpected '" + k + "'");
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) check(root, schema["items"], v[i], at + "/" + std::to_string(i), errs);
}

}  // namespace

std::vector<std::string> validate(const json& root, const json& instance, const std::string& pointer) {
  std::vector<std::string> errs;
  const json& schema = pointer.empty() ? root : root.at(json::json_pointer(pointer));
  check(root, schema, instance, "$", errs);
  return errs;
}

json load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace full::testing
