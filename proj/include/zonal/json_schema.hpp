#ifndef ZONAL_JSON_SCHEMA_HPP
#define ZONAL_JSON_SCHEMA_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

// Validator for the subset of JSON Schema used by the shipped schemas:
// type (string or list), properties, required, additionalProperties (boolean
// or schema), enum, const, items, minItems, maxItems, minimum, maximum,
// exclusiveMinimum, exclusiveMaximum, minLength, oneOf, anyOf and local
// "$ref": "#/$defs/..." references. Unknown keywords are ignored.

namespace zonal {

class json_schema {
 public:
  explicit json_schema(nlohmann::json schema) : root_(std::move(schema)) {}

  /// One message per violation, each prefixed with a JSON pointer.
  std::vector<std::string> validate(const nlohmann::json& doc) const {
    std::vector<std::string> errors;
    check(root_, doc, "", errors);
    return errors;
  }

  const nlohmann::json& document() const { return root_; }

 private:
  static std::string where(const std::string& path) { return path.empty() ? "/" : path; }

  static bool has_type(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "number") return v.is_number();
    if (t == "integer") {
      if (v.is_number_integer()) return true;
      return v.is_number_float() && std::isfinite(v.get<double>())
             && std::floor(v.get<double>()) == v.get<double>();
    }
    return false;
  }

  const nlohmann::json& resolve(const nlohmann::json& s) const {
    if (s.is_object() && s.contains("$ref")) {
      const auto ref = s["$ref"].get<std::string>();
      if (ref.rfind("#", 0) != 0) {
        throw std::invalid_argument("only local schema references are supported: " + ref);
      }
      return resolve(root_.at(nlohmann::json::json_pointer(ref.substr(1))));
    }
    return s;
  }

  void check(const nlohmann::json& schema_in, const nlohmann::json& v, const std::string& path,
             std::vector<std::string>& errors) const {
    const auto& s = resolve(schema_in);
    if (s.is_boolean()) {
      if (!s.get<bool>()) {
        errors.push_back(where(path) + ": not allowed");
      }
      return;
    }
    if (s.contains("type")) {
      const auto& t = s["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t.get<std::string>());
      } else {
        for (const auto& alt : t) {
          ok = ok || has_type(v, alt.get<std::string>());
        }
      }
      if (!ok) {
        errors.push_back(where(path) + ": expected type " + t.dump() + ", got "
                         + std::string(v.type_name()));
        return;
      }
    }
    if (s.contains("const") && v != s["const"]) {
      errors.push_back(where(path) + ": must equal " + s["const"].dump());
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) {
        found = found || e == v;
      }
      if (!found) {
        errors.push_back(where(path) + ": " + v.dump() + " is not one of " + s["enum"].dump());
      }
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>()) {
        errors.push_back(where(path) + ": " + v.dump() + " is below the minimum "
                         + s["minimum"].dump());
      }
      if (s.contains("maximum") && x > s["maximum"].get<double>()) {
        errors.push_back(where(path) + ": " + v.dump() + " is above the maximum "
                         + s["maximum"].dump());
      }
      if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>()) {
        errors.push_back(where(path) + ": " + v.dump() + " must exceed "
                         + s["exclusiveMinimum"].dump());
      }
      if (s.contains("exclusiveMaximum") && x >= s["exclusiveMaximum"].get<double>()) {
        errors.push_back(where(path) + ": " + v.dump() + " must be below "
                         + s["exclusiveMaximum"].dump());
      }
    }
    if (v.is_string() && s.contains("minLength")
        && v.get<std::string>().size() < s["minLength"].get<std::size_t>()) {
      errors.push_back(where(path) + ": string is too short");
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
        errors.push_back(where(path) + ": needs at least " + s["minItems"].dump() + " items");
      }
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) {
        errors.push_back(where(path) + ": allows at most " + s["maxItems"].dump() + " items");
      }
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          check(s["items"], v[i], path + "/" + std::to_string(i), errors);
        }
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& key : s["required"]) {
          if (!v.contains(key.get<std::string>())) {
            errors.push_back(where(path) + ": missing required property \""
                             + key.get<std::string>() + "\"");
          }
        }
      }
      const nlohmann::json empty = nlohmann::json::object();
      const auto& props = s.contains("properties") ? s["properties"] : empty;
      for (const auto& [key, value] : v.items()) {
        const std::string child = path + "/" + key;
        if (props.contains(key)) {
          check(props[key], value, child, errors);
        } else if (s.contains("additionalProperties")) {
          const auto& extra = s["additionalProperties"];
          if (extra.is_boolean() && !extra.get<bool>()) {
            errors.push_back(where(path) + ": unknown property \"" + key + "\"");
          } else if (extra.is_object()) {
            check(extra, value, child, errors);
          }
        }
      }
    }
    if (s.contains("oneOf") || s.contains("anyOf")) {
      const bool one = s.contains("oneOf");
      const auto& alts = one ? s["oneOf"] : s["anyOf"];
      int matches = 0;
      std::vector<std::string> first_failure;
      for (const auto& alt : alts) {
        std::vector<std::string> sub;
        check(alt, v, path, sub);
        if (sub.empty()) {
          ++matches;
        } else if (first_failure.empty()) {
          first_failure = sub;
        }
      }
      if (matches == 0) {
        errors.push_back(where(path) + ": matches none of the allowed forms"
                         + (first_failure.empty() ? "" : " (first: " + first_failure.front() + ")"));
      } else if (one && matches > 1) {
        errors.push_back(where(path) + ": matches more than one allowed form");
      }
    }
  }

  nlohmann::json root_;
};

}  // namespace zonal

#endif  // ZONAL_JSON_SCHEMA_HPP
