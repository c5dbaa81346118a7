// Minimal JSON-schema subset checker for the report schemas in schemas/.
// Supports: type (string or list), required, properties, items, minItems,
// additionalProperties:false. Returns one message per violation; empty means
// the document conforms.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace schemacheck {

using Json = nlohmann::json;

inline bool typeMatches(const std::string& t, const Json& v) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

inline void check(const Json& schema, const Json& doc, const std::string& path,
                  std::vector<std::string>& errs) {
  if (schema.contains("type")) {
    const Json& ty = schema["type"];
    bool ok = false;
    if (ty.is_string()) {
      ok = typeMatches(ty.get<std::string>(), doc);
    } else {
      for (const auto& t : ty)
        if (typeMatches(t.get<std::string>(), doc)) ok = true;
    }
    if (!ok) {
      errs.push_back(path + ": type mismatch (got " + std::string(doc.type_name()) + ")");
      return;  // deeper checks would be meaningless
    }
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!doc.contains(k.get<std::string>()))
          errs.push_back(path + ": missing required key '" + k.get<std::string>() + "'");
    const Json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
    if (props)
      for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (props->contains(it.key()))
          check((*props)[it.key()], it.value(), path + "/" + it.key(), errs);
        else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"].is_boolean() &&
                 !schema["additionalProperties"].get<bool>())
          errs.push_back(path + ": unexpected key '" + it.key() + "'");
      }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<size_t>())
      errs.push_back(path + ": fewer than minItems elements");
    if (schema.contains("items"))
      for (size_t i = 0; i < doc.size(); ++i)
        check(schema["items"], doc[i], path + "/" + std::to_string(i), errs);
  }
}

inline std::vector<std::string> validate(const Json& schema, const Json& doc) {
  std::vector<std::string> errs;
  check(schema, doc, "", errs);
  return errs;
}

}  // namespace schemacheck
