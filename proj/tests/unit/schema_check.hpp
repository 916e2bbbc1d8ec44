#pragma once

// Draft-07 subset used by the shipped schemas: type, required, properties,
// items, enum and local $ref into #/definitions.
#include <string>
#include <vector>

#include "json.hpp"

namespace schema_check {

using nlohmann::json;

inline bool type_matches(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

inline void validate(const json& v, const json& s, const json& root, const std::string& path,
                     std::vector<std::string>& errors) {
    if (s.contains("$ref")) {
        const std::string ref = s["$ref"];
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) != 0) {
            errors.push_back(path + ": unsupported $ref " + ref);
            return;
        }
        validate(v, root["definitions"][ref.substr(prefix.size())], root, path, errors);
        return;
    }
    if (s.contains("type")) {
        bool ok = false;
        if (s["type"].is_array()) {
            for (const auto& t : s["type"]) ok = ok || type_matches(v, t);
        } else {
            ok = type_matches(v, s["type"]);
        }
        if (!ok) {
            errors.push_back(path + ": expected type " + s["type"].dump() + ", got " + v.type_name());
            return;
        }
    }
    if (s.contains("enum")) {
        bool found = false;
        for (const auto& e : s["enum"]) found = found || e == v;
        if (!found) errors.push_back(path + ": value " + v.dump() + " not in enum");
    }
    if (v.is_object()) {
        if (s.contains("required"))
            for (const auto& r : s["required"])
                if (!v.contains(r.get<std::string>())) errors.push_back(path + ": missing " + r.get<std::string>());
        if (s.contains("properties"))
            for (const auto& [k, sub] : s["properties"].items())
                if (v.contains(k)) validate(v[k], sub, root, path + "/" + k, errors);
    }
    if (v.is_array() && s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i)
            validate(v[i], s["items"], root, path + "/" + std::to_string(i), errors);
}

inline std::vector<std::string> validate(const json& doc, const json& schema) {
    std::vector<std::string> errors;
    validate(doc, schema, schema, "", errors);
    return errors;
}

}  // namespace schema_check
