#pragma once

#include "defcat/json_io.hpp"

#include <iostream>

namespace defcat {

// Machine-readable run report with stable field names; --text renders the
// same data for terminals.
struct Report {
  std::string command;
  std::vector<std::string> input_digests;
  unsigned long long seed = 0;
  json results = json::object();
  int exit_code = 0;  // 0 ok, 1 mathematical negative, 2 input error, 3 internal

  json to_json() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "report";
    j["command"] = command;
    j["inputs"] = input_digests;
    j["seed"] = seed;
    j["results"] = results;
    j["exit"] = exit_code;
    return j;
  }
};

// FNV-1a over the canonical dump: stable input digests for the report
inline std::string digest(const json& j) {
  std::string s = j.dump();
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

inline void render_text(std::ostream& os, const json& j, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_text(os, it.value(), indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array())
        render_text(os, v, indent + 2);
      else
        os << pad << "- " << v.dump() << "\n";
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

}  // namespace defcat
