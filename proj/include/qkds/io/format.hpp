#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

namespace qkds::io {

/// 17 significant digits: enough for an exact double round trip.
inline std::string exact(double v) { return fmt::format("{:.17g}", v); }

/// Human-readable: 6 significant digits.
inline std::string brief(double v) { return fmt::format("{:.6g}", v); }

inline std::string exact_or_empty(const std::optional<double>& v) { return v ? exact(*v) : std::string(); }

/// Flat JSON object with insertion-ordered keys and 17-digit numbers.
class JsonObject {
 public:
  JsonObject& number(const std::string& key, double v) { return raw(key, exact(v)); }
  JsonObject& number(const std::string& key, const std::optional<double>& v) {
    return raw(key, v ? exact(*v) : "null");
  }
  JsonObject& integer(const std::string& key, long long v) { return raw(key, std::to_string(v)); }
  JsonObject& integer_u(const std::string& key, unsigned long long v) { return raw(key, std::to_string(v)); }
  JsonObject& string(const std::string& key, const std::string& v) { return raw(key, nlohmann::json(v).dump()); }
  JsonObject& boolean(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
  JsonObject& null(const std::string& key) { return raw(key, "null"); }
  JsonObject& object(const std::string& key, const JsonObject& v) { return raw(key, v.dump()); }

  std::string dump() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) out += ", ";
      out += nlohmann::json(fields_[i].first).dump();
      out += ": ";
      out += fields_[i].second;
    }
    return out + "}";
  }

 private:
  JsonObject& raw(const std::string& key, std::string value) {
    fields_.emplace_back(key, std::move(value));
    return *this;
  }

  std::vector<std::pair<std::string, std::string>> fields_;
};

inline std::string json_array(const std::vector<JsonObject>& items) {
  if (items.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += "  " + items[i].dump();
    out += i + 1 < items.size() ? ",\n" : "\n";
  }
  return out + "]\n";
}

}  // namespace qkds::io
