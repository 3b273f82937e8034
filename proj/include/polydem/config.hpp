#pragma once

#include "polydem/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polydem {

/// Minimal TOML-style configuration: [section.sub] tables, [[name]] table
/// arrays, and key = value lines with strings, numbers, booleans or flat
/// arrays. The exact grammar is documented in the README.
class Config {
 public:
  using Value = std::variant<double, bool, std::string, std::vector<double>,
                             std::vector<std::string>>;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const { return (int)number(key); }
  int integer_or(const std::string& key, int fallback) const {
    return (int)number_or(key, fallback);
  }
  bool boolean_or(const std::string& key, bool fallback) const;
  std::string string(const std::string& key) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> strings(const std::string& key) const;

  /// Keys of the immediate children tables of `prefix` (e.g. the bc tags).
  std::vector<std::string> subtables(const std::string& prefix) const;

  /// Entries of a [[name]] table array.
  const std::vector<Config>& table_array(const std::string& name) const;
  bool has_table_array(const std::string& name) const {
    return arrays_.count(name) > 0;
  }

  const std::string& origin() const { return origin_; }

 private:
  const Value& get(const std::string& key) const;

  std::map<std::string, Value> values_;
  std::map<std::string, std::vector<Config>> arrays_;
  std::string origin_;
  static const std::vector<Config> kEmptyArray;
};

}  // namespace polydem
