#include "polydem/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace polydem {

const std::vector<Config> Config::kEmptyArray;

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// strips an end-of-line comment, respecting quoted strings
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

Config::Value parse_value(const std::string& raw, const std::string& where) {
  std::string v = trim(raw);
  if (v.empty()) fail("config " + where + ": empty value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail("config " + where + ": unterminated string");
    return v.substr(1, v.size() - 2);
  }
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '[') {
    if (v.back() != ']') fail("config " + where + ": unterminated array");
    std::string inner = v.substr(1, v.size() - 2);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : inner) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) parts.push_back(cur);
    bool all_strings = true;
    for (auto& p : parts) all_strings &= (trim(p).size() > 0 && trim(p).front() == '"');
    if (all_strings && !parts.empty()) {
      std::vector<std::string> out;
      for (auto& p : parts) {
        std::string q = trim(p);
        out.push_back(q.substr(1, q.size() - 2));
      }
      return out;
    }
    std::vector<double> out;
    for (auto& p : parts) {
      try {
        out.push_back(std::stod(trim(p)));
      } catch (...) {
        fail("config " + where + ": bad array entry '" + trim(p) + "'");
      }
    }
    return out;
  }
  try {
    size_t end;
    double d = std::stod(v, &end);
    if (end == v.size()) return d;
  } catch (...) {
  }
  fail("config " + where + ": cannot parse value '" + v + "'");
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config root;
  root.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::string section;
  Config* target = &root;

  while (std::getline(in, line)) {
    ++lineno;
    std::string where = origin + ":" + std::to_string(lineno);
    std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.rfind("[[", 0) == 0) {
      if (s.size() < 5 || s.substr(s.size() - 2) != "]]")
        fail("config " + where + ": malformed table array header");
      std::string name = trim(s.substr(2, s.size() - 4));
      root.arrays_[name].emplace_back();
      root.arrays_[name].back().origin_ = where;
      target = &root.arrays_[name].back();
      section.clear();
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']') fail("config " + where + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) fail("config " + where + ": empty section name");
      target = &root;
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) fail("config " + where + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    if (key.empty()) fail("config " + where + ": empty key");
    std::string full = section.empty() ? key : section + "." + key;
    if (target != &root) full = key;  // keys inside a [[...]] entry stay local
    target->values_[full] = parse_value(s.substr(eq + 1), where);
  }
  return root;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

const Config::Value& Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) fail("config " + origin_ + ": missing key '" + key + "'");
  return it->second;
}

double Config::number(const std::string& key) const {
  const Value& v = get(key);
  if (const double* d = std::get_if<double>(&v)) return *d;
  fail("config " + origin_ + ": key '" + key + "' is not a number");
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

bool Config::boolean_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Value& v = get(key);
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  fail("config " + origin_ + ": key '" + key + "' is not a boolean");
}

std::string Config::string(const std::string& key) const {
  const Value& v = get(key);
  if (const std::string* s = std::get_if<std::string>(&v)) return *s;
  fail("config " + origin_ + ": key '" + key + "' is not a string");
}

std::string Config::string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

std::vector<double> Config::numbers(const std::string& key) const {
  const Value& v = get(key);
  if (const auto* a = std::get_if<std::vector<double>>(&v)) return *a;
  if (const double* d = std::get_if<double>(&v)) return {*d};
  fail("config " + origin_ + ": key '" + key + "' is not a number array");
}

std::vector<std::string> Config::strings(const std::string& key) const {
  const Value& v = get(key);
  if (const auto* a = std::get_if<std::vector<std::string>>(&v)) return *a;
  if (const std::string* s = std::get_if<std::string>(&v)) return {*s};
  fail("config " + origin_ + ": key '" + key + "' is not a string array");
}

std::vector<std::string> Config::subtables(const std::string& prefix) const {
  std::vector<std::string> out;
  std::string p = prefix + ".";
  for (const auto& [key, value] : values_) {
    if (key.rfind(p, 0) != 0) continue;
    std::string rest = key.substr(p.size());
    size_t dot = rest.find('.');
    if (dot == std::string::npos) continue;
    std::string name = rest.substr(0, dot);
    if (out.empty() || out.back() != name) {
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  }
  return out;
}

const std::vector<Config>& Config::table_array(const std::string& name) const {
  auto it = arrays_.find(name);
  return it == arrays_.end() ? kEmptyArray : it->second;
}

}  // namespace polydem
