#include "kr/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kr/errors.hpp"

namespace kr {

namespace {

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* want) {
  fail_config("config key '" + key + "': cannot parse '" + value + "' as " +
              want);
}

double parse_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    bad_value(key, value, "a real number");
  }
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    bad_value(key, value, "an integer");
  }
  return v;
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail_io("cannot read config file: " + path);
  return from_string(ss.str(), path);
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text,
                                           const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::stringstream ss(text);
  std::string line;
  long lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail_config(origin + ":" + std::to_string(lineno) +
                  ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      fail_config(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    if (!cfg.entries_.emplace(key, value).second) {
      fail_config(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                  key + "'");
    }
  }
  return cfg;
}

const std::string* KeyValueConfig::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  consumed_.insert(key);
  return &it->second;
}

bool KeyValueConfig::has(const std::string& key) const {
  return find(key) != nullptr;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
  const std::string* v = find(key);
  return v ? parse_double(key, *v) : fallback;
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
  const std::string* v = find(key);
  return v ? parse_long(key, *v) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  errno = 0;
  char* end = nullptr;
  const unsigned long long val = std::strtoull(v->c_str(), &end, 10);
  if (end == v->c_str() || *end != '\0' || errno == ERANGE ||
      v->find('-') != std::string::npos) {
    bad_value(key, *v, "an unsigned integer");
  }
  return static_cast<std::uint64_t>(val);
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  bad_value(key, *v, "a boolean (true/false)");
}

std::vector<double> KeyValueConfig::get_double_list(
    const std::string& key) const {
  const std::string* v = find(key);
  std::vector<double> out;
  if (!v) return out;
  for (const std::string& item : split_commas(*v)) {
    if (item.empty()) bad_value(key, *v, "a comma-separated number list");
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
  const std::string* v = find(key);
  std::vector<int> out;
  if (!v) return out;
  for (const std::string& item : split_commas(*v)) {
    if (item.empty()) bad_value(key, *v, "a comma-separated integer list");
    out.push_back(static_cast<int>(parse_long(key, item)));
  }
  return out;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void KeyValueConfig::require_all_consumed() const {
  std::string unknown;
  for (const auto& [key, value] : entries_) {
    if (consumed_.count(key) == 0) {
      if (!unknown.empty()) unknown += ", ";
      unknown += key;
    }
  }
  if (!unknown.empty()) {
    fail_config(origin_ + ": unrecognized keys: " + unknown);
  }
}

}  // namespace kr
