#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kr {

// Flat key = value configuration: one pair per line, '#' starts a comment,
// blank lines ignored, whitespace around keys and values trimmed. Duplicate
// keys are rejected so files stay diffable. Getters record which keys were
// consumed; require_all_consumed() rejects unrecognized keys.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text,
                                    const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);  // override
  void require_all_consumed() const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> consumed_;

  const std::string* find(const std::string& key) const;
};

}  // namespace kr
