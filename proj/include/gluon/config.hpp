// Flat key = value configuration files. Blank lines and lines starting
// with '#' are ignored; keys and values are whitespace-trimmed; duplicate
// keys are errors. Every key must be consumed by the reader, and
// finish() reports any leftovers as hard errors, so unknown or
// misspelled keys never pass silently.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gluon {

class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text,
                                   const std::string& origin);

  bool has(const std::string& key) const;

  // Typed getters; require() throws when the key is missing, get()
  // returns the fallback. All mark the key consumed.
  std::string require(const std::string& key);
  std::string get(const std::string& key, const std::string& fallback);
  double require_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  std::int64_t require_int(const std::string& key);
  std::int64_t get_int(const std::string& key, std::int64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::optional<std::string> take(const std::string& key);

  // Comma-separated lists.
  std::vector<std::string> require_list(const std::string& key);
  std::vector<double> require_double_list(const std::string& key);

  // Throws listing every key that was never consumed.
  void finish() const;

 private:
  struct Entry {
    std::string key;
    std::string value;
    bool consumed = false;
  };
  Entry* find(const std::string& key);
  const Entry* find(const std::string& key) const;

  std::string origin_;
  std::vector<Entry> entries_;
};

std::vector<std::string> split_list(const std::string& text);
double parse_double_strict(const std::string& text, const std::string& what);
std::int64_t parse_int_strict(const std::string& text,
                              const std::string& what);

}  // namespace gluon
