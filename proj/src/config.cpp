#include "gluon/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gluon {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(',', start);
    const std::string piece =
        pos == std::string::npos ? text.substr(start)
                                 : text.substr(start, pos - start);
    out.push_back(trim(piece));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double_strict(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw std::invalid_argument(what + ": cannot parse number '" + text + "'");
  return v;
}

std::int64_t parse_int_strict(const std::string& text,
                              const std::string& what) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw std::invalid_argument(what + ": cannot parse integer '" + text +
                                "'");
  return v;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str(), path);
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text,
                                          const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::size_t start = 0;
  std::int64_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": empty key");
    if (cfg.find(key))
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": duplicate key '" + key + "'");
    cfg.entries_.push_back(Entry{key, value, false});
  }
  return cfg;
}

KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) {
  for (Entry& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

const KeyValueConfig::Entry* KeyValueConfig::find(
    const std::string& key) const {
  for (const Entry& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

bool KeyValueConfig::has(const std::string& key) const {
  return find(key) != nullptr;
}

std::string KeyValueConfig::require(const std::string& key) {
  Entry* e = find(key);
  if (!e)
    throw std::invalid_argument(origin_ + ": missing required key '" + key +
                                "'");
  e->consumed = true;
  return e->value;
}

std::string KeyValueConfig::get(const std::string& key,
                                const std::string& fallback) {
  Entry* e = find(key);
  if (!e) return fallback;
  e->consumed = true;
  return e->value;
}

std::optional<std::string> KeyValueConfig::take(const std::string& key) {
  Entry* e = find(key);
  if (!e) return std::nullopt;
  e->consumed = true;
  return e->value;
}

double KeyValueConfig::require_double(const std::string& key) {
  return parse_double_strict(require(key), origin_ + ": key '" + key + "'");
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
  Entry* e = find(key);
  if (!e) return fallback;
  e->consumed = true;
  return parse_double_strict(e->value, origin_ + ": key '" + key + "'");
}

std::int64_t KeyValueConfig::require_int(const std::string& key) {
  return parse_int_strict(require(key), origin_ + ": key '" + key + "'");
}

std::int64_t KeyValueConfig::get_int(const std::string& key,
                                     std::int64_t fallback) {
  Entry* e = find(key);
  if (!e) return fallback;
  e->consumed = true;
  return parse_int_strict(e->value, origin_ + ": key '" + key + "'");
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
  Entry* e = find(key);
  if (!e) return fallback;
  e->consumed = true;
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  throw std::invalid_argument(origin_ + ": key '" + key +
                              "' must be true or false");
}

std::vector<std::string> KeyValueConfig::require_list(const std::string& key) {
  return split_list(require(key));
}

std::vector<double> KeyValueConfig::require_double_list(
    const std::string& key) {
  const std::vector<std::string> parts = require_list(key);
  std::vector<double> out;
  out.reserve(parts.size());
  for (const std::string& p : parts)
    out.push_back(parse_double_strict(p, origin_ + ": key '" + key + "'"));
  return out;
}

void KeyValueConfig::finish() const {
  std::string unknown;
  for (const Entry& e : entries_)
    if (!e.consumed) {
      if (!unknown.empty()) unknown += ", ";
      unknown += "'" + e.key + "'";
    }
  if (!unknown.empty())
    throw std::invalid_argument(origin_ + ": unknown keys: " + unknown);
}

}  // namespace gluon
