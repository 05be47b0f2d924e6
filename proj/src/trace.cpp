#include "gluon/trace.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gluon {

namespace {

constexpr char kHeader[] =
    "k,group_id,f_value,g_dual_next,delta_g_dual,delta_x_norm,radius_used";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& field, std::int64_t line) {
  double v = 0.0;
  const char* b = field.data();
  const char* e = b + field.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw std::invalid_argument("trace: bad numeric field '" + field +
                                "' on line " + std::to_string(line));
  return v;
}

std::int64_t parse_int(const std::string& field, std::int64_t line) {
  std::int64_t v = 0;
  const char* b = field.data();
  const char* e = b + field.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw std::invalid_argument("trace: bad integer field '" + field +
                                "' on line " + std::to_string(line));
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string to_csv(const TrajectoryTrace& trace) {
  std::string out(kHeader);
  out.push_back('\n');
  for (const TraceRow& r : trace.rows) {
    out += std::to_string(r.k);
    out.push_back(',');
    out += r.group_id;
    out.push_back(',');
    out += fmt17(r.f_value);
    out.push_back(',');
    out += fmt17(r.g_dual_next);
    out.push_back(',');
    out += fmt17(r.delta_g_dual);
    out.push_back(',');
    out += fmt17(r.delta_x_norm);
    out.push_back(',');
    out += fmt17(r.radius_used);
    out.push_back('\n');
  }
  return out;
}

void write_csv(const TrajectoryTrace& trace, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("trace: cannot open '" + path +
                                      "' for writing");
  const std::string body = to_csv(trace);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw std::runtime_error("trace: write to '" + path + "' failed");
}

TrajectoryTrace read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("trace: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string body = ss.str();

  TrajectoryTrace trace;
  std::int64_t line_no = 0;
  std::size_t start = 0;
  bool saw_header = false;
  while (start < body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    std::string line = body.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kHeader)
        throw std::invalid_argument("trace: bad header in '" + path + "'");
      saw_header = true;
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 7)
      throw std::invalid_argument("trace: expected 7 fields on line " +
                                  std::to_string(line_no));
    TraceRow r;
    r.k = parse_int(fields[0], line_no);
    r.group_id = fields[1];
    if (r.group_id.empty())
      throw std::invalid_argument("trace: empty group id on line " +
                                  std::to_string(line_no));
    r.f_value = parse_double(fields[2], line_no);
    r.g_dual_next = parse_double(fields[3], line_no);
    r.delta_g_dual = parse_double(fields[4], line_no);
    r.delta_x_norm = parse_double(fields[5], line_no);
    r.radius_used = parse_double(fields[6], line_no);
    trace.rows.push_back(std::move(r));
  }
  if (!saw_header)
    throw std::invalid_argument("trace: '" + path + "' is empty");
  return trace;
}

std::vector<std::string> trace_group_ids(const TrajectoryTrace& trace) {
  std::vector<std::string> ids;
  for (const TraceRow& r : trace.rows) {
    bool seen = false;
    for (const std::string& id : ids)
      if (id == r.group_id) {
        seen = true;
        break;
      }
    if (!seen) ids.push_back(r.group_id);
  }
  return ids;
}

}  // namespace gluon
