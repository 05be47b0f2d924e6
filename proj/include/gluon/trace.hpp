// Trajectory traces: one row per (iteration, group) describing the step
// taken at iteration k and the gradient observed at the next iterate.
//
// CSV layout (LF line endings, header required, 17 significant digits so
// doubles round-trip exactly):
//   k,group_id,f_value,g_dual_next,delta_g_dual,delta_x_norm,radius_used
// with
//   f_value      f(X_k) before the step
//   g_dual_next  |g_{k+1}|_dual at the post-step iterate
//   delta_g_dual |g_{k+1} - g_k|_dual
//   delta_x_norm |X_{k+1} - X_k| in the group's primal norm
//   radius_used  the ball radius of the step at k

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gluon {

struct TraceRow {
  std::int64_t k = 0;
  std::string group_id;
  double f_value = 0.0;
  double g_dual_next = 0.0;
  double delta_g_dual = 0.0;
  double delta_x_norm = 0.0;
  double radius_used = 0.0;
};

struct TrajectoryTrace {
  std::vector<TraceRow> rows;
};

// Serializes with "%.17g" per floating field; byte-stable for equal data.
std::string to_csv(const TrajectoryTrace& trace);
void write_csv(const TrajectoryTrace& trace, const std::string& path);

// Strict parser: exact header, 7 fields per row, numeric fields must
// parse completely. Throws std::invalid_argument on malformed input.
TrajectoryTrace read_csv(const std::string& path);

// Distinct group ids in first-appearance order.
std::vector<std::string> trace_group_ids(const TrajectoryTrace& trace);

}  // namespace gluon
