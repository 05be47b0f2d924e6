// Experiment harness: builds a run from a flat key-value config, executes
// it deterministically, persists the trajectory trace, and turns traces
// back into smoothness fits and rate predictions.
//
// Exit-code contract used by the CLI: input problems (bad config, unknown
// keys, missing or malformed files) raise std::invalid_argument; runtime
// failures (non-finite loss or gradients, solver non-convergence) raise
// std::runtime_error.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gluon/objective.hpp"
#include "gluon/optimizer.hpp"
#include "gluon/smoothness.hpp"
#include "gluon/trace.hpp"

namespace gluon {

struct RunConfig {
  Objective objective;
  std::vector<ParamGroup> groups;  // initial parameters, norms, schedules
  MomentumRule momentum = NoMomentum{};
  bool stochastic = false;
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::optional<std::string> dump_params_path;
  SpectralBackend backend = SpectralBackend::Exact;
  NewtonSchulzOptions ns;
};

// Parses and validates a config file; every unknown key is an error.
RunConfig load_run_config(const std::string& path);

struct RunResult {
  TrajectoryTrace trace;
  double final_f = 0.0;
  std::vector<Matrix> final_params;
};

// Runs the configured optimization, writing the trace (and the optional
// parameter dump) before returning. The config is left untouched, so a
// second call replays the identical run.
RunResult run(const RunConfig& config);

struct GroupFit {
  std::string id;
  std::string error;  // nonempty when this group could not be fitted
  SmoothnessFit fit;
  std::int64_t skipped = 0;
  double last_g_dual = 0.0;
  double suggested_stepsize = 0.0;
  bool suggestion_defined = true;
};

struct FitReport {
  std::string trace_path;
  double lambda = 1.0;
  double eps = 0.0;
  double sigma = 0.0;
  std::int64_t rows = 0;
  std::int64_t iterations = 0;
  std::vector<GroupFit> groups;
  double delta0_proxy = 0.0;  // f at the first row minus min f in the trace
  double sum_l0 = 0.0;
  double max_l1 = 0.0;
  std::optional<std::int64_t> det_plain;
  std::string det_plain_note;
  std::optional<std::int64_t> det_weighted;
  std::string det_weighted_note;
  std::optional<double> stoch_bound_value;
  std::string stoch_bound_note;
};

// Fits every group in the trace. Groups that cannot be fitted (for
// instance a degenerate trajectory that never moved) carry the error in
// their entry instead of aborting the whole report.
FitReport estimate_trace(const std::string& trace_path, double lambda,
                         double eps, double sigma);

bool report_has_errors(const FitReport& report);

// Stable key = value rendering of the report.
std::string format_report(const FitReport& report);

}  // namespace gluon
