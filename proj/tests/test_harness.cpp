// End-to-end tests for the experiment harness: config loading, run
// execution and trace persistence, trace-to-fit estimation, and the CLI
// binary (exit codes and output) driven as a subprocess.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "gluon/harness.hpp"
#include "gluon/matrix.hpp"
#include "gluon/norms.hpp"
#include "gluon/problems.hpp"
#include "gluon/rng.hpp"
#include "gluon/schedule.hpp"
#include "gluon/trace.hpp"

namespace {

using gluon::Matrix;

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path("gluon_test_harness_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) {
  return std::ifstream(path).good();
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

bool same_values(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::int64_t i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

// Single-group quadratic with a fixed random anchor; the declared
// constants control the adaptive radius.
gluon::RunConfig quadratic_config(gluon::StepsizeSchedule schedule,
                                  std::int64_t iterations) {
  std::mt19937_64 gen(99);
  std::vector<Matrix> anchors;
  anchors.push_back(gluon::random_gaussian(2, 3, gen, 1.0));
  gluon::RunConfig rc;
  rc.objective = gluon::layered_quadratic({2.5}, std::move(anchors));
  gluon::NormSpec norm{gluon::NormFamily::ScaledEuclidean, 1.0};
  rc.groups.push_back(gluon::ParamGroup{rc.objective.groups[0].id,
                                        Matrix(2, 3), norm,
                                        std::move(schedule)});
  rc.iterations = iterations;
  return rc;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr, interleaved
};

CliResult run_cli(const std::string& args, const std::string& tag) {
  const std::string out_path = "gluon_test_harness_cli_" + tag + ".out";
  const std::string cmd =
      std::string(GLUON_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  CliResult r;
  r.exit_code = WEXITSTATUS(status);
  r.output = read_text(out_path);
  std::remove(out_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("run descends a quadratic and records one row per group and step") {
  gluon::RunConfig rc =
      quadratic_config(gluon::AdaptiveDeterministicStep{25.0, 0.5}, 30);
  gluon::RunResult res = gluon::run(rc);

  REQUIRE(res.trace.rows.size() == 30);
  std::vector<Matrix> zeros;
  zeros.emplace_back(2, 3);
  CHECK(res.trace.rows[0].f_value == rc.objective.value(zeros));
  for (std::size_t k = 0; k < res.trace.rows.size(); ++k) {
    const gluon::TraceRow& row = res.trace.rows[k];
    CHECK(row.k == static_cast<std::int64_t>(k));
    CHECK(row.group_id == "g0");
    CHECK(row.radius_used > 0.0);
    if (k > 0) CHECK(row.f_value < res.trace.rows[k - 1].f_value);
  }
  CHECK(res.final_f < res.trace.rows.back().f_value);
  CHECK(res.final_f == rc.objective.value(res.final_params));
  REQUIRE(res.final_params.size() == 1);
  CHECK(res.final_params[0].rows() == 2);
  CHECK(res.final_params[0].cols() == 3);
}

TEST_CASE("recorded radius matches the schedule applied to the trace") {
  std::mt19937_64 gen(99);
  Matrix anchor = gluon::random_gaussian(2, 3, gen, 1.0);

  SUBCASE("adaptive radius chains through the recorded dual norms") {
    gluon::StepsizeSchedule sched = gluon::AdaptiveDeterministicStep{25.0, 0.5};
    gluon::RunConfig rc = quadratic_config(sched, 20);
    gluon::RunResult res = gluon::run(rc);
    std::vector<Matrix> zeros;
    zeros.emplace_back(2, 3);
    double g0 = gluon::dual_norm(rc.groups[0].norm,
                                 rc.objective.grad(zeros)[0]);
    CHECK(res.trace.rows[0].radius_used == gluon::radius_at(sched, 0, g0));
    for (std::size_t k = 1; k < res.trace.rows.size(); ++k) {
      CHECK(res.trace.rows[k].radius_used ==
            gluon::radius_at(sched, static_cast<std::int64_t>(k),
                             res.trace.rows[k - 1].g_dual_next));
    }
  }

  SUBCASE("constant radius") {
    gluon::RunConfig rc = quadratic_config(gluon::ConstantStep{0.05}, 10);
    gluon::RunResult res = gluon::run(rc);
    for (const gluon::TraceRow& row : res.trace.rows)
      CHECK(row.radius_used == 0.05);
  }

  SUBCASE("polynomial decay radius") {
    gluon::StepsizeSchedule sched = gluon::PolynomialDecayStep{0.1};
    gluon::RunConfig rc = quadratic_config(sched, 10);
    gluon::RunResult res = gluon::run(rc);
    for (std::size_t k = 0; k < res.trace.rows.size(); ++k) {
      CHECK(res.trace.rows[k].radius_used ==
            gluon::radius_at(sched, static_cast<std::int64_t>(k), 123.0));
    }
  }
}

TEST_CASE("run writes the trace file and a replay is byte-identical") {
  TempFile trace("replay_trace.csv");
  gluon::RunConfig rc =
      quadratic_config(gluon::AdaptiveDeterministicStep{25.0, 0.0}, 8);
  rc.trace_path = trace.path;

  gluon::RunResult first = gluon::run(rc);
  std::string bytes_first = read_text(trace.path);
  gluon::RunResult second = gluon::run(rc);
  std::string bytes_second = read_text(trace.path);

  CHECK(bytes_first == bytes_second);
  CHECK(first.final_f == second.final_f);
  CHECK(same_values(first.final_params[0], second.final_params[0]));

  gluon::TrajectoryTrace loaded = gluon::read_csv(trace.path);
  REQUIRE(loaded.rows.size() == first.trace.rows.size());
  for (std::size_t i = 0; i < loaded.rows.size(); ++i) {
    CHECK(loaded.rows[i].k == first.trace.rows[i].k);
    CHECK(loaded.rows[i].group_id == first.trace.rows[i].group_id);
    CHECK(loaded.rows[i].f_value == first.trace.rows[i].f_value);
    CHECK(loaded.rows[i].g_dual_next == first.trace.rows[i].g_dual_next);
    CHECK(loaded.rows[i].delta_g_dual == first.trace.rows[i].delta_g_dual);
    CHECK(loaded.rows[i].delta_x_norm == first.trace.rows[i].delta_x_norm);
    CHECK(loaded.rows[i].radius_used == first.trace.rows[i].radius_used);
  }
}

TEST_CASE("run dumps final parameters in the documented block format") {
  TempFile dump("params.txt");
  gluon::RunConfig rc = quadratic_config(gluon::ConstantStep{0.1}, 3);
  rc.dump_params_path = dump.path;
  gluon::RunResult res = gluon::run(rc);

  std::istringstream in(read_text(dump.path));
  std::string word;
  in >> word;
  CHECK(word == "group");
  in >> word;
  CHECK(word == "g0");
  std::int64_t rows = 0, cols = 0;
  in >> rows >> cols;
  CHECK(rows == 2);
  CHECK(cols == 3);
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) {
      double v = 0.0;
      REQUIRE((in >> v));
      CHECK(v == res.final_params[0](r, c));  // %.17g round-trips exactly
    }
  }
  in >> word;
  CHECK(in.eof());
}

TEST_CASE("run validates its inputs") {
  SUBCASE("group count mismatch") {
    gluon::RunConfig rc = quadratic_config(gluon::ConstantStep{0.1}, 3);
    rc.groups.clear();
    CHECK_THROWS_WITH_AS(gluon::run(rc), doctest::Contains("group counts"),
                         std::invalid_argument);
  }
  SUBCASE("shape mismatch") {
    gluon::RunConfig rc = quadratic_config(gluon::ConstantStep{0.1}, 3);
    rc.groups[0].x = Matrix(3, 3);
    CHECK_THROWS_WITH_AS(gluon::run(rc),
                         doctest::Contains("shape does not match"),
                         std::invalid_argument);
  }
  SUBCASE("iterations below one") {
    gluon::RunConfig rc = quadratic_config(gluon::ConstantStep{0.1}, 3);
    rc.iterations = 0;
    CHECK_THROWS_WITH_AS(gluon::run(rc),
                         doctest::Contains("iterations must be >= 1"),
                         std::invalid_argument);
  }
  SUBCASE("stochastic mode needs a stochastic gradient") {
    gluon::RunConfig rc = quadratic_config(gluon::ConstantStep{0.1}, 3);
    rc.stochastic = true;
    CHECK_THROWS_WITH_AS(gluon::run(rc),
                         doctest::Contains("no stochastic gradient"),
                         std::invalid_argument);
  }
}

TEST_CASE("load_run_config builds the configured run end to end") {
  TempFile cfg("load.cfg");
  TempFile trace("load_trace.csv");
  write_text(cfg.path,
             "# two quadratic groups under differently scaled norms\n"
             "problem = layered_quadratic\n"
             "shapes = 2x3, 4x1\n"
             "c = 2.5, 1.5\n"
             "anchor_seed = 7\n"
             "anchor_scale = 2.0\n"
             "preset = custom\n"
             "norms = euclidean:1, euclidean:0.5\n"
             "schedule = adaptive_det\n"
             "l0 = 25, 24\n"
             "l1 = 0\n"
             "momentum = constant:0.9\n"
             "iterations = 12\n"
             "seed = 3\n"
             "trace = " +
                 trace.path + "\n");

  gluon::RunConfig rc = gluon::load_run_config(cfg.path);
  REQUIRE(rc.groups.size() == 2);
  CHECK(rc.groups[0].id == "g0");
  CHECK(rc.groups[1].id == "g1");
  CHECK(rc.groups[0].x.rows() == 2);
  CHECK(rc.groups[0].x.cols() == 3);
  CHECK(rc.groups[1].x.rows() == 4);
  CHECK(rc.groups[1].x.cols() == 1);
  CHECK(rc.groups[1].norm.family == gluon::NormFamily::ScaledEuclidean);
  CHECK(rc.groups[1].norm.scale == 0.5);
  REQUIRE(std::holds_alternative<gluon::AdaptiveDeterministicStep>(
      rc.groups[1].schedule));
  CHECK(std::get<gluon::AdaptiveDeterministicStep>(rc.groups[1].schedule).l0 ==
        24.0);
  REQUIRE(std::holds_alternative<gluon::ConstantBeta>(rc.momentum));
  CHECK(std::get<gluon::ConstantBeta>(rc.momentum).beta == 0.9);
  CHECK(rc.iterations == 12);
  CHECK(rc.seed == 3);
  CHECK(!rc.stochastic);
  CHECK(rc.backend == gluon::SpectralBackend::Exact);
  CHECK(rc.trace_path == trace.path);

  gluon::run(rc);
  gluon::TrajectoryTrace loaded = gluon::read_csv(trace.path);
  CHECK(loaded.rows.size() == 24);
  auto ids = gluon::trace_group_ids(loaded);
  REQUIRE(ids.size() == 2);
  CHECK(ids[0] == "g0");
  CHECK(ids[1] == "g1");
}

TEST_CASE("load_run_config reads presets, backend and init settings") {
  TempFile cfg("opts.cfg");
  write_text(cfg.path,
             "problem = layered_quadratic\n"
             "shapes = 3x3\n"
             "c = 1\n"
             "anchor_seed = 1\n"
             "preset = muon\n"
             "schedule = constant:0.1\n"
             "iterations = 2\n"
             "backend = newton_schulz\n"
             "ns_iterations = 7\n"
             "init = gaussian\n"
             "init_scale = 0.5\n"
             "init_seed = 4\n"
             "trace = \n");
  gluon::RunConfig rc = gluon::load_run_config(cfg.path);
  CHECK(rc.groups[0].norm.family == gluon::NormFamily::ScaledSpectral);
  CHECK(rc.groups[0].norm.scale == 1.0);
  CHECK(rc.backend == gluon::SpectralBackend::NewtonSchulz);
  CHECK(rc.ns.iterations == 7);
  double sum = 0.0;
  for (std::int64_t i = 0; i < rc.groups[0].x.size(); ++i)
    sum += std::abs(rc.groups[0].x.data()[i]);
  CHECK(sum > 0.0);  // gaussian init, not zeros
  CHECK(rc.trace_path.empty());
  gluon::RunResult res = gluon::run(rc);  // empty trace path: nothing written
  CHECK(res.trace.rows.size() == 2);
}

TEST_CASE("load_run_config rejects malformed configs") {
  TempFile cfg("bad.cfg");
  auto base = [&](const std::string& extra) {
    return "problem = layered_quadratic\n"
           "shapes = 2x2\n"
           "c = 1\n"
           "anchor_seed = 1\n"
           "preset = custom\n"
           "norms = euclidean:1\n"
           "schedule = constant:0.1\n"
           "iterations = 3\n"
           "trace = \n" +
           extra;
  };

  SUBCASE("unknown key") {
    write_text(cfg.path, base("typo = 1\n"));
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("unknown keys: 'typo'"),
                         std::invalid_argument);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(gluon::load_run_config("gluon_test_harness_no_such.cfg"),
                    std::invalid_argument);
  }
  SUBCASE("unknown problem") {
    write_text(cfg.path, "problem = rosenbrock\niterations = 1\ntrace = \n");
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("unknown problem"),
                         std::invalid_argument);
  }
  SUBCASE("bad shape token") {
    write_text(cfg.path,
               "problem = layered_quadratic\nshapes = 2y3\nc = 1\n"
               "preset = muon\nschedule = constant:0.1\niterations = 1\n"
               "trace = \n");
    CHECK_THROWS_AS(gluon::load_run_config(cfg.path), std::invalid_argument);
  }
  SUBCASE("norms count mismatch") {
    write_text(cfg.path,
               "problem = layered_quadratic\nshapes = 2x2, 3x3\nc = 1\n"
               "anchor_seed = 1\npreset = custom\nnorms = euclidean:1\n"
               "schedule = constant:0.1\niterations = 1\ntrace = \n");
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("norms must list 2"),
                         std::invalid_argument);
  }
  SUBCASE("roles count mismatch") {
    write_text(cfg.path,
               "problem = layered_quadratic\nshapes = 2x2, 3x3\nc = 1\n"
               "anchor_seed = 1\npreset = unscion_llm\nroles = hidden\n"
               "schedule = constant:0.1\niterations = 1\ntrace = \n");
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("roles must list 2"),
                         std::invalid_argument);
  }
  SUBCASE("adaptive schedule with an inline value") {
    std::string text = base("");
    text.replace(text.find("constant:0.1"), 12, "adaptive_det:0.5");
    write_text(cfg.path, text);
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("takes its constants"),
                         std::invalid_argument);
  }
  SUBCASE("unknown schedule") {
    std::string text = base("");
    text.replace(text.find("constant:0.1"), 12, "warmup");
    write_text(cfg.path, text);
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("unknown schedule"),
                         std::invalid_argument);
  }
  SUBCASE("unknown momentum") {
    write_text(cfg.path, base("momentum = nesterov\n"));
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("unknown momentum"),
                         std::invalid_argument);
  }
  SUBCASE("unknown init") {
    write_text(cfg.path, base("init = uniform\n"));
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("unknown init"),
                         std::invalid_argument);
  }
  SUBCASE("unknown backend") {
    write_text(cfg.path, base("backend = qr\n"));
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("unknown backend"),
                         std::invalid_argument);
  }
  SUBCASE("iterations below one") {
    std::string text = base("");
    text.replace(text.find("iterations = 3"), 14, "iterations = 0");
    write_text(cfg.path, text);
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("iterations must be >= 1"),
                         std::invalid_argument);
  }
  SUBCASE("sigma_target without stochastic mode") {
    write_text(cfg.path, base("sigma_target = 0.5\n"));
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("sigma_target requires stochastic"),
                         std::invalid_argument);
  }
  SUBCASE("stochastic mode on a deterministic-only problem") {
    write_text(cfg.path, base("stochastic = true\n"));
    CHECK_THROWS_WITH_AS(gluon::load_run_config(cfg.path),
                         doctest::Contains("no stochastic gradient"),
                         std::invalid_argument);
  }
}

TEST_CASE("stochastic runs replay bitwise under the same seed") {
  TempFile cfg("stoch.cfg");
  TempFile trace("stoch_trace.csv");
  auto config_text = [&](int seed) {
    return "problem = tiny_mlp\n"
           "mlp_in = 3\n"
           "mlp_hidden = 4\n"
           "mlp_out = 2\n"
           "mlp_samples = 16\n"
           "mlp_batch = 4\n"
           "mlp_data_seed = 9\n"
           "preset = muon\n"
           "schedule = poly_decay:0.1\n"
           "momentum = sqrt_decay\n"
           "stochastic = true\n"
           "iterations = 6\n"
           "seed = " +
           std::to_string(seed) +
           "\n"
           "init = gaussian\n"
           "init_scale = 0.5\n"
           "init_seed = 2\n"
           "trace = " +
           trace.path + "\n";
  };

  write_text(cfg.path, config_text(11));
  gluon::RunConfig rc = gluon::load_run_config(cfg.path);
  CHECK(rc.stochastic);
  gluon::run(rc);
  std::string bytes_a = read_text(trace.path);
  gluon::run(rc);
  std::string bytes_b = read_text(trace.path);
  CHECK(bytes_a == bytes_b);

  gluon::TrajectoryTrace loaded = gluon::read_csv(trace.path);
  CHECK(loaded.rows.size() == 24);  // 6 iterations x 4 groups

  write_text(cfg.path, config_text(12));
  gluon::run(gluon::load_run_config(cfg.path));
  std::string bytes_c = read_text(trace.path);
  CHECK(bytes_a != bytes_c);
}

TEST_CASE("estimate_trace recovers the quadratic constants from a run") {
  TempFile cfg("est.cfg");
  TempFile trace("est_trace.csv");
  write_text(cfg.path,
             "problem = layered_quadratic\n"
             "shapes = 2x3, 4x1\n"
             "c = 2.5, 1.5\n"
             "anchor_seed = 7\n"
             "anchor_scale = 2.0\n"
             "preset = custom\n"
             "norms = euclidean:1, euclidean:0.5\n"
             "schedule = adaptive_det\n"
             "l0 = 25, 24\n"
             "l1 = 0\n"
             "iterations = 12\n"
             "trace = " +
                 trace.path + "\n");
  gluon::run(gluon::load_run_config(cfg.path));

  gluon::FitReport rep = gluon::estimate_trace(trace.path, 1.0, 1e-3, 0.0);
  CHECK(!gluon::report_has_errors(rep));
  CHECK(rep.rows == 24);
  CHECK(rep.iterations == 12);
  CHECK(rep.lambda == 1.0);
  CHECK(rep.eps == 1e-3);
  REQUIRE(rep.groups.size() == 2);

  // Under a norm scaled by alpha the quadratic's ratio is c / alpha^2.
  CHECK(rep.groups[0].id == "g0");
  CHECK(rep.groups[0].error.empty());
  CHECK(rep.groups[0].fit.l0 == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(rep.groups[0].fit.l1 == 0.0);
  CHECK(rep.groups[1].id == "g1");
  CHECK(rep.groups[1].fit.l0 == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(rep.groups[1].fit.l1 == 0.0);
  CHECK(rep.groups[0].skipped == 0);
  CHECK(rep.groups[0].suggestion_defined);
  CHECK(rep.groups[0].suggested_stepsize > 0.0);

  CHECK(rep.delta0_proxy > 0.0);
  CHECK(rep.sum_l0 == doctest::Approx(8.5).epsilon(1e-9));
  CHECK(rep.max_l1 == 0.0);
  CHECK(rep.det_plain.has_value());
  CHECK(*rep.det_plain >= 1);
  CHECK(!rep.det_weighted.has_value());  // needs every l1 > 0
  CHECK(rep.stoch_bound_value.has_value());  // l1 = 0 branch uses the radii
  CHECK(*rep.stoch_bound_value > 0.0);

  std::string text = gluon::format_report(rep);
  CHECK(contains(text, "fit_report_version = 1"));
  CHECK(contains(text, "groups = g0,g1"));
  CHECK(contains(text, "group.g0.l0 = 2.5"));
  CHECK(contains(text, "group.g1.l1 = 0\n"));
  CHECK(contains(text, "theory.det_iterations_plain = "));
  CHECK(contains(text, "theory.det_iterations_weighted = unavailable ("));
  CHECK(contains(text, "theory.stoch_bound_iterations = 12"));

  std::string text_again =
      gluon::format_report(gluon::estimate_trace(trace.path, 1.0, 1e-3, 0.0));
  CHECK(text == text_again);
}

TEST_CASE("estimate_trace flags degenerate groups but fits the rest") {
  TempFile trace("degenerate.csv");
  gluon::TrajectoryTrace t;
  for (std::int64_t k = 0; k < 3; ++k) {
    gluon::TraceRow a;
    a.k = k;
    a.group_id = "a";
    a.f_value = 5.0 - static_cast<double>(k);
    a.g_dual_next = 1.0;
    a.delta_g_dual = 0.3;
    a.delta_x_norm = 0.0;  // the group never moves
    a.radius_used = 0.1;
    t.rows.push_back(a);
    gluon::TraceRow b;
    b.k = k;
    b.group_id = "b";
    b.f_value = 5.0 - static_cast<double>(k);
    b.g_dual_next = static_cast<double>(k + 1);
    b.delta_g_dual = 1.0;
    b.delta_x_norm = 0.5;
    b.radius_used = 0.25;
    t.rows.push_back(b);
  }
  gluon::write_csv(t, trace.path);

  gluon::FitReport rep = gluon::estimate_trace(trace.path, 1.0, 1e-2, 0.0);
  CHECK(gluon::report_has_errors(rep));
  REQUIRE(rep.groups.size() == 2);
  CHECK(rep.groups[0].id == "a");
  CHECK(contains(rep.groups[0].error, "degenerate trajectory"));
  CHECK(rep.groups[1].id == "b");
  CHECK(rep.groups[1].error.empty());
  CHECK(rep.groups[1].fit.l0 == 2.0);
  CHECK(rep.groups[1].fit.l1 == 0.0);
  CHECK(rep.delta0_proxy == 2.0);
  CHECK(!rep.det_plain.has_value());

  std::string text = gluon::format_report(rep);
  CHECK(contains(text, "group.a.error = "));
  CHECK(contains(text, "group.b.l0 = 2\n"));
  CHECK(contains(
      text,
      "theory.det_iterations_plain = unavailable (some groups could not be "
      "fitted)"));
}

TEST_CASE("estimate_trace validates its inputs") {
  TempFile trace("est_bad.csv");
  gluon::TrajectoryTrace t;
  gluon::TraceRow r;
  r.group_id = "a";
  r.delta_x_norm = 1.0;
  r.delta_g_dual = 1.0;
  r.g_dual_next = 1.0;
  t.rows.push_back(r);
  gluon::write_csv(t, trace.path);

  CHECK_THROWS_WITH_AS(gluon::estimate_trace(trace.path, -1.0, 1e-3, 0.0),
                       doctest::Contains("lambda must be >= 0"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(gluon::estimate_trace(trace.path, 1.0, 0.0, 0.0),
                       doctest::Contains("eps must be > 0"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(gluon::estimate_trace(trace.path, 1.0, 1e-3, -0.5),
                       doctest::Contains("sigma must be >= 0"),
                       std::invalid_argument);
  CHECK_THROWS_AS(
      gluon::estimate_trace("gluon_test_harness_no_such.csv", 1.0, 1e-3, 0.0),
      std::invalid_argument);
}

TEST_CASE("cli handles the run, estimate, rates and presets subcommands") {
  SUBCASE("presets listing") {
    CliResult r = run_cli("presets list", "presets");
    CHECK(r.exit_code == 0);
    for (const char* name :
         {"muon", "unscion_llm", "unscion_cnn", "normalized_gd", "sign_gd"})
      CHECK(contains(r.output, name));
  }

  SUBCASE("rates evaluation") {
    CliResult r = run_cli(
        "rates --p 1 --delta0 1 --l0 1 --l1 0 --eps 0.1", "rates");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "det_iterations_plain = 200\n"));
    CHECK(contains(r.output,
                   "stoch_bound = unavailable (pass --K to pick the horizon)"));
  }

  SUBCASE("help exits cleanly") {
    CliResult r = run_cli("--help", "help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "run"));
    CHECK(contains(r.output, "estimate"));
  }

  SUBCASE("unknown subcommand is an input error") {
    CliResult r = run_cli("frobnicate", "badcmd");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("run executes a config and estimate fits its trace") {
    TempFile cfg("cli_run.cfg");
    TempFile trace("cli_run_trace.csv");
    TempFile params("cli_params.txt");
    write_text(cfg.path,
               "problem = layered_quadratic\n"
               "shapes = 2x3, 4x1\n"
               "c = 2.5\n"
               "anchor_seed = 7\n"
               "preset = custom\n"
               "norms = euclidean:1, euclidean:1\n"
               "schedule = adaptive_det\n"
               "l0 = 25\n"
               "l1 = 0\n"
               "iterations = 12\n"
               "trace = " +
                   trace.path + "\n");
    CliResult r = run_cli(
        "run --config " + cfg.path + " --dump-params " + params.path, "run");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "final_f = "));
    CHECK(contains(r.output, "trace = " + trace.path));
    CHECK(contains(r.output, "params = " + params.path));
    REQUIRE(file_exists(trace.path));
    CHECK(contains(read_text(params.path), "group g0 2 3"));
    CHECK(gluon::read_csv(trace.path).rows.size() == 24);

    CliResult est = run_cli("estimate --trace " + trace.path, "est");
    CHECK(est.exit_code == 0);
    CHECK(contains(est.output, "group.g0.l0 = 2.5"));
    CHECK(contains(est.output, "theory.det_iterations_plain = "));
  }

  SUBCASE("config errors exit with code 2") {
    TempFile cfg("cli_bad.cfg");
    write_text(cfg.path,
               "problem = layered_quadratic\nshapes = 2x2\nc = 1\n"
               "preset = muon\nschedule = constant:0.1\niterations = 1\n"
               "trace = \ntypo = 1\n");
    CliResult r = run_cli("run --config " + cfg.path, "badcfg");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "unknown keys: 'typo'"));
  }

  SUBCASE("missing trace exits with code 2") {
    CliResult r =
        run_cli("estimate --trace gluon_test_harness_no_such.csv", "notrace");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "error:"));
  }

  SUBCASE("degenerate trace prints the report and exits with code 2") {
    TempFile trace("cli_degen.csv");
    gluon::TrajectoryTrace t;
    for (std::int64_t k = 0; k < 2; ++k) {
      gluon::TraceRow row;
      row.k = k;
      row.group_id = "a";
      row.f_value = 1.0;
      row.g_dual_next = 1.0;
      row.delta_g_dual = 0.0;
      row.delta_x_norm = 0.0;
      row.radius_used = 0.0;
      t.rows.push_back(row);
    }
    gluon::write_csv(t, trace.path);
    CliResult r = run_cli("estimate --trace " + trace.path, "degen");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "group.a.error = "));
    CHECK(contains(r.output, "error: some groups could not be fitted"));
  }

  SUBCASE("non-finite loss exits with code 1") {
    TempFile cfg("cli_blowup.cfg");
    TempFile trace("cli_blowup_trace.csv");
    write_text(cfg.path,
               "problem = layered_quadratic\n"
               "shapes = 2x2\n"
               "c = 2.5\n"
               "anchor_seed = 7\n"
               "preset = custom\n"
               "norms = euclidean:1\n"
               "schedule = constant:1e160\n"
               "iterations = 3\n"
               "trace = " +
                   trace.path + "\n");
    CliResult r = run_cli("run --config " + cfg.path, "blowup");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "non-finite loss"));
  }
}
