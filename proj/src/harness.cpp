#include "gluon/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gluon/config.hpp"
#include "gluon/problems.hpp"
#include "gluon/rng.hpp"
#include "gluon/theory.hpp"

namespace gluon {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Distinct per-iteration sample seeds from one run seed (splitmix64 mix).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::pair<std::int64_t, std::int64_t> parse_shape(const std::string& token) {
  auto cut = token.find('x');
  if (cut == std::string::npos || cut == 0 || cut + 1 >= token.size()) {
    throw std::invalid_argument("shape '" + token +
                                "' must look like ROWSxCOLS");
  }
  std::int64_t rows = parse_int_strict(token.substr(0, cut), "shape rows");
  std::int64_t cols = parse_int_strict(token.substr(cut + 1), "shape cols");
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("shape '" + token + "' must be positive");
  }
  return {rows, cols};
}

NormFamily parse_norm_family(const std::string& name) {
  if (name == "spectral") return NormFamily::ScaledSpectral;
  if (name == "max_entry") return NormFamily::ScaledMaxEntry;
  if (name == "euclidean") return NormFamily::ScaledEuclidean;
  throw std::invalid_argument(
      "unknown norm family '" + name +
      "' (expected spectral, max_entry or euclidean)");
}

NormSpec parse_norm_spec(const std::string& token) {
  auto cut = token.find(':');
  NormSpec spec;
  if (cut == std::string::npos) {
    spec.family = parse_norm_family(token);
    spec.scale = 1.0;
  } else {
    spec.family = parse_norm_family(token.substr(0, cut));
    spec.scale = parse_double_strict(token.substr(cut + 1), "norm scale");
  }
  if (!(spec.scale > 0.0)) {
    throw std::invalid_argument("norm scale must be > 0 in '" + token + "'");
  }
  return spec;
}

// Role tokens: hidden | head | bias | conv:C_IN:C_OUT:K.
GroupShape parse_role_token(const std::string& token, std::int64_t rows,
                            std::int64_t cols) {
  GroupShape shape;
  shape.rows = rows;
  shape.cols = cols;
  auto cut = token.find(':');
  std::string name = cut == std::string::npos ? token : token.substr(0, cut);
  shape.role = parse_group_role(name);
  if (shape.role == GroupRole::Conv) {
    if (cut == std::string::npos) {
      throw std::invalid_argument(
          "conv role needs channel sizes, e.g. conv:8:16:3");
    }
    std::vector<std::string> rest;
    std::string tail = token.substr(cut + 1);
    std::size_t start = 0;
    while (start <= tail.size()) {
      auto next = tail.find(':', start);
      if (next == std::string::npos) {
        rest.push_back(tail.substr(start));
        break;
      }
      rest.push_back(tail.substr(start, next - start));
      start = next + 1;
    }
    if (rest.size() != 3) {
      throw std::invalid_argument("conv role '" + token +
                                  "' must look like conv:C_IN:C_OUT:K");
    }
    shape.conv_c_in = parse_int_strict(rest[0], "conv c_in");
    shape.conv_c_out = parse_int_strict(rest[1], "conv c_out");
    shape.conv_k = parse_int_strict(rest[2], "conv kernel size");
  } else if (cut != std::string::npos) {
    throw std::invalid_argument("role '" + token +
                                "' takes no parameters");
  }
  return shape;
}

std::vector<double> broadcast_list(std::vector<double> values,
                                   std::size_t n, const std::string& key) {
  if (values.size() == 1 && n > 1) values.assign(n, values[0]);
  if (values.size() != n) {
    throw std::invalid_argument(key + " must list 1 or " +
                                std::to_string(n) + " values, got " +
                                std::to_string(values.size()));
  }
  return values;
}

Objective build_objective(KeyValueConfig& cfg, const std::string& problem) {
  if (problem == "layered_quadratic" || problem == "cosh_separable") {
    std::vector<std::pair<std::int64_t, std::int64_t>> shapes;
    for (const auto& token : cfg.require_list("shapes")) {
      shapes.push_back(parse_shape(token));
    }
    auto c = broadcast_list(cfg.require_double_list("c"), shapes.size(), "c");
    if (problem == "cosh_separable") {
      return cosh_separable(std::move(c), std::move(shapes));
    }
    std::vector<Matrix> anchors;
    anchors.reserve(shapes.size());
    if (cfg.has("anchor_seed")) {
      std::mt19937_64 gen(
          static_cast<std::uint64_t>(cfg.require_int("anchor_seed")));
      double scale = cfg.get_double("anchor_scale", 1.0);
      for (auto [rows, cols] : shapes) {
        anchors.push_back(random_gaussian(rows, cols, gen, scale));
      }
    } else {
      for (auto [rows, cols] : shapes) anchors.emplace_back(rows, cols);
    }
    return layered_quadratic(std::move(c), std::move(anchors));
  }
  if (problem == "tiny_mlp") {
    std::int64_t in_dim = cfg.require_int("mlp_in");
    std::int64_t hidden = cfg.require_int("mlp_hidden");
    std::int64_t out_dim = cfg.require_int("mlp_out");
    std::int64_t samples = cfg.get_int("mlp_samples", 256);
    std::int64_t batch = cfg.get_int("mlp_batch", 32);
    std::uint64_t data_seed =
        static_cast<std::uint64_t>(cfg.get_int("mlp_data_seed", 0));
    return tiny_mlp(in_dim, hidden, out_dim, samples, batch, data_seed);
  }
  throw std::invalid_argument(
      "unknown problem '" + problem +
      "' (expected layered_quadratic, cosh_separable or tiny_mlp)");
}

std::vector<NormSpec> build_norms(KeyValueConfig& cfg, const Objective& obj) {
  std::string preset = cfg.require("preset");
  std::size_t p = obj.groups.size();
  if (preset == "custom") {
    auto tokens = cfg.require_list("norms");
    if (tokens.size() != p) {
      throw std::invalid_argument("norms must list " + std::to_string(p) +
                                  " entries, got " +
                                  std::to_string(tokens.size()));
    }
    std::vector<NormSpec> specs;
    specs.reserve(p);
    for (const auto& token : tokens) specs.push_back(parse_norm_spec(token));
    return specs;
  }
  std::vector<GroupShape> shapes;
  shapes.reserve(p);
  if (cfg.has("roles")) {
    auto tokens = cfg.require_list("roles");
    if (tokens.size() != p) {
      throw std::invalid_argument("roles must list " + std::to_string(p) +
                                  " entries, got " +
                                  std::to_string(tokens.size()));
    }
    for (std::size_t i = 0; i < p; ++i) {
      shapes.push_back(parse_role_token(tokens[i], obj.groups[i].rows,
                                        obj.groups[i].cols));
    }
  } else {
    for (const auto& g : obj.groups) {
      shapes.push_back(GroupShape{g.rows, g.cols, GroupRole::Hidden, 0, 0, 0});
    }
  }
  return preset_norms(preset, shapes);
}

std::vector<StepsizeSchedule> build_schedules(KeyValueConfig& cfg,
                                              std::size_t p) {
  std::string text = cfg.require("schedule");
  auto cut = text.find(':');
  std::string kind = cut == std::string::npos ? text : text.substr(0, cut);
  auto scalar_arg = [&](const char* what) {
    if (cut == std::string::npos) {
      throw std::invalid_argument(std::string(what) +
                                  " schedule needs a value, e.g. " +
                                  std::string(what) + ":0.1");
    }
    return parse_double_strict(text.substr(cut + 1), "schedule value");
  };
  if (kind == "constant") {
    return std::vector<StepsizeSchedule>(
        p, ConstantStep{scalar_arg("constant")});
  }
  if (kind == "poly_decay") {
    return std::vector<StepsizeSchedule>(
        p, PolynomialDecayStep{scalar_arg("poly_decay")});
  }
  if (kind == "adaptive_det" || kind == "adaptive_stoch") {
    if (cut != std::string::npos) {
      throw std::invalid_argument(kind +
                                  " takes its constants from the l0/l1 keys");
    }
    auto l0 = broadcast_list(cfg.require_double_list("l0"), p, "l0");
    auto l1 = broadcast_list(cfg.require_double_list("l1"), p, "l1");
    std::vector<StepsizeSchedule> schedules;
    schedules.reserve(p);
    if (kind == "adaptive_det") {
      for (std::size_t i = 0; i < p; ++i) {
        schedules.push_back(AdaptiveDeterministicStep{l0[i], l1[i]});
      }
    } else {
      double zeta = cfg.require_double("zeta");
      for (std::size_t i = 0; i < p; ++i) {
        schedules.push_back(AdaptiveStochasticStep{l0[i], l1[i], zeta});
      }
    }
    return schedules;
  }
  throw std::invalid_argument(
      "unknown schedule '" + text +
      "' (expected constant:T, poly_decay:T, adaptive_det or adaptive_stoch)");
}

MomentumRule build_momentum(KeyValueConfig& cfg) {
  std::string text = cfg.get("momentum", "none");
  if (text == "none") return NoMomentum{};
  if (text == "sqrt_decay") return SqrtDecayBeta{};
  auto cut = text.find(':');
  if (cut != std::string::npos && text.substr(0, cut) == "constant") {
    return ConstantBeta{
        parse_double_strict(text.substr(cut + 1), "momentum beta")};
  }
  throw std::invalid_argument(
      "unknown momentum '" + text +
      "' (expected none, constant:BETA or sqrt_decay)");
}

std::vector<Matrix> build_init(KeyValueConfig& cfg, const Objective& obj) {
  std::string init = cfg.get("init", "zeros");
  std::vector<Matrix> xs;
  xs.reserve(obj.groups.size());
  if (init == "zeros") {
    for (const auto& g : obj.groups) xs.emplace_back(g.rows, g.cols);
    return xs;
  }
  if (init == "gaussian") {
    double scale = cfg.get_double("init_scale", 1.0);
    std::mt19937_64 gen(static_cast<std::uint64_t>(cfg.get_int("init_seed", 0)));
    for (const auto& g : obj.groups) {
      xs.push_back(random_gaussian(g.rows, g.cols, gen, scale));
    }
    return xs;
  }
  throw std::invalid_argument("unknown init '" + init +
                              "' (expected zeros or gaussian)");
}

void check_finite(const Matrix& m, const std::string& what, std::int64_t k) {
  if (!m.all_finite()) {
    throw std::runtime_error("non-finite " + what + " at iteration " +
                             std::to_string(k));
  }
}

void check_finite_loss(double f, std::int64_t k) {
  if (!std::isfinite(f)) {
    throw std::runtime_error("non-finite loss at iteration " +
                             std::to_string(k));
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  KeyValueConfig cfg = KeyValueConfig::parse_file(path);
  RunConfig rc;
  std::string problem = cfg.require("problem");
  rc.objective = build_objective(cfg, problem);
  auto norms = build_norms(cfg, rc.objective);
  auto schedules = build_schedules(cfg, rc.objective.groups.size());
  rc.momentum = build_momentum(cfg);
  rc.stochastic = cfg.get_bool("stochastic", false);
  rc.iterations = cfg.require_int("iterations");
  if (rc.iterations < 1) {
    throw std::invalid_argument("iterations must be >= 1");
  }
  rc.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
  rc.trace_path = cfg.require("trace");
  rc.dump_params_path = cfg.take("dump_params");

  std::string backend = cfg.get("backend", "exact");
  if (backend == "exact") {
    rc.backend = SpectralBackend::Exact;
  } else if (backend == "newton_schulz") {
    rc.backend = SpectralBackend::NewtonSchulz;
    rc.ns.iterations = cfg.get_int("ns_iterations", rc.ns.iterations);
  } else {
    throw std::invalid_argument("unknown backend '" + backend +
                                "' (expected exact or newton_schulz)");
  }

  double sigma_target = cfg.get_double("sigma_target", 0.0);
  if (sigma_target < 0.0) {
    throw std::invalid_argument("sigma_target must be >= 0");
  }
  if (sigma_target > 0.0) {
    if (!rc.stochastic) {
      throw std::invalid_argument("sigma_target requires stochastic = true");
    }
    std::uint64_t noise_seed =
        static_cast<std::uint64_t>(cfg.get_int("noise_seed", 0));
    rc.objective = with_gaussian_noise(std::move(rc.objective), norms,
                                       sigma_target, noise_seed);
  }
  if (rc.stochastic && !rc.objective.stoch_grad) {
    throw std::invalid_argument(
        "problem '" + problem +
        "' has no stochastic gradient; set sigma_target > 0 to add noise");
  }

  auto xs = build_init(cfg, rc.objective);
  rc.groups.reserve(rc.objective.groups.size());
  for (std::size_t i = 0; i < rc.objective.groups.size(); ++i) {
    rc.groups.push_back(ParamGroup{rc.objective.groups[i].id, std::move(xs[i]),
                                   norms[i], schedules[i]});
  }
  cfg.finish();
  return rc;
}

RunResult run(const RunConfig& config) {
  const Objective& obj = config.objective;
  if (config.iterations < 1) {
    throw std::invalid_argument("iterations must be >= 1");
  }
  if (obj.groups.size() != config.groups.size()) {
    throw std::invalid_argument("objective and parameter group counts differ");
  }
  for (std::size_t i = 0; i < config.groups.size(); ++i) {
    if (config.groups[i].x.rows() != obj.groups[i].rows ||
        config.groups[i].x.cols() != obj.groups[i].cols) {
      throw std::invalid_argument("group '" + config.groups[i].id +
                                  "' shape does not match the objective");
    }
  }
  if (config.stochastic && !obj.stoch_grad) {
    throw std::invalid_argument("objective has no stochastic gradient");
  }

  Optimizer opt(config.groups, config.momentum, config.backend, config.ns);
  const std::size_t p = config.groups.size();
  auto eval_grad = [&](std::span<const Matrix> xs, std::int64_t k) {
    std::vector<Matrix> g =
        config.stochastic
            ? obj.stoch_grad(xs, mix_seed(config.seed,
                                          static_cast<std::uint64_t>(k)))
            : obj.grad(xs);
    for (std::size_t i = 0; i < g.size(); ++i) {
      check_finite(g[i], "gradient for group '" + obj.groups[i].id + "'", k);
    }
    return g;
  };

  std::vector<Matrix> x_prev = opt.params();
  std::vector<Matrix> g_prev = eval_grad(x_prev, 0);
  double f_prev = obj.value(x_prev);
  check_finite_loss(f_prev, 0);

  RunResult result;
  result.trace.rows.reserve(static_cast<std::size_t>(config.iterations) * p);
  for (std::int64_t k = 0; k < config.iterations; ++k) {
    std::vector<GroupStepInfo> infos = config.stochastic
                                           ? opt.step_stochastic(g_prev)
                                           : opt.step_deterministic(g_prev);
    std::vector<Matrix> x_next = opt.params();
    std::vector<Matrix> g_next = eval_grad(x_next, k + 1);
    double f_next = obj.value(x_next);
    check_finite_loss(f_next, k + 1);
    for (std::size_t i = 0; i < p; ++i) {
      const NormSpec& norm = config.groups[i].norm;
      TraceRow row;
      row.k = k;
      row.group_id = obj.groups[i].id;
      row.f_value = f_prev;
      row.g_dual_next = dual_norm(norm, g_next[i]);
      row.delta_g_dual = dual_norm(norm, g_next[i] - g_prev[i]);
      row.delta_x_norm = primal_norm(norm, x_next[i] - x_prev[i]);
      row.radius_used = infos[i].radius;
      result.trace.rows.push_back(std::move(row));
    }
    x_prev = std::move(x_next);
    g_prev = std::move(g_next);
    f_prev = f_next;
  }
  result.final_f = f_prev;
  result.final_params = opt.params();

  if (!config.trace_path.empty()) {
    write_csv(result.trace, config.trace_path);
  }
  if (config.dump_params_path) {
    std::ofstream out(*config.dump_params_path, std::ios::binary);
    if (!out) {
      throw std::invalid_argument("cannot write params to '" +
                                  *config.dump_params_path + "'");
    }
    for (std::size_t i = 0; i < p; ++i) {
      const Matrix& x = result.final_params[i];
      out << "group " << obj.groups[i].id << " " << x.rows() << " "
          << x.cols() << "\n";
      for (std::int64_t r = 0; r < x.rows(); ++r) {
        for (std::int64_t c = 0; c < x.cols(); ++c) {
          out << (c ? " " : "") << fmt17(x(r, c));
        }
        out << "\n";
      }
    }
  }
  return result;
}

FitReport estimate_trace(const std::string& trace_path, double lambda,
                         double eps, double sigma) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");

  TrajectoryTrace trace = read_csv(trace_path);
  if (trace.rows.empty()) {
    throw std::invalid_argument("trace '" + trace_path + "' has no data rows");
  }

  FitReport rep;
  rep.trace_path = trace_path;
  rep.lambda = lambda;
  rep.eps = eps;
  rep.sigma = sigma;
  rep.rows = static_cast<std::int64_t>(trace.rows.size());

  std::int64_t min_k = trace.rows.front().k;
  std::int64_t max_k = trace.rows.front().k;
  double f_min = trace.rows.front().f_value;
  double f_first = trace.rows.front().f_value;
  for (const TraceRow& row : trace.rows) {
    if (row.k < min_k) {
      min_k = row.k;
      f_first = row.f_value;
    }
    max_k = std::max(max_k, row.k);
    f_min = std::min(f_min, row.f_value);
  }
  rep.iterations = max_k + 1;
  rep.delta0_proxy = f_first - f_min;

  std::vector<double> l0s;
  std::vector<double> l1s;
  std::vector<double> first_radii;
  bool any_error = false;
  for (const std::string& id : trace_group_ids(trace)) {
    GroupFit gf;
    gf.id = id;
    double last_g = 0.0;
    std::int64_t last_k = std::numeric_limits<std::int64_t>::min();
    double first_radius = 0.0;
    std::int64_t first_k = std::numeric_limits<std::int64_t>::max();
    for (const TraceRow& row : trace.rows) {
      if (row.group_id != id) continue;
      if (row.k > last_k) {
        last_k = row.k;
        last_g = row.g_dual_next;
      }
      if (row.k < first_k) {
        first_k = row.k;
        first_radius = row.radius_used;
      }
    }
    gf.last_g_dual = last_g;
    try {
      SmoothnessSamples samples = trajectory_smoothness(trace, id);
      gf.fit = fit_constants(samples.l_hat, samples.g_dual, lambda);
      gf.skipped = samples.skipped;
    } catch (const std::invalid_argument& e) {
      gf.error = e.what();
      any_error = true;
      rep.groups.push_back(std::move(gf));
      continue;
    }
    try {
      gf.suggested_stepsize = suggest_stepsize(gf.fit, last_g);
    } catch (const std::invalid_argument&) {
      gf.suggested_stepsize = std::numeric_limits<double>::quiet_NaN();
      gf.suggestion_defined = false;
    }
    l0s.push_back(gf.fit.l0);
    l1s.push_back(gf.fit.l1);
    first_radii.push_back(first_radius);
    rep.groups.push_back(std::move(gf));
  }

  rep.sum_l0 = 0.0;
  rep.max_l1 = 0.0;
  for (std::size_t i = 0; i < l0s.size(); ++i) {
    rep.sum_l0 += l0s[i];
    rep.max_l1 = std::max(rep.max_l1, l1s[i]);
  }

  theory::RateInputs in;
  in.p = static_cast<std::int64_t>(l0s.size());
  in.delta0 = rep.delta0_proxy;
  in.l0 = l0s;
  in.l1 = l1s;
  in.eps = eps;
  in.sigma = sigma;
  if (any_error) {
    const char* note = "some groups could not be fitted";
    rep.det_plain_note = note;
    rep.det_weighted_note = note;
    rep.stoch_bound_note = note;
  } else if (rep.delta0_proxy > 0.0) {
    try {
      rep.det_plain = theory::det_iterations_plain(in);
    } catch (const std::invalid_argument& e) {
      rep.det_plain_note = e.what();
    }
    try {
      rep.det_weighted = theory::det_iterations_weighted(in);
    } catch (const std::invalid_argument& e) {
      rep.det_weighted_note = e.what();
    }
    bool all_l1_zero =
        std::all_of(l1s.begin(), l1s.end(), [](double v) { return v == 0.0; });
    try {
      if (all_l1_zero) {
        in.t = first_radii;  // poly-decay base radii equal the first step's
        rep.stoch_bound_value = theory::stoch_bound(rep.iterations, in, true);
      } else {
        rep.stoch_bound_value = theory::stoch_bound(rep.iterations, in, false);
      }
    } catch (const std::invalid_argument& e) {
      rep.stoch_bound_note = e.what();
    }
  } else {
    const char* note = "needs a positive objective gap; the trace shows none";
    rep.det_plain_note = note;
    rep.det_weighted_note = note;
    rep.stoch_bound_note = note;
  }
  return rep;
}

bool report_has_errors(const FitReport& report) {
  for (const GroupFit& g : report.groups)
    if (!g.error.empty()) return true;
  return false;
}

std::string format_report(const FitReport& rep) {
  std::ostringstream out;
  out << "fit_report_version = 1\n";
  out << "trace = " << rep.trace_path << "\n";
  out << "lambda = " << fmt17(rep.lambda) << "\n";
  out << "eps = " << fmt17(rep.eps) << "\n";
  out << "sigma = " << fmt17(rep.sigma) << "\n";
  out << "rows = " << rep.rows << "\n";
  out << "iterations = " << rep.iterations << "\n";
  out << "groups = ";
  for (std::size_t i = 0; i < rep.groups.size(); ++i) {
    out << (i ? "," : "") << rep.groups[i].id;
  }
  out << "\n";
  for (const GroupFit& g : rep.groups) {
    const std::string pre = "group." + g.id + ".";
    if (!g.error.empty()) {
      out << pre << "error = " << g.error << "\n";
      continue;
    }
    out << pre << "points = " << g.fit.n_points << "\n";
    out << pre << "skipped = " << g.skipped << "\n";
    out << pre << "l0 = " << fmt17(g.fit.l0) << "\n";
    out << pre << "l1 = " << fmt17(g.fit.l1) << "\n";
    out << pre << "loss = " << fmt17(g.fit.loss) << "\n";
    out << pre << "hinge = " << fmt17(g.fit.hinge) << "\n";
    if (std::isnan(g.fit.mse_rel)) {
      out << pre << "mse_rel = undefined (a sample ratio is zero)\n";
    } else {
      out << pre << "mse_rel = " << fmt17(g.fit.mse_rel) << "\n";
    }
    out << pre << "last_g_dual = " << fmt17(g.last_g_dual) << "\n";
    if (g.suggestion_defined) {
      out << pre << "suggested_stepsize = " << fmt17(g.suggested_stepsize)
          << "\n";
    } else {
      out << pre
          << "suggested_stepsize = undefined (fitted constants are zero)\n";
    }
  }
  out << "theory.delta0_proxy = " << fmt17(rep.delta0_proxy) << "\n";
  out << "theory.sum_l0 = " << fmt17(rep.sum_l0) << "\n";
  out << "theory.max_l1 = " << fmt17(rep.max_l1) << "\n";
  if (rep.det_plain) {
    out << "theory.det_iterations_plain = " << *rep.det_plain << "\n";
  } else {
    out << "theory.det_iterations_plain = unavailable (" << rep.det_plain_note
        << ")\n";
  }
  if (rep.det_weighted) {
    out << "theory.det_iterations_weighted = " << *rep.det_weighted << "\n";
  } else {
    out << "theory.det_iterations_weighted = unavailable ("
        << rep.det_weighted_note << ")\n";
  }
  out << "theory.stoch_bound_iterations = " << rep.iterations << "\n";
  if (rep.stoch_bound_value) {
    out << "theory.stoch_bound = " << fmt17(*rep.stoch_bound_value) << "\n";
  } else {
    out << "theory.stoch_bound = unavailable (" << rep.stoch_bound_note
        << ")\n";
  }
  return out.str();
}

}  // namespace gluon
