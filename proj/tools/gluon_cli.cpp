// Command-line front end: run experiments from config files, fit
// smoothness constants to traces, evaluate the closed-form rate bounds,
// and list the built-in norm presets.
//
// Exit codes: 0 success, 1 runtime failure (non-finite values, solver
// breakdown), 2 invalid input (bad flags, config or trace files).

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gluon/config.hpp"
#include "gluon/harness.hpp"
#include "gluon/theory.hpp"

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> broadcast(std::vector<double> values, std::int64_t p,
                              const std::string& what) {
  if (values.size() == 1 && p > 1) {
    values.assign(static_cast<std::size_t>(p), values[0]);
  }
  if (values.size() != static_cast<std::size_t>(p)) {
    throw std::invalid_argument(what + " must list 1 or " +
                                std::to_string(p) + " values");
  }
  return values;
}

void cmd_run(const std::string& config_path, const std::string& dump_params) {
  gluon::RunConfig config = gluon::load_run_config(config_path);
  if (!dump_params.empty()) config.dump_params_path = dump_params;
  gluon::RunResult result = gluon::run(config);
  std::cout << "iterations = " << config.iterations << "\n";
  std::cout << "groups = " << config.groups.size() << "\n";
  std::cout << "final_f = " << fmt17(result.final_f) << "\n";
  std::cout << "trace = " << config.trace_path << "\n";
  if (config.dump_params_path) {
    std::cout << "params = " << *config.dump_params_path << "\n";
  }
}

void cmd_estimate(const std::string& trace_path, double lambda, double eps,
                  double sigma, const std::string& out_path) {
  gluon::FitReport report =
      gluon::estimate_trace(trace_path, lambda, eps, sigma);
  std::string text = gluon::format_report(report);
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw std::invalid_argument("cannot write report to '" + out_path + "'");
    }
    out << text;
  }
  if (gluon::report_has_errors(report)) {
    throw std::invalid_argument("some groups could not be fitted (see report)");
  }
}

struct RatesArgs {
  std::int64_t p = 0;
  double delta0 = 0.0;
  std::vector<double> l0;
  std::vector<double> l1;
  double eps = 0.0;
  double sigma = 0.0;
  double zeta = 0.0;
  double mu = 0.0;
  std::vector<double> t;
  std::int64_t k_iters = 0;
};

void cmd_rates(RatesArgs args) {
  if (args.p < 1) throw std::invalid_argument("--p must be >= 1");
  if (!(args.delta0 > 0.0)) {
    throw std::invalid_argument("--delta0 must be > 0");
  }
  if (!(args.eps > 0.0)) throw std::invalid_argument("--eps must be > 0");
  if (args.sigma < 0.0) throw std::invalid_argument("--sigma must be >= 0");
  if (args.zeta < 0.0 || args.zeta >= 1.0) {
    throw std::invalid_argument("--zeta must be in [0, 1)");
  }
  gluon::theory::RateInputs in;
  in.p = args.p;
  in.delta0 = args.delta0;
  in.l0 = broadcast(std::move(args.l0), args.p, "--l0");
  in.l1 = broadcast(std::move(args.l1), args.p, "--l1");
  in.eps = args.eps;
  in.sigma = args.sigma;
  in.zeta = args.zeta;
  in.mu = args.mu;
  if (!args.t.empty()) in.t = broadcast(std::move(args.t), args.p, "--t");

  auto line_int = [](const char* key, auto&& compute) {
    try {
      auto value = compute();
      std::cout << key << " = " << value << "\n";
    } catch (const std::invalid_argument& e) {
      std::cout << key << " = unavailable (" << e.what() << ")\n";
    }
  };
  const bool l1_zero =
      std::all_of(in.l1.begin(), in.l1.end(), [](double v) { return v == 0.0; });

  line_int("det_iterations_plain",
           [&] { return gluon::theory::det_iterations_plain(in); });
  line_int("det_iterations_weighted",
           [&] { return gluon::theory::det_iterations_weighted(in); });
  line_int("pl_iterations",
           [&] { return gluon::theory::pl_iterations(in, l1_zero); });
  line_int("adaptive_stoch_plain", [&] {
    return gluon::theory::adaptive_stoch_iterations(
        in, gluon::theory::StochVariant::Plain);
  });
  line_int("adaptive_stoch_weighted", [&] {
    return gluon::theory::adaptive_stoch_iterations(
        in, gluon::theory::StochVariant::Weighted);
  });
  if (args.k_iters > 0) {
    line_int("stoch_bound", [&] {
      return fmt17(gluon::theory::stoch_bound(args.k_iters, in, l1_zero));
    });
  } else {
    std::cout << "stoch_bound = unavailable (pass --K to pick the horizon)\n";
  }
  try {
    std::vector<double> w = gluon::theory::criterion_weights(in.l1);
    std::cout << "criterion_weights = ";
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::cout << (i ? "," : "") << fmt17(w[i]);
    }
    std::cout << "\n";
  } catch (const std::invalid_argument& e) {
    std::cout << "criterion_weights = unavailable (" << e.what() << ")\n";
  }
}

void cmd_presets() {
  for (const std::string& name : gluon::preset_names()) {
    std::cout << name << "\n  " << gluon::preset_description(name) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layer-wise LMO optimizer toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string dump_params;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("--config", config_path, "Key-value config file")
      ->required();
  run_cmd->add_option("--dump-params", dump_params,
                      "Also write the final parameters to this file");
  run_cmd->callback([&] { cmd_run(config_path, dump_params); });

  std::string trace_path;
  std::string out_path;
  double lambda = 1.0;
  double est_eps = 1e-3;
  double est_sigma = 0.0;
  CLI::App* est_cmd = app.add_subcommand(
      "estimate", "Fit smoothness constants to a trajectory trace");
  est_cmd->add_option("--trace", trace_path, "Trace CSV from a run")
      ->required();
  est_cmd->add_option("--lambda", lambda, "Hinge weight of the fit");
  est_cmd->add_option("--eps", est_eps,
                      "Target accuracy for the rate predictions");
  est_cmd->add_option("--sigma", est_sigma,
                      "Noise dual-norm bound for the stochastic bound");
  est_cmd->add_option("--out", out_path, "Also write the report to this file");
  est_cmd->callback(
      [&] { cmd_estimate(trace_path, lambda, est_eps, est_sigma, out_path); });

  RatesArgs rates;
  CLI::App* rates_cmd =
      app.add_subcommand("rates", "Evaluate the closed-form rate bounds");
  rates_cmd->add_option("--p", rates.p, "Number of groups")->required();
  rates_cmd->add_option("--delta0", rates.delta0, "Initial objective gap")
      ->required();
  rates_cmd->add_option("--l0", rates.l0, "Per-group L0 (comma separated)")
      ->required()
      ->delimiter(',');
  rates_cmd->add_option("--l1", rates.l1, "Per-group L1 (comma separated)")
      ->required()
      ->delimiter(',');
  rates_cmd->add_option("--eps", rates.eps, "Target accuracy")->required();
  rates_cmd->add_option("--sigma", rates.sigma, "Noise dual-norm bound");
  rates_cmd->add_option("--zeta", rates.zeta, "Relative-variance level");
  rates_cmd->add_option("--mu", rates.mu, "PL constant");
  rates_cmd->add_option("--t", rates.t,
                        "Per-group base radii (fixed-radius bound, L1 = 0)")
      ->delimiter(',');
  rates_cmd->add_option("--K", rates.k_iters,
                        "Horizon for the fixed-radius stochastic bound");
  rates_cmd->callback([&] { cmd_rates(rates); });

  CLI::App* presets_cmd =
      app.add_subcommand("presets", "List the built-in norm presets");
  presets_cmd->add_subcommand("list", "List presets (the default action)");
  presets_cmd->callback([&] { cmd_presets(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
