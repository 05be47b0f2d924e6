#include "gluon/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gluon {
namespace theory {

namespace {

void check_common(const RateInputs& in) {
  if (in.p < 1) throw std::invalid_argument("RateInputs: p must be >= 1");
  if (in.l0.size() != static_cast<std::size_t>(in.p) ||
      in.l1.size() != static_cast<std::size_t>(in.p))
    throw std::invalid_argument("RateInputs: l0/l1 must have p entries");
  if (!(in.delta0 >= 0.0) || !std::isfinite(in.delta0))
    throw std::invalid_argument("RateInputs: delta0 must be finite, >= 0");
  for (double v : in.l0)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("RateInputs: l0 entries must be >= 0");
  for (double v : in.l1)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("RateInputs: l1 entries must be >= 0");
}

void check_eps(const RateInputs& in) {
  if (!(in.eps > 0.0) || !std::isfinite(in.eps))
    throw std::invalid_argument("RateInputs: eps must be finite, > 0");
}

void check_zeta(const RateInputs& in) {
  if (!(in.zeta >= 0.0 && in.zeta < 1.0))
    throw std::invalid_argument("RateInputs: zeta must be in [0, 1)");
}

double sum_l0(const RateInputs& in) {
  double s = 0.0;
  for (double v : in.l0) s += v;
  return s;
}

double max_l1(const RateInputs& in) {
  double m = 0.0;
  for (double v : in.l1) m = std::max(m, v);
  return m;
}

double max_l0(const RateInputs& in) {
  double m = 0.0;
  for (double v : in.l0) m = std::max(m, v);
  return m;
}

void require_all_l1_positive(const RateInputs& in, const char* what,
                             const char* fallback) {
  for (double v : in.l1)
    if (!(v > 0.0))
      throw std::invalid_argument(std::string(what) +
                                  " requires L1 > 0 for every group; " +
                                  fallback);
}

// (1/p) * sum_j 1/L1_j
double harmonic_term(const RateInputs& in) {
  double s = 0.0;
  for (double v : in.l1) s += 1.0 / v;
  return s / static_cast<double>(in.p);
}

std::int64_t ceil_count(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("rate formula evaluated to a non-finite value");
  if (x <= 0.0) return 0;
  const double c = std::ceil(x);
  if (c >= 9.2e18)
    throw std::overflow_error("iteration count exceeds the 64-bit range");
  return static_cast<std::int64_t>(c);
}

// Shared cores: the deterministic counts are the zeta = 0 case of the
// relative-variance counts, so evaluating one code path keeps the
// reduction identity exact at the bit level.

std::int64_t plain_core(const RateInputs& in, double zeta) {
  const double om = 1.0 - zeta;
  const double term1 =
      2.0 * sum_l0(in) * in.delta0 / (om * om * in.eps * in.eps);
  const double term2 =
      2.0 * (1.0 + zeta) * max_l1(in) * in.delta0 / (om * om * in.eps);
  return ceil_count(term1 + term2);
}

std::int64_t weighted_core(const RateInputs& in, double zeta,
                           const char* what, const char* fallback) {
  require_all_l1_positive(in, what, fallback);
  const double h = harmonic_term(in);
  double weighted_l0 = 0.0;
  for (std::int64_t i = 0; i < in.p; ++i)
    weighted_l0 += in.l0[i] / (in.l1[i] * in.l1[i]);
  const double om = 1.0 - zeta;
  const double term1 = 2.0 * in.delta0 * weighted_l0 /
                       (om * om * in.eps * in.eps * h * h);
  const double term2 =
      2.0 * in.delta0 * (1.0 + zeta) / (om * om * in.eps * h);
  return ceil_count(term1 + term2);
}

}  // namespace

std::int64_t det_iterations_weighted(const RateInputs& in) {
  check_common(in);
  check_eps(in);
  return weighted_core(in, 0.0, "det_iterations_weighted",
                       "use det_iterations_plain instead");
}

std::int64_t det_iterations_plain(const RateInputs& in) {
  check_common(in);
  check_eps(in);
  return plain_core(in, 0.0);
}

std::int64_t pl_iterations(const RateInputs& in, bool l1_zero) {
  check_common(in);
  check_eps(in);
  if (!(in.mu > 0.0) || !std::isfinite(in.mu))
    throw std::invalid_argument("pl_iterations: mu must be finite, > 0");
  if (l1_zero) {
    for (double v : in.l1)
      if (v != 0.0)
        throw std::invalid_argument(
            "pl_iterations: l1_zero branch requires every l1 == 0");
    if (in.eps >= in.delta0) return 0;
    return ceil_count(max_l0(in) / in.mu * std::log(in.delta0 / in.eps));
  }
  if (!(max_l1(in) > 0.0))
    throw std::invalid_argument(
        "pl_iterations: general branch expects some l1 > 0; pass l1_zero");
  const double term1 = sum_l0(in) * in.delta0 / (in.mu * in.eps);
  const double term2 = std::numbers::sqrt2 * max_l1(in) * in.delta0 /
                       std::sqrt(in.mu * in.eps);
  return ceil_count(term1 + term2);
}

double stoch_bound(std::int64_t k_iters, const RateInputs& in, bool l1_zero) {
  check_common(in);
  if (k_iters < 1)
    throw std::invalid_argument("stoch_bound: K must be >= 1");
  if (!(in.sigma >= 0.0) || !std::isfinite(in.sigma))
    throw std::invalid_argument("stoch_bound: sigma must be finite, >= 0");

  const double k = static_cast<double>(k_iters);
  const double k4 = std::pow(k, 0.25);
  const double log_k = std::log(k);
  // sqrt(2 e^2) = e * sqrt(2)
  const double noise_coeff =
      7.0 + 2.0 * (std::numbers::e * std::numbers::sqrt2) * log_k;

  if (l1_zero) {
    for (double v : in.l1)
      if (v != 0.0)
        throw std::invalid_argument(
            "stoch_bound: l1_zero branch requires every l1 == 0");
    if (in.t.size() != static_cast<std::size_t>(in.p))
      throw std::invalid_argument(
          "stoch_bound: l1_zero branch needs per-group radii t");
    for (double v : in.t)
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("stoch_bound: radii t must be > 0");
    double sum = 0.0;
    for (std::int64_t i = 0; i < in.p; ++i)
      sum += in.sigma * in.t[i] * noise_coeff +
             in.l0[i] * in.t[i] * in.t[i] * (87.0 / 2.0 + 14.0 * log_k);
    return in.delta0 / k4 + sum / k4;
  }

  require_all_l1_positive(in, "stoch_bound",
                          "pass l1_zero and per-group radii t");
  double sum = 0.0;
  for (std::int64_t i = 0; i < in.p; ++i)
    sum += in.sigma / (6.0 * in.l1[i]) * noise_coeff +
           in.l0[i] / (144.0 * in.l1[i] * in.l1[i]) * (87.0 + 28.0 * log_k);
  return 2.0 * in.delta0 / k4 + sum / k4;
}

std::int64_t adaptive_stoch_iterations(const RateInputs& in,
                                       StochVariant variant) {
  check_common(in);
  check_eps(in);
  check_zeta(in);
  if (variant == StochVariant::Plain) return plain_core(in, in.zeta);
  return weighted_core(in, in.zeta, "adaptive_stoch_iterations[weighted]",
                       "use the plain variant instead");
}

std::vector<double> criterion_weights(std::span<const double> l1) {
  if (l1.empty())
    throw std::invalid_argument("criterion_weights: empty l1 list");
  for (double v : l1)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("criterion_weights: every l1 must be > 0");
  double h = 0.0;
  for (double v : l1) h += 1.0 / v;
  h /= static_cast<double>(l1.size());
  std::vector<double> w(l1.size());
  for (std::size_t i = 0; i < l1.size(); ++i) w[i] = (1.0 / l1[i]) / h;
  return w;
}

double weighted_grad_criterion(std::span<const double> l1,
                               std::span<const double> g_dual) {
  if (g_dual.size() != l1.size())
    throw std::invalid_argument(
        "weighted_grad_criterion: l1/g_dual size mismatch");
  const std::vector<double> w = criterion_weights(l1);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(g_dual[i] >= 0.0))
      throw std::invalid_argument(
          "weighted_grad_criterion: g_dual must be >= 0");
    s += w[i] * g_dual[i];
  }
  return s;
}

}  // namespace theory
}  // namespace gluon
