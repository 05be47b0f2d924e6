#include "gluon/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gluon {

namespace {

constexpr double kMinStepNorm = 1e-14;

void check_samples(std::span<const double> l_hat,
                   std::span<const double> g_dual) {
  if (l_hat.size() < 2)
    throw std::invalid_argument("fit_constants: needs at least 2 samples");
  if (l_hat.size() != g_dual.size())
    throw std::invalid_argument("fit_constants: l_hat/g_dual size mismatch");
  for (double v : l_hat)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("fit_constants: l_hat must be finite, >= 0");
  for (double v : g_dual)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("fit_constants: g_dual must be finite, >= 0");
}

double loss_at(double l0, double l1, std::span<const double> l_hat,
               std::span<const double> g_dual, double lambda) {
  double loss = 0.0;
  for (std::size_t k = 0; k < l_hat.size(); ++k) {
    const double r = l_hat[k] - (l0 + l1 * g_dual[k]);
    loss += r * r;
    if (r > 0.0) loss += lambda * r * r;
  }
  return loss;
}

struct InnerFit {
  double l0 = 0.0;
  double loss = 0.0;
};

// Exact minimization over l0 >= 0 with l1 fixed. With a_k = l_hat[k] -
// l1*g[k] the objective is piecewise quadratic in l0 with breakpoints at
// the a_k; on each segment the hinge-active set is fixed and the
// stationary point has the closed form (sum a + lambda * sum_active a) /
// (K + lambda * |active|).
InnerFit min_over_l0(double l1, std::span<const double> l_hat,
                     std::span<const double> g_dual, double lambda) {
  const std::size_t n = l_hat.size();
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = l_hat[k] - l1 * g_dual[k];
  std::sort(a.begin(), a.end());

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + a[k];
  const double total = prefix[n];

  auto eval = [&](double l0) {
    double loss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = a[k] - l0;
      loss += r * r;
      if (r > 0.0) loss += lambda * r * r;
    }
    return loss;
  };

  InnerFit best{0.0, eval(0.0)};
  // Segment j holds l0 with exactly j of the a_k at or below it; the
  // hinge is active on the n - j larger ones.
  for (std::size_t j = 0; j <= n; ++j) {
    const double active_sum = total - prefix[j];
    const double active_count = static_cast<double>(n - j);
    double cand = (total + lambda * active_sum) /
                  (static_cast<double>(n) + lambda * active_count);
    const double lo = j == 0 ? 0.0 : std::max(a[j - 1], 0.0);
    const double hi = j == n ? cand : a[j];
    cand = std::clamp(cand, lo, std::max(lo, hi));
    if (cand < 0.0) continue;
    const double loss = eval(cand);
    if (loss < best.loss) best = InnerFit{cand, loss};
  }
  return best;
}

}  // namespace

SmoothnessSamples trajectory_smoothness(const TrajectoryTrace& trace,
                                        const std::string& group_id) {
  std::vector<const TraceRow*> rows;
  for (const TraceRow& r : trace.rows)
    if (r.group_id == group_id) rows.push_back(&r);
  if (rows.size() < 2)
    throw std::invalid_argument("trajectory_smoothness: group '" + group_id +
                                "' has fewer than 2 trace rows");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TraceRow* x, const TraceRow* y) { return x->k < y->k; });

  SmoothnessSamples out;
  for (const TraceRow* r : rows) {
    if (!std::isfinite(r->delta_g_dual) || !std::isfinite(r->delta_x_norm) ||
        !std::isfinite(r->g_dual_next))
      throw std::invalid_argument(
          "trajectory_smoothness: non-finite trace fields at k=" +
          std::to_string(r->k));
    if (r->delta_x_norm <= kMinStepNorm) {
      ++out.skipped;
      continue;
    }
    out.l_hat.push_back(r->delta_g_dual / r->delta_x_norm);
    out.g_dual.push_back(r->g_dual_next);
  }
  if (out.l_hat.empty())
    throw std::invalid_argument("trajectory_smoothness: group '" + group_id +
                                "': degenerate trajectory (every step is "
                                "below the minimum step norm)");
  return out;
}

std::vector<double> approx_curve(double l0, double l1,
                                 std::span<const double> g_dual) {
  if (!(l0 >= 0.0) || !(l1 >= 0.0))
    throw std::invalid_argument("approx_curve: constants must be >= 0");
  std::vector<double> out(g_dual.size());
  for (std::size_t k = 0; k < g_dual.size(); ++k) out[k] = l0 + l1 * g_dual[k];
  return out;
}

SmoothnessFit fit_constants(std::span<const double> l_hat,
                            std::span<const double> g_dual, double lambda) {
  check_samples(l_hat, g_dual);
  if (!(lambda >= 0.0))
    throw std::invalid_argument("fit_constants: lambda must be >= 0");
  const std::size_t n = l_hat.size();

  double best_l0 = 0.0, best_l1 = 0.0;
  double best_loss = std::numeric_limits<double>::infinity();
  auto consider = [&](double l0, double l1) {
    const double loss = loss_at(l0, l1, l_hat, g_dual, lambda);
    if (loss < best_loss) {
      best_loss = loss;
      best_l0 = l0;
      best_l1 = l1;
    }
  };

  // Closed-form least squares first: when it is feasible (both
  // constants nonnegative) and interpolates, the hinge vanishes too and
  // the fit is exact for every lambda.
  double sum_g = 0.0, sum_gg = 0.0, sum_l = 0.0, sum_lg = 0.0, sum_ll = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum_g += g_dual[k];
    sum_gg += g_dual[k] * g_dual[k];
    sum_l += l_hat[k];
    sum_lg += l_hat[k] * g_dual[k];
    sum_ll += l_hat[k] * l_hat[k];
  }
  const double det = static_cast<double>(n) * sum_gg - sum_g * sum_g;
  if (det > 1e-12 * (static_cast<double>(n) * sum_gg + sum_g * sum_g + 1.0)) {
    const double ls_l0 = (sum_l * sum_gg - sum_g * sum_lg) / det;
    const double ls_l1 = (static_cast<double>(n) * sum_lg - sum_g * sum_l) / det;
    if (ls_l0 >= 0.0 && ls_l1 >= 0.0) consider(ls_l0, ls_l1);
  }

  // 1-D convex minimization over l1 with the l0 subproblem solved in
  // closed form. Beyond l1_hi the single worst residual already exceeds
  // the loss at the origin, so the minimizer is bracketed.
  const double g_max = *std::max_element(g_dual.begin(), g_dual.end());
  const double l_max = *std::max_element(l_hat.begin(), l_hat.end());
  if (g_max > 0.0 && l_max > 0.0) {
    const double l1_hi =
        l_max * (1.0 + std::sqrt((1.0 + lambda) * static_cast<double>(n))) /
        g_max;
    double lo = 0.0, hi = l1_hi;
    for (int it = 0; it < 300 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (min_over_l0(m1, l_hat, g_dual, lambda).loss <=
          min_over_l0(m2, l_hat, g_dual, lambda).loss)
        hi = m2;
      else
        lo = m1;
    }
    const double l1_star = 0.5 * (lo + hi);
    consider(min_over_l0(l1_star, l_hat, g_dual, lambda).l0, l1_star);
  }

  // Tie-break toward the smallest l1: accept the l1 = 0 solution
  // whenever it matches the best loss found.
  const InnerFit at_zero = min_over_l0(0.0, l_hat, g_dual, lambda);
  if (at_zero.loss <= best_loss + 1e-12 * (1.0 + best_loss)) {
    best_loss = std::min(best_loss, at_zero.loss);
    best_l0 = at_zero.l0;
    best_l1 = 0.0;
  }

  SmoothnessFit fit;
  fit.l0 = best_l0;
  fit.l1 = best_l1;
  fit.lambda = lambda;
  fit.loss = loss_at(best_l0, best_l1, l_hat, g_dual, lambda);
  double hinge = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = l_hat[k] - (best_l0 + best_l1 * g_dual[k]);
    if (r > 0.0) hinge += r * r;
  }
  fit.hinge = hinge;
  fit.n_points = static_cast<std::int64_t>(n);
  bool has_zero = std::any_of(l_hat.begin(), l_hat.end(),
                              [](double v) { return v == 0.0; });
  fit.mse_rel = has_zero ? std::numeric_limits<double>::quiet_NaN()
                         : mse_rel(l_hat, approx_curve(best_l0, best_l1, g_dual));
  return fit;
}

double mse_rel(std::span<const double> l_hat,
               std::span<const double> l_approx) {
  if (l_hat.empty() || l_hat.size() != l_approx.size())
    throw std::invalid_argument("mse_rel: empty or mismatched inputs");
  double s = 0.0;
  for (std::size_t k = 0; k < l_hat.size(); ++k) {
    if (l_hat[k] == 0.0)
      throw std::invalid_argument(
          "mse_rel: zero l_hat sample at index " + std::to_string(k) +
          " makes the relative error undefined");
    const double r = (l_hat[k] - l_approx[k]) / l_hat[k];
    s += r * r;
  }
  return s / static_cast<double>(l_hat.size());
}

double suggest_stepsize(const SmoothnessFit& fit, double g_dual) {
  if (!(fit.l0 >= 0.0) || !(fit.l1 >= 0.0))
    throw std::invalid_argument("suggest_stepsize: constants must be >= 0");
  if (fit.l0 == 0.0 && fit.l1 == 0.0)
    throw std::invalid_argument(
        "suggest_stepsize: unfitted (both constants are zero)");
  if (!(g_dual >= 0.0))
    throw std::invalid_argument("suggest_stepsize: g_dual must be >= 0");
  const double denom = fit.l0 + fit.l1 * g_dual;
  if (denom == 0.0) return 0.0;  // l0 = 0 and g = 0: frozen step
  return g_dual / denom;
}

}  // namespace gluon
