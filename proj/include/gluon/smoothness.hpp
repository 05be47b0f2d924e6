// Layer-wise affine smoothness estimation from trajectory traces.
//
// Along a run, each consecutive pair of iterates yields one sample of
// the directional smoothness ratio
//   l_hat[k] = |g_{k+1} - g_k|_dual / |X_{k+1} - X_k|_primal,
// which an affine bound l0 + l1 * |g_{k+1}|_dual should dominate.
// fit_constants picks (l0, l1) >= 0 minimizing
//   sum_k (l_hat[k] - a_k)^2 + lambda * sum_k max(0, l_hat[k] - a_k)^2,
// a_k = l0 + l1 * g[k]; the hinge (weight lambda, default 1) penalizes
// samples the curve fails to dominate. The loss is jointly convex; ties
// are broken toward the smallest l1.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gluon/trace.hpp"

namespace gluon {

struct SmoothnessSamples {
  std::vector<double> l_hat;   // ratio per usable transition, in k order
  std::vector<double> g_dual;  // |g_{k+1}|_dual for the same transitions
  std::int64_t skipped = 0;    // transitions dropped for |dX| <= 1e-14
};

// Extracts the samples of one group; throws if the trace holds fewer
// than 2 rows for it or if every transition was skipped (degenerate
// trajectory).
SmoothnessSamples trajectory_smoothness(const TrajectoryTrace& trace,
                                        const std::string& group_id);

std::vector<double> approx_curve(double l0, double l1,
                                 std::span<const double> g_dual);

struct SmoothnessFit {
  double l0 = 0.0;
  double l1 = 0.0;
  double lambda = 1.0;
  double loss = 0.0;     // objective value at the fit
  double hinge = 0.0;    // sum of squared positive residuals at the fit
  double mse_rel = 0.0;  // relative error vs the samples; NaN if some
                         // sample is zero (the ratio is undefined there)
  std::int64_t n_points = 0;
};

SmoothnessFit fit_constants(std::span<const double> l_hat,
                            std::span<const double> g_dual,
                            double lambda = 1.0);

// Mean of ((l_hat - l_approx) / l_hat)^2; throws if any l_hat is zero.
double mse_rel(std::span<const double> l_hat,
               std::span<const double> l_approx);

// Adaptive radius the fit implies at gradient scale g: g / (l0 + l1*g).
// Throws when l0 = l1 = 0 or g < 0.
double suggest_stepsize(const SmoothnessFit& fit, double g_dual);

}  // namespace gluon
