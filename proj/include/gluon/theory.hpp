// Closed-form iteration counts and error bounds for the layer-wise LMO
// method under per-group affine smoothness |grad_i f(X) - grad_i f(Y)| <=
// (L0_i + L1_i |grad_i f(X)|) |X_i - Y_i| (group norms, dual on the left).
// All formulas are evaluated in double precision with the ceiling taken
// last and returned as a 64-bit count.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gluon {
namespace theory {

struct RateInputs {
  std::int64_t p = 0;       // number of groups, >= 1
  double delta0 = 0.0;      // f(X_0) - inf f, >= 0
  std::vector<double> l0;   // per group, >= 0, size p
  std::vector<double> l1;   // per group, >= 0, size p
  double eps = 0.0;         // target accuracy, > 0
  double sigma = 0.0;       // noise dual-norm bound, >= 0
  double zeta = 0.0;        // relative-variance level, in [0, 1)
  double mu = 0.0;          // PL constant, > 0 where required
  std::vector<double> t;    // per-group radii; only the fixed-radius
                            // bound's L1 = 0 branch reads it
};

// Iterations driving the (1/L1)-weighted average of group gradient dual
// norms below eps with adaptive deterministic stepsizes:
//   ceil( 2*delta0*sum_i(L0_i/L1_i^2) / (eps^2 h^2) + 2*delta0 / (eps h) ),
//   h = (1/p) sum_j 1/L1_j.
// Requires every L1_i > 0; otherwise throws and points at the plain
// variant.
std::int64_t det_iterations_weighted(const RateInputs& in);

// Iterations driving the sum of group gradient dual norms below eps:
//   ceil( 2*delta0*sum_i L0_i / eps^2 + 2*delta0*max_i L1_i / eps ).
std::int64_t det_iterations_plain(const RateInputs& in);

// Iterations to f(X_K) - f* <= eps under the layer-wise PL condition.
// l1_zero selects the L1 = 0 linear-rate branch
//   ceil( (max_i L0_i / mu) * log(delta0 / eps) )      (0 when eps >= delta0)
// and otherwise
//   ceil( sum_i L0_i * delta0 / (mu*eps)
//         + sqrt(2) * max_i L1_i * delta0 / sqrt(mu*eps) ).
std::int64_t pl_iterations(const RateInputs& in, bool l1_zero);

// Upper bound on the best weighted gradient criterion reachable in K
// iterations of the stochastic method with momentum beta_k = 1-(k+1)^(-1/2)
// and radii t_i (k+1)^(-3/4). With l1_zero the radii come from in.t:
//   delta0/K^(1/4) + (1/K^(1/4)) sum_i [ sigma*t_i*(7 + 2*sqrt(2 e^2)*log K)
//                                + L0_i*t_i^2*(87/2 + 14*log K) ]
// and otherwise t_i = 1/(12 L1_i) is substituted:
//   2*delta0/K^(1/4) + (1/K^(1/4)) sum_i [ sigma/(6 L1_i)*(7 + 2*sqrt(2 e^2)*log K)
//                                + L0_i/(144 L1_i^2)*(87 + 28*log K) ].
double stoch_bound(std::int64_t k_iters, const RateInputs& in, bool l1_zero);

enum class StochVariant { Plain, Weighted };

// Iterations for the stochastic adaptive stepsizes under bounded
// relative variance zeta. Plain bounds the sum criterion:
//   ceil( 2*sum_i L0_i*delta0 / ((1-zeta)^2 eps^2)
//         + 2*(1+zeta)*max_i L1_i*delta0 / ((1-zeta)^2 eps) );
// Weighted bounds the (1/L1)-weighted criterion (all L1_i > 0):
//   ceil( 2*delta0*sum_i(L0_i/L1_i^2) / ((1-zeta)^2 eps^2 h^2)
//         + 2*delta0*(1+zeta) / ((1-zeta)^2 eps h) ).
// zeta = 0 reduces bitwise to the deterministic counts.
std::int64_t adaptive_stoch_iterations(const RateInputs& in,
                                       StochVariant variant);

// Weights (1/L1_i) / ((1/p) sum_j 1/L1_j); they sum to p.
std::vector<double> criterion_weights(std::span<const double> l1);

// sum_i weight_i * g_dual_i, the quantity the weighted rates control.
double weighted_grad_criterion(std::span<const double> l1,
                               std::span<const double> g_dual);

}  // namespace theory
}  // namespace gluon
