// Trust-region radius schedules and momentum mixing rules.
//
// radius_at(schedule, k, g) gives the LMO ball radius t_k for iteration
// k >= 0, where g is the dual norm of the driving vector (the gradient
// for deterministic steps, the momentum for stochastic ones):
//   Constant             t
//   PolynomialDecay      t_base * (k+1)^(-3/4)
//   AdaptiveDeterministic    g / (L0 + L1*g)
//   AdaptiveStochastic   (1-zeta)*g / (L0 + (1+zeta)*L1*g)
// Adaptive variants return 0 when the driving vector vanishes (frozen
// step), including the degenerate L0 = 0 case.
//
// beta_at(rule, k) gives the momentum coefficient beta_k:
//   NoMomentum    0
//   ConstantBeta  beta
//   SqrtDecayBeta 1 - (k+1)^(-1/2)   (so beta_0 = 0)

#pragma once

#include <cstdint>
#include <variant>

namespace gluon {

struct ConstantStep {
  double t = 0.0;  // > 0
};

struct PolynomialDecayStep {
  double t_base = 0.0;  // > 0
};

struct AdaptiveDeterministicStep {
  double l0 = 0.0;  // >= 0
  double l1 = 0.0;  // >= 0
};

struct AdaptiveStochasticStep {
  double l0 = 0.0;    // >= 0
  double l1 = 0.0;    // >= 0
  double zeta = 0.0;  // in [0, 1)
};

using StepsizeSchedule =
    std::variant<ConstantStep, PolynomialDecayStep, AdaptiveDeterministicStep,
                 AdaptiveStochasticStep>;

double radius_at(const StepsizeSchedule& schedule, std::int64_t k,
                 double grad_dual_norm);

struct NoMomentum {};

struct ConstantBeta {
  double beta = 0.0;  // in [0, 1)
};

struct SqrtDecayBeta {};

using MomentumRule = std::variant<NoMomentum, ConstantBeta, SqrtDecayBeta>;

double beta_at(const MomentumRule& rule, std::int64_t k);

}  // namespace gluon
