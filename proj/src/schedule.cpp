#include "gluon/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace gluon {

double radius_at(const StepsizeSchedule& schedule, std::int64_t k,
                 double grad_dual_norm) {
  if (k < 0) throw std::invalid_argument("radius_at: k must be >= 0");
  if (!(grad_dual_norm >= 0.0))
    throw std::invalid_argument("radius_at: grad_dual_norm must be >= 0");

  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantStep>) {
          if (!(s.t > 0.0))
            throw std::invalid_argument("ConstantStep: t must be > 0");
          return s.t;
        } else if constexpr (std::is_same_v<T, PolynomialDecayStep>) {
          if (!(s.t_base > 0.0))
            throw std::invalid_argument(
                "PolynomialDecayStep: t_base must be > 0");
          return s.t_base * std::pow(static_cast<double>(k) + 1.0, -0.75);
        } else if constexpr (std::is_same_v<T, AdaptiveDeterministicStep>) {
          if (!(s.l0 >= 0.0) || !(s.l1 >= 0.0))
            throw std::invalid_argument(
                "AdaptiveDeterministicStep: L0, L1 must be >= 0");
          if (grad_dual_norm == 0.0) return 0.0;
          return grad_dual_norm / (s.l0 + s.l1 * grad_dual_norm);
        } else {
          static_assert(std::is_same_v<T, AdaptiveStochasticStep>);
          if (!(s.l0 >= 0.0) || !(s.l1 >= 0.0))
            throw std::invalid_argument(
                "AdaptiveStochasticStep: L0, L1 must be >= 0");
          if (!(s.zeta >= 0.0 && s.zeta < 1.0))
            throw std::invalid_argument(
                "AdaptiveStochasticStep: zeta must be in [0, 1)");
          if (grad_dual_norm == 0.0) return 0.0;
          return (1.0 - s.zeta) * grad_dual_norm /
                 (s.l0 + (1.0 + s.zeta) * s.l1 * grad_dual_norm);
        }
      },
      schedule);
}

double beta_at(const MomentumRule& rule, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("beta_at: k must be >= 0");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, NoMomentum>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ConstantBeta>) {
          if (!(r.beta >= 0.0 && r.beta < 1.0))
            throw std::invalid_argument("ConstantBeta: beta must be in [0, 1)");
          return r.beta;
        } else {
          static_assert(std::is_same_v<T, SqrtDecayBeta>);
          return 1.0 - std::pow(static_cast<double>(k) + 1.0, -0.5);
        }
      },
      rule);
}

}  // namespace gluon
