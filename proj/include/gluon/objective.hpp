// A differentiable objective over a list of parameter groups, with
// optional stochastic gradients and whatever smoothness facts are known
// in closed form (used by adaptive schedules, rate calculators and the
// estimator tests).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gluon/matrix.hpp"

namespace gluon {

struct GroupInfo {
  std::string id;
  std::int64_t rows = 0;
  std::int64_t cols = 0;
};

// Known constants under the objective's reference group norms; absent
// entries mean "not known in closed form".
struct ObjectiveMetadata {
  std::optional<std::vector<double>> l0;
  std::optional<std::vector<double>> l1;
  std::optional<double> mu;          // PL constant
  std::optional<double> f_inf;       // infimum of f
  std::optional<double> sigma_bound; // upper bound on E dual-norm^2 of noise
  std::string notes;
};

struct Objective {
  std::vector<GroupInfo> groups;
  std::function<double(std::span<const Matrix>)> value;
  std::function<std::vector<Matrix>(std::span<const Matrix>)> grad;
  // Seeded minibatch/noisy gradient; empty when the objective is
  // deterministic-only.
  std::function<std::vector<Matrix>(std::span<const Matrix>, std::uint64_t)>
      stoch_grad;
  ObjectiveMetadata meta;
};

}  // namespace gluon
