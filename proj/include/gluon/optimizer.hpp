// Layer-wise LMO optimizer. Each parameter group carries its own norm
// and radius schedule; one step moves every group to the minimizer of
// the linearized objective over a ball of the group norm:
//
//   X_i <- X_i + t_ik * argmin_{|D|_(i) <= 1} <drive_i, D>
//
// where drive_i is the gradient (deterministic step) or the momentum
// buffer M_i = beta_k M_i + (1 - beta_k) g_i (stochastic step). Momentum
// buffers initialize to the first stochastic gradient unless set
// explicitly beforehand. Groups are independent within a step and are
// processed in parallel when OpenMP is available, with results identical
// to sequential execution.
//
// Presets map named methods onto norm choices per group:
//   muon          spectral, scale 1, every group
//   unscion_llm   hidden (m x n): spectral, scale sqrt(n/m);
//                 head  (m x n): max-entry, scale n
//   unscion_cnn   bias (len c_out): euclidean, scale sqrt(1/c_out);
//                 conv (c_out x c_in*k*k): spectral, scale k*k*sqrt(c_in/c_out);
//                 head  (m x n): max-entry, scale n
//   normalized_gd euclidean, scale 1, every group
//   sign_gd       max-entry, scale 1, every group

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gluon/norms.hpp"
#include "gluon/schedule.hpp"

namespace gluon {

struct ParamGroup {
  std::string id;
  Matrix x;
  NormSpec norm;
  StepsizeSchedule schedule;
};

// Per-group outcome of one step, in group order.
struct GroupStepInfo {
  double drive_dual = 0.0;  // dual norm of the vector fed to the LMO
  double radius = 0.0;
  bool frozen = false;  // true when the driving vector was zero
};

class Optimizer {
 public:
  Optimizer(std::vector<ParamGroup> groups, MomentumRule momentum,
            SpectralBackend backend = SpectralBackend::Exact,
            NewtonSchulzOptions ns = {});

  // One pass of the deterministic method: grads[i] drives group i.
  std::vector<GroupStepInfo> step_deterministic(std::span<const Matrix> grads);

  // One pass of the stochastic method: updates momentum from grads, then
  // steps along the momentum LMO.
  std::vector<GroupStepInfo> step_stochastic(std::span<const Matrix> grads);

  // Overrides the M_0 = g_0 default for one group; only valid before the
  // first stochastic step touched that group.
  void set_initial_momentum(std::size_t group, Matrix m0);

  const std::vector<ParamGroup>& groups() const { return groups_; }
  std::vector<Matrix> params() const;
  std::int64_t iteration() const { return k_; }
  const std::optional<Matrix>& momentum_buffer(std::size_t group) const {
    return m_.at(group);
  }

 private:
  void check_grads(std::span<const Matrix> grads) const;

  std::vector<ParamGroup> groups_;
  MomentumRule momentum_;
  SpectralBackend backend_;
  NewtonSchulzOptions ns_;
  std::vector<std::optional<Matrix>> m_;
  std::int64_t k_ = 0;
};

enum class GroupRole { Hidden, Head, Bias, Conv };

// Shape and role of one parameter group as seen by a preset. Conv groups
// describe a c_out x (c_in * k * k) matrix (the filter bank flattened per
// output channel) and must carry the channel/kernel sizes.
struct GroupShape {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  GroupRole role = GroupRole::Hidden;
  std::int64_t conv_c_in = 0;
  std::int64_t conv_c_out = 0;
  std::int64_t conv_k = 0;
};

std::vector<std::string> preset_names();

// Human-readable rule summary for `presets list`.
std::string preset_description(const std::string& name);

std::vector<NormSpec> preset_norms(const std::string& name,
                                   std::span<const GroupShape> shapes);

GroupRole parse_group_role(const std::string& text);

}  // namespace gluon
