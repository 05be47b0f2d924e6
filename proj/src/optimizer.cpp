#include "gluon/optimizer.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

namespace gluon {

namespace {

// Groups are independent, so the per-group work can run under OpenMP;
// exceptions must not escape the parallel region, so the first one is
// captured and rethrown after the loop.
template <typename Fn>
void for_each_group(std::int64_t n, Fn&& fn) {
  std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(gluon_group_error)
#endif
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

Optimizer::Optimizer(std::vector<ParamGroup> groups, MomentumRule momentum,
                     SpectralBackend backend, NewtonSchulzOptions ns)
    : groups_(std::move(groups)),
      momentum_(std::move(momentum)),
      backend_(backend),
      ns_(ns),
      m_(groups_.size()) {
  if (groups_.empty())
    throw std::invalid_argument("Optimizer: group list must be nonempty");
  for (const auto& g : groups_) {
    if (!(g.norm.scale > 0.0))
      throw std::invalid_argument("Optimizer: group '" + g.id +
                                  "' has non-positive norm scale");
    if (g.x.size() == 0)
      throw std::invalid_argument("Optimizer: group '" + g.id + "' is empty");
  }
}

void Optimizer::check_grads(std::span<const Matrix> grads) const {
  if (grads.size() != groups_.size())
    throw std::invalid_argument("Optimizer: expected " +
                                std::to_string(groups_.size()) +
                                " gradients, got " +
                                std::to_string(grads.size()));
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!grads[i].same_shape(groups_[i].x))
      throw std::invalid_argument("Optimizer: gradient shape " +
                                  grads[i].shape_str() + " for group '" +
                                  groups_[i].id + "' of shape " +
                                  groups_[i].x.shape_str());
    if (!grads[i].all_finite())
      throw std::runtime_error("Optimizer: non-finite gradient for group '" +
                               groups_[i].id + "'");
  }
}

std::vector<GroupStepInfo> Optimizer::step_deterministic(
    std::span<const Matrix> grads) {
  check_grads(grads);
  std::vector<GroupStepInfo> info(groups_.size());
  const std::int64_t k = k_;
  for_each_group(static_cast<std::int64_t>(groups_.size()), [&](std::int64_t i) {
    ParamGroup& g = groups_[i];
    const double gd = dual_norm(g.norm, grads[i]);
    const double r = radius_at(g.schedule, k, gd);
    g.x = lmo_step(g.x, g.norm, grads[i], r, backend_, ns_);
    info[i] = GroupStepInfo{gd, r, gd == 0.0};
  });
  ++k_;
  return info;
}

std::vector<GroupStepInfo> Optimizer::step_stochastic(
    std::span<const Matrix> grads) {
  check_grads(grads);
  std::vector<GroupStepInfo> info(groups_.size());
  const std::int64_t k = k_;
  const double beta = beta_at(momentum_, k);
  for_each_group(static_cast<std::int64_t>(groups_.size()), [&](std::int64_t i) {
    ParamGroup& g = groups_[i];
    if (!m_[i].has_value()) {
      m_[i] = grads[i];
    } else {
      if (!m_[i]->same_shape(grads[i]))
        throw std::invalid_argument(
            "Optimizer: momentum shape mismatch for group '" + g.id + "'");
      m_[i] = add_scaled(beta, *m_[i], 1.0 - beta, grads[i]);
    }
    const double md = dual_norm(g.norm, *m_[i]);
    const double r = radius_at(g.schedule, k, md);
    g.x = lmo_step(g.x, g.norm, *m_[i], r, backend_, ns_);
    info[i] = GroupStepInfo{md, r, md == 0.0};
  });
  ++k_;
  return info;
}

void Optimizer::set_initial_momentum(std::size_t group, Matrix m0) {
  if (group >= groups_.size())
    throw std::invalid_argument("set_initial_momentum: group out of range");
  if (m_[group].has_value())
    throw std::invalid_argument(
        "set_initial_momentum: momentum already initialized for group '" +
        groups_[group].id + "'");
  if (!m0.same_shape(groups_[group].x))
    throw std::invalid_argument("set_initial_momentum: shape mismatch");
  m_[group] = std::move(m0);
}

std::vector<Matrix> Optimizer::params() const {
  std::vector<Matrix> out;
  out.reserve(groups_.size());
  for (const auto& g : groups_) out.push_back(g.x);
  return out;
}

std::vector<std::string> preset_names() {
  return {"muon", "unscion_llm", "unscion_cnn", "normalized_gd", "sign_gd"};
}

std::string preset_description(const std::string& name) {
  if (name == "muon")
    return "spectral norm, scale 1 on every group (orthogonalized update)";
  if (name == "unscion_llm")
    return "hidden m x n: spectral, scale sqrt(n/m); head m x n: max-entry, "
           "scale n (sign update scaled by 1/n)";
  if (name == "unscion_cnn")
    return "bias of length c: euclidean, scale sqrt(1/c); conv c_out x "
           "(c_in*k^2): spectral, scale k^2*sqrt(c_in/c_out); head m x n: "
           "max-entry, scale n";
  if (name == "normalized_gd")
    return "euclidean norm, scale 1 on every group (normalized gradient)";
  if (name == "sign_gd")
    return "max-entry norm, scale 1 on every group (sign update)";
  throw std::invalid_argument("unknown preset '" + name + "'");
}

namespace {

NormSpec llm_norm(const GroupShape& s) {
  switch (s.role) {
    case GroupRole::Hidden:
      if (s.rows <= 0 || s.cols <= 0)
        throw std::invalid_argument("unscion_llm: hidden group needs a "
                                    "positive shape");
      return NormSpec{NormFamily::ScaledSpectral,
                      std::sqrt(static_cast<double>(s.cols) /
                                static_cast<double>(s.rows))};
    case GroupRole::Head:
      if (s.cols <= 0)
        throw std::invalid_argument("unscion_llm: head group needs columns");
      return NormSpec{NormFamily::ScaledMaxEntry,
                      static_cast<double>(s.cols)};
    default:
      throw std::invalid_argument(
          "unscion_llm: only hidden and head roles are supported");
  }
}

NormSpec cnn_norm(const GroupShape& s) {
  switch (s.role) {
    case GroupRole::Bias: {
      const std::int64_t len = s.rows * std::max<std::int64_t>(s.cols, 1);
      if (len <= 0 || (s.cols != 1 && s.rows != 1))
        throw std::invalid_argument("unscion_cnn: bias group must be a vector");
      return NormSpec{NormFamily::ScaledEuclidean,
                      std::sqrt(1.0 / static_cast<double>(len))};
    }
    case GroupRole::Conv: {
      if (s.conv_c_in <= 0 || s.conv_c_out <= 0 || s.conv_k <= 0)
        throw std::invalid_argument(
            "unscion_cnn: conv group needs c_in, c_out, k");
      if (s.rows != s.conv_c_out || s.cols != s.conv_c_in * s.conv_k * s.conv_k)
        throw std::invalid_argument(
            "unscion_cnn: conv group shape must be c_out x (c_in*k*k)");
      const double kk = static_cast<double>(s.conv_k * s.conv_k);
      return NormSpec{NormFamily::ScaledSpectral,
                      kk * std::sqrt(static_cast<double>(s.conv_c_in) /
                                     static_cast<double>(s.conv_c_out))};
    }
    case GroupRole::Head:
      if (s.cols <= 0)
        throw std::invalid_argument("unscion_cnn: head group needs columns");
      return NormSpec{NormFamily::ScaledMaxEntry,
                      static_cast<double>(s.cols)};
    default:
      throw std::invalid_argument(
          "unscion_cnn: only bias, conv and head roles are supported");
  }
}

}  // namespace

std::vector<NormSpec> preset_norms(const std::string& name,
                                   std::span<const GroupShape> shapes) {
  if (shapes.empty())
    throw std::invalid_argument("preset_norms: empty shape list");
  std::vector<NormSpec> out;
  out.reserve(shapes.size());
  if (name == "muon") {
    for (std::size_t i = 0; i < shapes.size(); ++i)
      out.push_back(NormSpec{NormFamily::ScaledSpectral, 1.0});
  } else if (name == "normalized_gd") {
    for (std::size_t i = 0; i < shapes.size(); ++i)
      out.push_back(NormSpec{NormFamily::ScaledEuclidean, 1.0});
  } else if (name == "sign_gd") {
    for (std::size_t i = 0; i < shapes.size(); ++i)
      out.push_back(NormSpec{NormFamily::ScaledMaxEntry, 1.0});
  } else if (name == "unscion_llm") {
    for (const auto& s : shapes) out.push_back(llm_norm(s));
  } else if (name == "unscion_cnn") {
    for (const auto& s : shapes) out.push_back(cnn_norm(s));
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return out;
}

GroupRole parse_group_role(const std::string& text) {
  if (text == "hidden") return GroupRole::Hidden;
  if (text == "head") return GroupRole::Head;
  if (text == "bias") return GroupRole::Bias;
  if (text == "conv") return GroupRole::Conv;
  throw std::invalid_argument("unknown group role '" + text + "'");
}

}  // namespace gluon
