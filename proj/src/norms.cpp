#include "gluon/norms.hpp"

#include <stdexcept>

#include "gluon/svd.hpp"

namespace gluon {

namespace {

void check_spec(const NormSpec& spec) {
  if (!(spec.scale > 0.0))
    throw std::invalid_argument("NormSpec: scale must be > 0");
}

bool is_zero(const Matrix& x) {
  const double* p = x.data();
  for (std::int64_t i = 0; i < x.size(); ++i)
    if (p[i] != 0.0) return false;
  return true;
}

}  // namespace

const char* norm_family_name(NormFamily family) {
  switch (family) {
    case NormFamily::ScaledSpectral: return "spectral";
    case NormFamily::ScaledMaxEntry: return "max_entry";
    case NormFamily::ScaledEuclidean: return "euclidean";
  }
  throw std::invalid_argument("norm_family_name: unknown family");
}

double primal_norm(const NormSpec& spec, const Matrix& x) {
  check_spec(spec);
  switch (spec.family) {
    case NormFamily::ScaledSpectral: return spec.scale * spectral_norm(x);
    case NormFamily::ScaledMaxEntry: return spec.scale * max_abs_entry(x);
    case NormFamily::ScaledEuclidean: return spec.scale * frobenius_norm(x);
  }
  throw std::invalid_argument("primal_norm: unknown family");
}

double dual_norm(const NormSpec& spec, const Matrix& x) {
  check_spec(spec);
  switch (spec.family) {
    case NormFamily::ScaledSpectral: return nuclear_norm(x) / spec.scale;
    case NormFamily::ScaledMaxEntry: return entrywise_l1_norm(x) / spec.scale;
    case NormFamily::ScaledEuclidean: return frobenius_norm(x) / spec.scale;
  }
  throw std::invalid_argument("dual_norm: unknown family");
}

Matrix lmo_direction(const NormSpec& spec, const Matrix& g,
                     SpectralBackend backend, const NewtonSchulzOptions& ns) {
  check_spec(spec);
  if (!g.all_finite())
    throw std::invalid_argument("lmo_direction: non-finite gradient");
  if (is_zero(g)) return Matrix(g.rows(), g.cols());

  const double inv = -1.0 / spec.scale;
  switch (spec.family) {
    case NormFamily::ScaledSpectral: {
      if (backend == SpectralBackend::NewtonSchulz)
        return inv * ns_orthogonalize(g, ns);
      const ReducedSvd svd = reduced_svd(g);
      return inv * matmul_abt(svd.u, svd.v);
    }
    case NormFamily::ScaledMaxEntry:
      return inv * sign(g);
    case NormFamily::ScaledEuclidean:
      return (inv / frobenius_norm(g)) * g;
  }
  throw std::invalid_argument("lmo_direction: unknown family");
}

Matrix lmo_step(const Matrix& x, const NormSpec& spec, const Matrix& g,
                double radius, SpectralBackend backend,
                const NewtonSchulzOptions& ns) {
  if (!(radius >= 0.0))
    throw std::invalid_argument("lmo_step: radius must be >= 0");
  if (!x.same_shape(g))
    throw std::invalid_argument("lmo_step: x/g shape mismatch " +
                                x.shape_str() + " vs " + g.shape_str());
  return add_scaled(1.0, x, radius, lmo_direction(spec, g, backend, ns));
}

double max_norm(std::span<const NormSpec> specs, std::span<const Matrix> xs) {
  if (specs.empty() || specs.size() != xs.size())
    throw std::invalid_argument("max_norm: empty or mismatched group lists");
  double m = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i)
    m = std::max(m, primal_norm(specs[i], xs[i]));
  return m;
}

double max_norm_dual(std::span<const NormSpec> specs,
                     std::span<const Matrix> xs) {
  if (specs.empty() || specs.size() != xs.size())
    throw std::invalid_argument(
        "max_norm_dual: empty or mismatched group lists");
  double s = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i)
    s += dual_norm(specs[i], xs[i]);
  return s;
}

}  // namespace gluon
