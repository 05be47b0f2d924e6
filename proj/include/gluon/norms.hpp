// Scaled group norms and their linear minimization oracles.
//
// Each group norm is a positive multiple of a base norm:
//   ScaledSpectral  : scale * (largest singular value)
//   ScaledMaxEntry  : scale * max_ij |x_ij|
//   ScaledEuclidean : scale * Frobenius norm
// The dual of scale * |.| is (1/scale) * |.|_dual, with dual pairs
// spectral <-> nuclear, max-entry <-> entrywise l1, Frobenius <-> itself.
//
// lmo_direction(spec, g) returns the minimizer of <g, d> over the unit
// ball of the primal norm, so <g, lmo_direction(g)> == -dual_norm(g) and
// the minimizer sits on the ball boundary whenever g != 0. A zero
// gradient returns the zero direction (frozen step).

#pragma once

#include <span>

#include "gluon/matrix.hpp"
#include "gluon/newton_schulz.hpp"

namespace gluon {

enum class NormFamily { ScaledSpectral, ScaledMaxEntry, ScaledEuclidean };

struct NormSpec {
  NormFamily family = NormFamily::ScaledEuclidean;
  double scale = 1.0;  // must be > 0
};

// Backend for the spectral LMO: exact reduced SVD, or the Newton-Schulz
// approximation (cheaper, inexact within its documented band).
enum class SpectralBackend { Exact, NewtonSchulz };

const char* norm_family_name(NormFamily family);

double primal_norm(const NormSpec& spec, const Matrix& x);
double dual_norm(const NormSpec& spec, const Matrix& x);

Matrix lmo_direction(const NormSpec& spec, const Matrix& g,
                     SpectralBackend backend = SpectralBackend::Exact,
                     const NewtonSchulzOptions& ns = {});

// x + radius * lmo_direction(spec, g); radius must be >= 0.
Matrix lmo_step(const Matrix& x, const NormSpec& spec, const Matrix& g,
                double radius,
                SpectralBackend backend = SpectralBackend::Exact,
                const NewtonSchulzOptions& ns = {});

// Product-space norms over a nonempty list of groups: the max of the
// per-group primal norms, and its dual, the sum of per-group duals.
double max_norm(std::span<const NormSpec> specs, std::span<const Matrix> xs);
double max_norm_dual(std::span<const NormSpec> specs,
                     std::span<const Matrix> xs);

}  // namespace gluon
