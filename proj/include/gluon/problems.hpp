// Built-in synthetic objectives with known structure.
//
// layered_quadratic   f(X) = sum_i (c_i/2) |X_i - A_i|_F^2
//   Under unit-scale Euclidean group norms: L0_i = c_i, L1_i = 0,
//   PL constant mu = min_i c_i, infimum 0.
//
// cosh_separable      f(X) = sum_i c_i * sum_jl cosh(x_ijl)
//   Entrywise gradients c_i * sinh(x); grows fast enough that a nonzero
//   L1_i is needed for a trajectory-wide affine smoothness bound, which
//   is what makes it interesting for the estimator. Infimum is
//   sum_i c_i * (entries of group i), attained at X = 0.
//
// tiny_mlp            half mean squared error of a one-hidden-layer tanh
//   network W2 tanh(W1 x + b1) + b2 on a seeded synthetic regression
//   dataset; groups are w1, b1, w2, b2 (weights hidden, biases bias roles).
//   stoch_grad samples a minibatch of the given size with replacement.
//
// with_gaussian_noise wraps any objective so stoch_grad returns the exact
//   gradient plus i.i.d. Gaussian entries scaled conservatively so that
//   E |noise_i|_dual^2 <= sigma_target^2 for each group under the given
//   group norms.

#pragma once

#include <utility>

#include "gluon/norms.hpp"
#include "gluon/objective.hpp"

namespace gluon {

Objective layered_quadratic(std::vector<double> c, std::vector<Matrix> anchors);

Objective cosh_separable(std::vector<double> c,
                         std::vector<std::pair<std::int64_t, std::int64_t>> shapes);

Objective tiny_mlp(std::int64_t in_dim, std::int64_t hidden_dim,
                   std::int64_t out_dim, std::int64_t n_samples,
                   std::int64_t batch_size, std::uint64_t dataset_seed);

Objective with_gaussian_noise(Objective base, std::vector<NormSpec> norms,
                              double sigma_target, std::uint64_t noise_seed);

// The per-entry standard deviation that keeps E |noise|_dual^2 at or
// below sigma_target^2 for the given norm and shape (conservative
// closed-form calibration; exposed for tests).
double noise_entry_std(const NormSpec& spec, std::int64_t rows,
                       std::int64_t cols, double sigma_target);

}  // namespace gluon
