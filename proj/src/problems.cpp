#include "gluon/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "gluon/rng.hpp"

namespace gluon {

namespace {

std::string group_name(const char* base, std::size_t i) {
  return std::string(base) + std::to_string(i);
}

void check_coeffs(const std::vector<double>& c) {
  if (c.empty())
    throw std::invalid_argument("objective: group coefficient list is empty");
  for (double v : c)
    if (!(v > 0.0))
      throw std::invalid_argument("objective: coefficients must be > 0");
}

// mt19937_64 seeded from two 64-bit values through std::seed_seq (whose
// output is fully specified by the standard).
std::mt19937_64 seeded(std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

std::int64_t sample_index(std::mt19937_64& gen, std::int64_t n) {
  const auto idx = static_cast<std::int64_t>(uniform01(gen) *
                                             static_cast<double>(n));
  return std::min(idx, n - 1);
}

}  // namespace

Objective layered_quadratic(std::vector<double> c,
                            std::vector<Matrix> anchors) {
  check_coeffs(c);
  if (anchors.size() != c.size())
    throw std::invalid_argument(
        "layered_quadratic: need one anchor per coefficient");
  for (const auto& a : anchors)
    if (a.size() == 0)
      throw std::invalid_argument("layered_quadratic: empty anchor matrix");

  Objective obj;
  for (std::size_t i = 0; i < c.size(); ++i)
    obj.groups.push_back(
        GroupInfo{group_name("g", i), anchors[i].rows(), anchors[i].cols()});

  auto coeffs = std::make_shared<std::vector<double>>(std::move(c));
  auto A = std::make_shared<std::vector<Matrix>>(std::move(anchors));

  obj.value = [coeffs, A](std::span<const Matrix> x) {
    double f = 0.0;
    for (std::size_t i = 0; i < coeffs->size(); ++i) {
      const Matrix d = x[i] - (*A)[i];
      f += 0.5 * (*coeffs)[i] * frobenius_dot(d, d);
    }
    return f;
  };
  obj.grad = [coeffs, A](std::span<const Matrix> x) {
    std::vector<Matrix> g;
    g.reserve(coeffs->size());
    for (std::size_t i = 0; i < coeffs->size(); ++i)
      g.push_back((*coeffs)[i] * (x[i] - (*A)[i]));
    return g;
  };

  obj.meta.l0 = *coeffs;
  obj.meta.l1 = std::vector<double>(coeffs->size(), 0.0);
  obj.meta.mu = *std::min_element(coeffs->begin(), coeffs->end());
  obj.meta.f_inf = 0.0;
  obj.meta.notes =
      "separable quadratic; constants hold under unit-scale euclidean "
      "group norms";
  return obj;
}

Objective cosh_separable(
    std::vector<double> c,
    std::vector<std::pair<std::int64_t, std::int64_t>> shapes) {
  check_coeffs(c);
  if (shapes.size() != c.size())
    throw std::invalid_argument("cosh_separable: need one shape per group");
  for (const auto& [m, n] : shapes)
    if (m <= 0 || n <= 0)
      throw std::invalid_argument("cosh_separable: shapes must be positive");

  Objective obj;
  double f_inf = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    obj.groups.push_back(
        GroupInfo{group_name("g", i), shapes[i].first, shapes[i].second});
    f_inf += c[i] * static_cast<double>(shapes[i].first * shapes[i].second);
  }

  auto coeffs = std::make_shared<std::vector<double>>(std::move(c));

  obj.value = [coeffs](std::span<const Matrix> x) {
    double f = 0.0;
    for (std::size_t i = 0; i < coeffs->size(); ++i) {
      const double* p = x[i].data();
      double s = 0.0;
      for (std::int64_t j = 0; j < x[i].size(); ++j) s += std::cosh(p[j]);
      f += (*coeffs)[i] * s;
    }
    return f;
  };
  obj.grad = [coeffs](std::span<const Matrix> x) {
    std::vector<Matrix> g;
    g.reserve(coeffs->size());
    for (std::size_t i = 0; i < coeffs->size(); ++i) {
      Matrix gi(x[i].rows(), x[i].cols());
      const double* p = x[i].data();
      double* q = gi.data();
      for (std::int64_t j = 0; j < x[i].size(); ++j)
        q[j] = (*coeffs)[i] * std::sinh(p[j]);
      g.push_back(std::move(gi));
    }
    return g;
  };

  // Along any segment the Hessian block is diag(c_i cosh x) and
  // c_i*cosh(x) <= c_i + |c_i sinh(x)|, so (c_i, 1) is the natural
  // affine smoothness reference under euclidean group norms.
  obj.meta.l0 = *coeffs;
  obj.meta.l1 = std::vector<double>(coeffs->size(), 1.0);
  obj.meta.f_inf = f_inf;
  obj.meta.notes =
      "entrywise cosh; (l0, l1) = (c_i, 1) is a local reference, not a "
      "certified global constant";
  return obj;
}

namespace {

struct MlpData {
  std::int64_t in, hidden, out, n;
  Matrix xs;  // n x in
  Matrix ys;  // n x out
};

// params order: w1 (hidden x in), b1 (hidden x 1), w2 (out x hidden),
// b2 (out x 1). Returns 0.5 * mean over the index set of |y_hat - y|^2,
// and accumulates gradients when grads != nullptr.
double mlp_eval(const MlpData& d, std::span<const Matrix> p,
                std::span<const std::int64_t> idx,
                std::vector<Matrix>* grads) {
  const Matrix& w1 = p[0];
  const Matrix& b1 = p[1];
  const Matrix& w2 = p[2];
  const Matrix& b2 = p[3];
  const double inv = 1.0 / static_cast<double>(idx.size());

  std::vector<double> z1(d.hidden), a1(d.hidden), r(d.out), delta(d.hidden);
  double f = 0.0;
  for (std::int64_t j : idx) {
    for (std::int64_t h = 0; h < d.hidden; ++h) {
      double s = b1(h, 0);
      for (std::int64_t i = 0; i < d.in; ++i) s += w1(h, i) * d.xs(j, i);
      z1[h] = s;
      a1[h] = std::tanh(s);
    }
    for (std::int64_t o = 0; o < d.out; ++o) {
      double s = b2(o, 0);
      for (std::int64_t h = 0; h < d.hidden; ++h) s += w2(o, h) * a1[h];
      r[o] = s - d.ys(j, o);
      f += 0.5 * r[o] * r[o];
    }
    if (grads) {
      Matrix& gw1 = (*grads)[0];
      Matrix& gb1 = (*grads)[1];
      Matrix& gw2 = (*grads)[2];
      Matrix& gb2 = (*grads)[3];
      for (std::int64_t h = 0; h < d.hidden; ++h) {
        double s = 0.0;
        for (std::int64_t o = 0; o < d.out; ++o) s += w2(o, h) * r[o];
        delta[h] = s * (1.0 - a1[h] * a1[h]);
      }
      for (std::int64_t o = 0; o < d.out; ++o) {
        gb2(o, 0) += inv * r[o];
        for (std::int64_t h = 0; h < d.hidden; ++h)
          gw2(o, h) += inv * r[o] * a1[h];
      }
      for (std::int64_t h = 0; h < d.hidden; ++h) {
        gb1(h, 0) += inv * delta[h];
        for (std::int64_t i = 0; i < d.in; ++i)
          gw1(h, i) += inv * delta[h] * d.xs(j, i);
      }
    }
  }
  return f * inv;
}

std::vector<Matrix> mlp_zero_grads(const MlpData& d) {
  std::vector<Matrix> g;
  g.emplace_back(d.hidden, d.in);
  g.emplace_back(d.hidden, 1);
  g.emplace_back(d.out, d.hidden);
  g.emplace_back(d.out, 1);
  return g;
}

}  // namespace

Objective tiny_mlp(std::int64_t in_dim, std::int64_t hidden_dim,
                   std::int64_t out_dim, std::int64_t n_samples,
                   std::int64_t batch_size, std::uint64_t dataset_seed) {
  if (in_dim <= 0 || hidden_dim <= 0 || out_dim <= 0)
    throw std::invalid_argument("tiny_mlp: dimensions must be positive");
  if (n_samples <= 0)
    throw std::invalid_argument("tiny_mlp: need at least one sample");
  if (batch_size <= 0 || batch_size > n_samples)
    throw std::invalid_argument("tiny_mlp: batch size must be in [1, n]");

  // Teacher weights first, then samples, all from one seeded stream so
  // the dataset is a pure function of (shape, dataset_seed).
  std::mt19937_64 gen = seeded(dataset_seed, 0x746d6c70 /* "tmlp" */);
  const double w_scale = 1.0 / std::sqrt(static_cast<double>(in_dim));
  const double v_scale = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  const Matrix w1t = random_gaussian(hidden_dim, in_dim, gen, w_scale);
  const Matrix b1t = random_gaussian(hidden_dim, 1, gen, 0.1);
  const Matrix w2t = random_gaussian(out_dim, hidden_dim, gen, v_scale);
  const Matrix b2t = random_gaussian(out_dim, 1, gen, 0.1);

  auto data = std::make_shared<MlpData>();
  data->in = in_dim;
  data->hidden = hidden_dim;
  data->out = out_dim;
  data->n = n_samples;
  data->xs = random_gaussian(n_samples, in_dim, gen);
  data->ys = Matrix(n_samples, out_dim);
  for (std::int64_t j = 0; j < n_samples; ++j) {
    for (std::int64_t h = 0; h < hidden_dim; ++h) {
      double s = b1t(h, 0);
      for (std::int64_t i = 0; i < in_dim; ++i) s += w1t(h, i) * data->xs(j, i);
      const double a = std::tanh(s);
      for (std::int64_t o = 0; o < out_dim; ++o)
        data->ys(j, o) += w2t(o, h) * a;
    }
    for (std::int64_t o = 0; o < out_dim; ++o) data->ys(j, o) += b2t(o, 0);
  }

  Objective obj;
  obj.groups = {GroupInfo{"w1", hidden_dim, in_dim},
                GroupInfo{"b1", hidden_dim, 1},
                GroupInfo{"w2", out_dim, hidden_dim},
                GroupInfo{"b2", out_dim, 1}};

  std::vector<std::int64_t> all(n_samples);
  for (std::int64_t j = 0; j < n_samples; ++j) all[j] = j;
  auto all_idx = std::make_shared<std::vector<std::int64_t>>(std::move(all));

  obj.value = [data, all_idx](std::span<const Matrix> p) {
    return mlp_eval(*data, p, *all_idx, nullptr);
  };
  obj.grad = [data, all_idx](std::span<const Matrix> p) {
    std::vector<Matrix> g = mlp_zero_grads(*data);
    mlp_eval(*data, p, *all_idx, &g);
    return g;
  };
  const std::uint64_t ds = dataset_seed;
  obj.stoch_grad = [data, all_idx, batch_size, ds](std::span<const Matrix> p,
                                                   std::uint64_t seed) {
    std::vector<Matrix> g = mlp_zero_grads(*data);
    if (batch_size == data->n) {
      // Degenerate minibatch: the full dataset, no resampling.
      mlp_eval(*data, p, *all_idx, &g);
      return g;
    }
    std::mt19937_64 gen = seeded(ds, seed);
    std::vector<std::int64_t> idx(batch_size);
    for (std::int64_t j = 0; j < batch_size; ++j)
      idx[j] = sample_index(gen, data->n);
    mlp_eval(*data, p, idx, &g);
    return g;
  };
  obj.meta.notes =
      "one-hidden-layer tanh regressor on a seeded teacher dataset; "
      "minibatches are drawn with replacement (unbiased)";
  return obj;
}

double noise_entry_std(const NormSpec& spec, std::int64_t rows,
                       std::int64_t cols, double sigma_target) {
  if (!(sigma_target >= 0.0))
    throw std::invalid_argument("noise_entry_std: sigma_target must be >= 0");
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("noise_entry_std: shape must be positive");
  const double mn = static_cast<double>(rows) * static_cast<double>(cols);
  switch (spec.family) {
    case NormFamily::ScaledEuclidean:
      // E |N/scale|_F^2 = mn s^2 / scale^2
      return sigma_target * spec.scale / std::sqrt(mn);
    case NormFamily::ScaledMaxEntry:
      // E (|N|_1 / scale)^2 <= (mn s)^2 / scale^2 by Cauchy-Schwarz
      return sigma_target * spec.scale / mn;
    case NormFamily::ScaledSpectral: {
      // nuclear <= sqrt(min(m,n)) * Frobenius
      const double r = static_cast<double>(std::min(rows, cols));
      return sigma_target * spec.scale / std::sqrt(r * mn);
    }
  }
  throw std::invalid_argument("noise_entry_std: unknown family");
}

Objective with_gaussian_noise(Objective base, std::vector<NormSpec> norms,
                              double sigma_target, std::uint64_t noise_seed) {
  if (norms.size() != base.groups.size())
    throw std::invalid_argument(
        "with_gaussian_noise: need one norm spec per group");
  if (!(sigma_target >= 0.0))
    throw std::invalid_argument(
        "with_gaussian_noise: sigma_target must be >= 0");

  std::vector<double> stds(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i)
    stds[i] = noise_entry_std(norms[i], base.groups[i].rows,
                              base.groups[i].cols, sigma_target);

  Objective obj = base;  // groups, value, grad, meta carried over
  auto grad_fn = base.grad;
  auto stds_sh = std::make_shared<std::vector<double>>(std::move(stds));
  obj.stoch_grad = [grad_fn, stds_sh, noise_seed](std::span<const Matrix> x,
                                                  std::uint64_t seed) {
    std::vector<Matrix> g = grad_fn(x);
    std::mt19937_64 gen = seeded(noise_seed, seed);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double s = (*stds_sh)[i];
      if (s == 0.0) continue;
      double* p = g[i].data();
      for (std::int64_t j = 0; j < g[i].size(); ++j) p[j] += s * gaussian(gen);
    }
    return g;
  };
  obj.meta.sigma_bound = sigma_target;
  if (!obj.meta.notes.empty()) obj.meta.notes += "; ";
  obj.meta.notes +=
      "gaussian gradient noise calibrated so E dual-norm^2 <= sigma^2 "
      "per group";
  return obj;
}

}  // namespace gluon
