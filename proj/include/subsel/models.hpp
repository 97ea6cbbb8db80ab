// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBSEL_MODELS_HPP_
#define SUBSEL_MODELS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "subsel/dataset.hpp"
#include "subsel/error.hpp"

namespace subsel {

// ---------------------------------------------------------------------------
// k-nearest neighbors

struct KnnConfig {
  std::size_t k = 5;
};

// Majority vote among the k training points nearest to `query` (euclidean).
// Equal distances rank the lower training index nearer; tied votes go to the
// smallest label.
inline int knn_predict(const LabeledDataset& train,
                       std::span<const float> query, const KnnConfig& cfg) {
  const std::size_t n = train.size();
  detail::require(n >= 1, "kNN training set is empty");
  detail::require(cfg.k >= 1 && cfg.k <= n, "k=", cfg.k,
                  " outside [1, ", n, "]");
  detail::require(query.size() == train.dim(), "query has dimension ",
                  query.size(), ", training set has ", train.dim());

  std::vector<std::pair<double, Index>> dist(n);
  for (Index i = 0; i < n; ++i) {
    auto row = train.features.row(i);
    double ss = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      double diff = static_cast<double>(row[j]) - static_cast<double>(query[j]);
      ss += diff * diff;
    }
    dist[i] = {ss, i};
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(cfg.k),
                    dist.end());
  std::vector<std::size_t> votes(
      static_cast<std::size_t>(train.num_classes()), 0);
  for (std::size_t t = 0; t < cfg.k; ++t) {
    ++votes[static_cast<std::size_t>(train.labels[dist[t].second])];
  }
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                          votes.begin());
}

inline double knn_accuracy(const LabeledDataset& train,
                           const LabeledDataset& holdout,
                           const KnnConfig& cfg) {
  detail::require(holdout.size() >= 1, "holdout set is empty");
  detail::require(holdout.dim() == train.dim(), "holdout dimension ",
                  holdout.dim(), " differs from training dimension ",
                  train.dim());
  std::size_t correct = 0;
  for (Index i = 0; i < holdout.size(); ++i) {
    if (knn_predict(train, holdout.features.row(i), cfg) == holdout.labels[i]) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(holdout.size());
}

// ---------------------------------------------------------------------------
// Multinomial logistic regression

// Class posterior; entries in [0,1] summing to 1.
using ProbabilityVector = std::vector<double>;

inline void validate_probabilities(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    detail::require(v >= 0.0 && v <= 1.0, "probability ", v,
                    " outside [0,1]");
    sum += v;
  }
  detail::require(std::abs(sum - 1.0) <= 1e-9, "probabilities sum to ", sum);
}

struct LogRegConfig {
  double l2 = 1e-2;
  double tol = 1e-6;
  std::size_t max_iters = 2000;
  // Parameters start at zero, so the seed does not change the result today.
  std::uint64_t seed = 0;
};

struct LogRegModel {
  std::size_t classes = 0;
  std::size_t dim = 0;
  std::vector<double> weights;  // classes x dim, row-major
  std::vector<double> bias;     // classes
  double l2 = 0.0;
  std::size_t trained_on = 0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> loss_history;  // objective after each accepted step

  static LogRegModel zeros(std::size_t classes, std::size_t dim) {
    LogRegModel m;
    m.classes = classes;
    m.dim = dim;
    m.weights.assign(classes * dim, 0.0);
    m.bias.assign(classes, 0.0);
    return m;
  }
};

namespace detail {

// Numerically stable softmax, in place.
inline void softmax(std::span<double> z) {
  double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

inline std::size_t present_classes(const LabelVector& labels) {
  auto counts = labels.class_counts();
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(),
                    [](std::size_t c) { return c > 0; }));
}

}  // namespace detail

// Objective (1/N) sum_n -log p(y_n | x_n) + (l2/2) ||W||^2 at the packed
// parameters [W (C x d, row-major), b (C)]. Writes the gradient into `grad`
// when it is non-empty. The bias is not regularized.
inline double logreg_objective(const LabeledDataset& train,
                               std::span<const double> params, double l2,
                               std::span<double> grad) {
  const std::size_t n = train.size();
  const std::size_t d = train.dim();
  const auto c_count = static_cast<std::size_t>(train.num_classes());
  detail::require(params.size() == c_count * (d + 1), "expected ",
                  c_count * (d + 1), " parameters, got ", params.size());
  const bool want_grad = !grad.empty();
  if (want_grad) {
    detail::require(grad.size() == params.size(), "gradient buffer size ",
                    grad.size(), " != ", params.size());
    std::fill(grad.begin(), grad.end(), 0.0);
  }
  const double* w = params.data();
  const double* b = params.data() + c_count * d;
  std::vector<double> z(c_count);
  double loss = 0.0;
  for (Index i = 0; i < n; ++i) {
    auto x = train.features.row(i);
    for (std::size_t c = 0; c < c_count; ++c) {
      double s = b[c];
      const double* wc = w + c * d;
      for (std::size_t j = 0; j < d; ++j) s += wc[j] * static_cast<double>(x[j]);
      z[c] = s;
    }
    const auto y = static_cast<std::size_t>(train.labels[i]);
    double mx = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - mx);
    loss += (mx + std::log(sum)) - z[y];
    if (want_grad) {
      for (std::size_t c = 0; c < c_count; ++c) {
        double r = std::exp(z[c] - mx) / sum - (c == y ? 1.0 : 0.0);
        double* gc = grad.data() + c * d;
        for (std::size_t j = 0; j < d; ++j) gc[j] += r * static_cast<double>(x[j]);
        grad[c_count * d + c] += r;
      }
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  double reg = 0.0;
  for (std::size_t k = 0; k < c_count * d; ++k) reg += w[k] * w[k];
  if (want_grad) {
    for (std::size_t k = 0; k < c_count * d; ++k) {
      grad[k] = grad[k] * inv_n + l2 * w[k];
    }
    for (std::size_t c = 0; c < c_count; ++c) grad[c_count * d + c] *= inv_n;
  }
  return loss * inv_n + 0.5 * l2 * reg;
}

// Full-batch gradient descent from zero parameters. Steps are scaled per
// parameter block by the inverse of a curvature bound (0.5 mean||x||^2 + l2
// for weights, 0.5 for biases) times a global factor that halves whenever a
// step would raise the objective, so the objective never increases.
// Stops when max |gradient| <= tol or after max_iters steps.
inline LogRegModel logreg_fit(const LabeledDataset& train,
                              const LogRegConfig& cfg = {}) {
  detail::require(train.size() >= 1, "logistic regression training set is empty");
  detail::require(detail::present_classes(train.labels) >= 2,
                  "logistic regression needs at least two classes in the "
                  "training set");
  detail::require(cfg.l2 >= 0.0 && std::isfinite(cfg.l2),
                  "l2 must be finite and >= 0, got ", cfg.l2);
  const std::size_t d = train.dim();
  const auto c_count = static_cast<std::size_t>(train.num_classes());
  const std::size_t wsize = c_count * d;
  const std::size_t psize = wsize + c_count;

  double mean_sq = 0.0;
  for (Index i = 0; i < train.size(); ++i) {
    for (float v : train.features.row(i)) {
      mean_sq += static_cast<double>(v) * static_cast<double>(v);
    }
  }
  mean_sq /= static_cast<double>(train.size());
  const double w_step = 1.0 / (0.5 * mean_sq + cfg.l2 + 1e-12);
  const double b_step = 1.0 / 0.5;

  std::vector<double> params(psize, 0.0), grad(psize), trial(psize);
  double loss = logreg_objective(train, params, cfg.l2, grad);
  double scale = 1.0;
  LogRegModel model = LogRegModel::zeros(c_count, d);
  model.l2 = cfg.l2;
  model.trained_on = train.size();
  model.loss_history.push_back(loss);

  auto max_abs = [](std::span<const double> g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  };

  std::size_t iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    if (max_abs(grad) <= cfg.tol) {
      model.converged = true;
      break;
    }
    bool accepted = false;
    double trial_loss = loss;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t k = 0; k < psize; ++k) {
        double step = (k < wsize ? w_step : b_step) * scale;
        trial[k] = params[k] - step * grad[k];
      }
      trial_loss = logreg_objective(train, trial, cfg.l2, {});
      if (trial_loss <= loss) {
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) {
      // No descent left at floating-point resolution.
      model.converged = true;
      break;
    }
    params.swap(trial);
    loss = logreg_objective(train, params, cfg.l2, grad);
    model.loss_history.push_back(loss);
    scale = std::min(scale * 1.5, 16.0);
  }
  model.iterations = iter;
  std::copy(params.begin(), params.begin() + static_cast<long>(wsize),
            model.weights.begin());
  std::copy(params.begin() + static_cast<long>(wsize), params.end(),
            model.bias.begin());
  return model;
}

inline ProbabilityVector logreg_predict_proba(const LogRegModel& m,
                                              std::span<const float> x) {
  detail::require(x.size() == m.dim, "input has dimension ", x.size(),
                  ", model expects ", m.dim);
  ProbabilityVector z(m.classes);
  for (std::size_t c = 0; c < m.classes; ++c) {
    double s = m.bias[c];
    const double* wc = m.weights.data() + c * m.dim;
    for (std::size_t j = 0; j < m.dim; ++j) s += wc[j] * static_cast<double>(x[j]);
    z[c] = s;
  }
  detail::softmax(z);
  return z;
}

// Arg-max class, smallest label on ties.
inline int logreg_predict(const LogRegModel& m, std::span<const float> x) {
  auto p = logreg_predict_proba(m, x);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

inline double logreg_accuracy(const LogRegModel& m,
                              const LabeledDataset& holdout) {
  detail::require(holdout.size() >= 1, "holdout set is empty");
  std::size_t correct = 0;
  for (Index i = 0; i < holdout.size(); ++i) {
    if (logreg_predict(m, holdout.features.row(i)) == holdout.labels[i]) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(holdout.size());
}

}  // namespace subsel

#endif  // SUBSEL_MODELS_HPP_
