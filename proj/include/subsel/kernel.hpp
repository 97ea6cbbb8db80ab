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

#ifndef SUBSEL_KERNEL_HPP_
#define SUBSEL_KERNEL_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "subsel/dataset.hpp"
#include "subsel/error.hpp"

namespace subsel {

// Pairwise similarity in [0,1] over a ground set of size n, with s_ii = 1.
//
// Dense kernels are symmetric n x n matrices. Sparse kernels keep, per row,
// the kappa largest off-diagonal entries; absent entries read as 0 and the
// diagonal is implicitly 1. A sparse kernel is in general not symmetric:
// at(i, j) is row i's view of j.
class SimilarityKernel {
 public:
  struct Entry {
    Index index;
    double value;
  };

  SimilarityKernel() = default;

  static SimilarityKernel dense(std::size_t n, std::vector<double> values) {
    detail::require(values.size() == n * n, "dense kernel expects ", n * n,
                    " entries, got ", values.size());
    SimilarityKernel k;
    k.n_ = n;
    k.dense_ = std::move(values);
    for (std::size_t i = 0; i < n; ++i) {
      detail::require(k.dense_[i * n + i] == 1.0, "kernel diagonal at ", i,
                      " is not 1");
      for (std::size_t j = 0; j < n; ++j) {
        double v = k.dense_[i * n + j];
        detail::require(v >= 0.0 && v <= 1.0, "similarity (", i, ",", j,
                        ") = ", v, " outside [0,1]");
        detail::require(v == k.dense_[j * n + i], "dense kernel not symmetric "
                        "at (", i, ",", j, ")");
      }
    }
    return k;
  }

  // `rows[i]` holds row i's off-diagonal entries sorted by index.
  static SimilarityKernel sparse(std::size_t n,
                                 std::vector<std::vector<Entry>> rows) {
    detail::require(rows.size() == n, "sparse kernel expects ", n, " rows");
    SimilarityKernel k;
    k.n_ = n;
    k.sparse_ = true;
    k.columns_.assign(n, {});
    for (Index i = 0; i < n; ++i) k.columns_[i].push_back({i, 1.0});
    for (Index i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < rows[i].size(); ++t) {
        const auto& e = rows[i][t];
        detail::require(e.index < n && e.index != i,
                        "sparse row ", i, " has invalid column ", e.index);
        detail::require(t == 0 || rows[i][t - 1].index < e.index,
                        "sparse row ", i, " is not sorted by index");
        detail::require(e.value >= 0.0 && e.value <= 1.0, "similarity (", i,
                        ",", e.index, ") = ", e.value, " outside [0,1]");
        k.columns_[e.index].push_back({i, e.value});
      }
    }
    for (auto& col : k.columns_) {
      std::sort(col.begin(), col.end(),
                [](const Entry& a, const Entry& b) { return a.index < b.index; });
    }
    k.rows_ = std::move(rows);
    return k;
  }

  std::size_t size() const { return n_; }
  bool is_sparse() const { return sparse_; }

  double at(Index i, Index j) const {
    if (!sparse_) return dense_[i * n_ + j];
    if (i == j) return 1.0;
    const auto& r = rows_[i];
    auto it = std::lower_bound(
        r.begin(), r.end(), j,
        [](const Entry& e, Index idx) { return e.index < idx; });
    return (it != r.end() && it->index == j) ? it->value : 0.0;
  }

  // Stored off-diagonal entries of row i (sparse kernels only).
  std::span<const Entry> row_entries(Index i) const { return rows_[i]; }

  // Calls fn(i, s_ie) for every i with a stored (possibly zero) similarity to
  // e, in ascending i. Dense kernels visit every i.
  template <typename Fn>
  void for_each_in_column(Index e, Fn&& fn) const {
    if (!sparse_) {
      // Symmetric, so column e is row e.
      const double* col = dense_.data() + e * n_;
      for (Index i = 0; i < n_; ++i) fn(i, col[i]);
      return;
    }
    for (const auto& entry : columns_[e]) fn(entry.index, entry.value);
  }

 private:
  std::size_t n_ = 0;
  bool sparse_ = false;
  std::vector<double> dense_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<Entry>> columns_;
};

// Dense symmetric nonnegative distances with zero diagonal.
class DistanceKernel {
 public:
  DistanceKernel() = default;

  DistanceKernel(std::size_t n, std::vector<double> values)
      : n_(n), values_(std::move(values)) {
    detail::require(values_.size() == n_ * n_, "distance kernel expects ",
                    n_ * n_, " entries, got ", values_.size());
    for (std::size_t i = 0; i < n_; ++i) {
      detail::require(values_[i * n_ + i] == 0.0, "distance diagonal at ", i,
                      " is not 0");
      for (std::size_t j = 0; j < n_; ++j) {
        double v = values_[i * n_ + j];
        detail::require(std::isfinite(v) && v >= 0.0, "distance (", i, ",", j,
                        ") = ", v, " is not finite and nonnegative");
        detail::require(v == values_[j * n_ + i],
                        "distance kernel not symmetric at (", i, ",", j, ")");
      }
    }
  }

  // Distances between points on a line; handy for small fixtures.
  static DistanceKernel from_line(std::span<const double> positions) {
    const std::size_t n = positions.size();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        v[i * n + j] = v[j * n + i] = std::abs(positions[i] - positions[j]);
      }
    }
    return DistanceKernel(n, std::move(v));
  }

  std::size_t size() const { return n_; }
  double at(Index i, Index j) const { return values_[i * n_ + j]; }
  std::span<const double> row(Index i) const {
    return {values_.data() + i * n_, n_};
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

namespace detail {

inline std::vector<Index> all_rows(const FeatureMatrix& m) {
  std::vector<Index> rows(m.rows());
  for (Index i = 0; i < rows.size(); ++i) rows[i] = i;
  return rows;
}

inline double dot(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s += static_cast<double>(a[k]) * static_cast<double>(b[k]);
  }
  return s;
}

}  // namespace detail

// Shifted cosine similarity (1 + cos) / 2 over the listed rows. Kernel index
// t corresponds to feature row rows[t].
inline SimilarityKernel cosine_similarity(const FeatureMatrix& m,
                                          std::span<const Index> rows) {
  const std::size_t n = rows.size();
  detail::require(n >= 1, "cosine kernel needs at least one row");
  std::vector<double> norms(n);
  for (std::size_t t = 0; t < n; ++t) {
    detail::require(rows[t] < m.rows(), "row index ", rows[t],
                    " out of range (n=", m.rows(), ")");
    auto r = m.row(rows[t]);
    norms[t] = std::sqrt(detail::dot(r, r));
    detail::require(norms[t] > 0.0, "row ", rows[t],
                    " is the zero vector; cosine similarity is undefined");
  }
  std::vector<double> s(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    s[a * n + a] = 1.0;
    auto ra = m.row(rows[a]);
    for (std::size_t b = a + 1; b < n; ++b) {
      double cos = detail::dot(ra, m.row(rows[b])) / (norms[a] * norms[b]);
      double v = std::clamp(0.5 * (1.0 + cos), 0.0, 1.0);
      s[a * n + b] = v;
      s[b * n + a] = v;
    }
  }
  return SimilarityKernel::dense(n, std::move(s));
}

inline SimilarityKernel cosine_similarity(const FeatureMatrix& m) {
  auto rows = detail::all_rows(m);
  return cosine_similarity(m, rows);
}

inline DistanceKernel euclidean_distance(const FeatureMatrix& m,
                                         std::span<const Index> rows) {
  const std::size_t n = rows.size();
  detail::require(n >= 1, "distance kernel needs at least one row");
  for (Index r : rows) {
    detail::require(r < m.rows(), "row index ", r, " out of range (n=",
                    m.rows(), ")");
  }
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    auto ra = m.row(rows[a]);
    for (std::size_t b = a + 1; b < n; ++b) {
      auto rb = m.row(rows[b]);
      double ss = 0.0;
      for (std::size_t k = 0; k < ra.size(); ++k) {
        double diff = static_cast<double>(ra[k]) - static_cast<double>(rb[k]);
        ss += diff * diff;
      }
      double v = std::sqrt(ss);
      dist[a * n + b] = v;
      dist[b * n + a] = v;
    }
  }
  return DistanceKernel(n, std::move(dist));
}

inline DistanceKernel euclidean_distance(const FeatureMatrix& m) {
  auto rows = detail::all_rows(m);
  return euclidean_distance(m, rows);
}

// Nearest-neighbor graph approximation: each row keeps its kappa largest
// off-diagonal similarities, ties going to the lower column index.
inline SimilarityKernel sparsify_knn(const SimilarityKernel& k,
                                     std::size_t kappa) {
  const std::size_t n = k.size();
  detail::require(!k.is_sparse(), "sparsify_knn expects a dense kernel");
  detail::require(n >= 2 && kappa >= 1 && kappa <= n - 1, "kappa ", kappa,
                  " outside [1, ", n == 0 ? 0 : n - 1, "]");
  std::vector<std::vector<SimilarityKernel::Entry>> rows(n);
  std::vector<SimilarityKernel::Entry> cand;
  for (Index i = 0; i < n; ++i) {
    cand.clear();
    for (Index j = 0; j < n; ++j) {
      if (j != i) cand.push_back({j, k.at(i, j)});
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(kappa),
                      cand.end(), [](const auto& a, const auto& b) {
                        if (a.value != b.value) return a.value > b.value;
                        return a.index < b.index;
                      });
    rows[i].assign(cand.begin(), cand.begin() + static_cast<long>(kappa));
    std::sort(rows[i].begin(), rows[i].end(),
              [](const auto& a, const auto& b) { return a.index < b.index; });
  }
  return SimilarityKernel::sparse(n, std::move(rows));
}

}  // namespace subsel

#endif  // SUBSEL_KERNEL_HPP_
