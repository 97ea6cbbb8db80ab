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

// Set functions over a ground set:
//
//   Facility-Location  f(X) = sum_i max_{j in X} s_ij      (f(empty) = 0)
//   Disparity-Min      f(X) = min_{i != j in X} d_ij       (+inf if |X| <= 1)
//
// Each comes with an incremental state so a candidate's score costs one pass
// over the ground set.

#ifndef SUBSEL_OBJECTIVES_HPP_
#define SUBSEL_OBJECTIVES_HPP_

#include <algorithm>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "subsel/error.hpp"
#include "subsel/kernel.hpp"

namespace subsel {

// Value of Disparity-Min on sets with fewer than two elements, and the
// distance-to-selected score of any element before the first pick.
inline constexpr double kUnboundedDistance =
    std::numeric_limits<double>::infinity();

struct BudgetSpec {
  std::size_t b = 1;

  void validate(std::size_t ground_size) const {
    detail::require(b >= 1 && b <= ground_size, "budget ", b,
                    " outside [1, ", ground_size, "]");
  }
};

namespace detail {

inline void check_members(std::span<const Index> x, std::size_t n) {
  for (Index e : x) {
    require(e < n, "index ", e, " outside ground set of size ", n);
  }
}

}  // namespace detail

inline double fl_eval(const SimilarityKernel& k, std::span<const Index> x) {
  const std::size_t n = k.size();
  detail::check_members(x, n);
  if (x.empty()) return 0.0;
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    double best = 0.0;
    for (Index j : x) best = std::max(best, k.at(i, j));
    total += best;
  }
  return total;
}

inline double dm_eval(const DistanceKernel& k, std::span<const Index> x) {
  detail::check_members(x, k.size());
  double m = kUnboundedDistance;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if (x[a] == x[b]) continue;
      m = std::min(m, k.at(x[a], x[b]));
    }
  }
  return m;
}

// Incremental Facility-Location. best()[i] is max_{j in X} s_ij.
class FLState {
 public:
  explicit FLState(const SimilarityKernel& k)
      : kernel_(&k), best_(k.size(), 0.0), in_(k.size(), 0) {}

  std::size_t ground_size() const { return best_.size(); }
  double value() const { return value_; }
  std::span<const Index> selected() const { return selected_; }
  std::span<const double> best() const { return best_; }
  bool contains(Index e) const { return in_[e] != 0; }

  // f(X + e) - f(X). Never negative.
  double gain(Index e) const {
    check_candidate(e);
    double g = 0.0;
    kernel_->for_each_in_column(e, [&](Index i, double s) {
      double diff = s - best_[i];
      if (diff > 0.0) g += diff;
    });
    return g;
  }

  void add(Index e) {
    check_candidate(e);
    kernel_->for_each_in_column(
        e, [&](Index i, double s) { best_[i] = std::max(best_[i], s); });
    in_[e] = 1;
    selected_.push_back(e);
    // Summed in index order so the value matches fl_eval's reduction.
    value_ = 0.0;
    for (double b : best_) value_ += b;
  }

 private:
  void check_candidate(Index e) const {
    detail::require(e < best_.size(), "index ", e,
                    " outside ground set of size ", best_.size());
    detail::require(!in_[e], "element ", e, " is already selected");
  }

  const SimilarityKernel* kernel_;
  std::vector<double> best_;
  std::vector<char> in_;
  std::vector<Index> selected_;
  double value_ = 0.0;
};

// Incremental Disparity-Min. mindist()[i] is min_{j in X} d_ij.
class DMState {
 public:
  explicit DMState(const DistanceKernel& k)
      : kernel_(&k), mindist_(k.size(), kUnboundedDistance), in_(k.size(), 0) {}

  std::size_t ground_size() const { return mindist_.size(); }
  double value() const { return value_; }
  std::span<const Index> selected() const { return selected_; }
  std::span<const double> mindist() const { return mindist_; }
  bool contains(Index e) const { return in_[e] != 0; }

  // Farthest-point score: distance from e to its nearest selected element,
  // not the change in f (which is never positive).
  double gain(Index e) const {
    check_candidate(e);
    return mindist_[e];
  }

  void add(Index e) {
    check_candidate(e);
    value_ = std::min(value_, mindist_[e]);
    auto row = kernel_->row(e);
    for (Index i = 0; i < mindist_.size(); ++i) {
      mindist_[i] = std::min(mindist_[i], row[i]);
    }
    in_[e] = 1;
    selected_.push_back(e);
  }

 private:
  void check_candidate(Index e) const {
    detail::require(e < mindist_.size(), "index ", e,
                    " outside ground set of size ", mindist_.size());
    detail::require(!in_[e], "element ", e, " is already selected");
  }

  const DistanceKernel* kernel_;
  std::vector<double> mindist_;
  std::vector<char> in_;
  std::vector<Index> selected_;
  double value_ = kUnboundedDistance;
};

inline double fl_gain(const FLState& s, Index e) { return s.gain(e); }
inline FLState fl_update(FLState s, Index e) {
  s.add(e);
  return s;
}
inline double dm_gain(const DMState& s, Index e) { return s.gain(e); }
inline DMState dm_update(DMState s, Index e) {
  s.add(e);
  return s;
}

// Objective adapters consumed by the optimizers. Each names its incremental
// state, evaluates from scratch, and says whether it is monotone submodular.
class FacilityLocation {
 public:
  using State = FLState;
  static constexpr bool kSubmodular = true;
  static constexpr std::string_view kName = "facility-location";

  explicit FacilityLocation(const SimilarityKernel& k) : kernel_(&k) {}

  std::size_t ground_size() const { return kernel_->size(); }
  State initial_state() const { return State(*kernel_); }
  double eval(std::span<const Index> x) const { return fl_eval(*kernel_, x); }
  const SimilarityKernel& kernel() const { return *kernel_; }

 private:
  const SimilarityKernel* kernel_;
};

class DisparityMin {
 public:
  using State = DMState;
  static constexpr bool kSubmodular = false;
  static constexpr std::string_view kName = "disparity-min";

  explicit DisparityMin(const DistanceKernel& k) : kernel_(&k) {}

  std::size_t ground_size() const { return kernel_->size(); }
  State initial_state() const { return State(*kernel_); }
  double eval(std::span<const Index> x) const { return dm_eval(*kernel_, x); }
  const DistanceKernel& kernel() const { return *kernel_; }

 private:
  const DistanceKernel* kernel_;
};

}  // namespace subsel

#endif  // SUBSEL_OBJECTIVES_HPP_
