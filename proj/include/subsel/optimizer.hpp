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

// Cardinality-constrained maximization of the objectives in objectives.hpp.
//
// Every routine breaks ties toward the lowest index and uses no randomness,
// so a given input always produces the same Selection.

#ifndef SUBSEL_OPTIMIZER_HPP_
#define SUBSEL_OPTIMIZER_HPP_

#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "subsel/error.hpp"
#include "subsel/objectives.hpp"

namespace subsel {

struct Selection {
  std::vector<Index> indices;     // in the order they were chosen
  std::vector<double> step_values;  // f(X) after each addition
  double final_value = 0.0;
  std::size_t gain_evaluations = 0;
};

// Plain greedy: each step scans every unselected element and adds the best
// scorer. Submodular objectives stop early once the best gain is zero.
template <typename Objective>
Selection greedy_naive(const Objective& obj, BudgetSpec budget) {
  const std::size_t n = obj.ground_size();
  detail::require(n >= 1, "ground set is empty");
  budget.validate(n);
  auto state = obj.initial_state();
  Selection sel;
  sel.final_value = state.value();
  while (sel.indices.size() < budget.b) {
    bool found = false;
    Index best = 0;
    double best_gain = 0.0;
    for (Index e = 0; e < n; ++e) {
      if (state.contains(e)) continue;
      double g = state.gain(e);
      ++sel.gain_evaluations;
      if (!found || g > best_gain) {
        found = true;
        best = e;
        best_gain = g;
      }
    }
    if (!found) break;
    if constexpr (Objective::kSubmodular) {
      if (best_gain <= 0.0) break;
    }
    state.add(best);
    sel.indices.push_back(best);
    sel.step_values.push_back(state.value());
  }
  sel.final_value = state.value();
  return sel;
}

// Lazy greedy (stale upper bounds in a max-heap). Identical output to
// greedy_naive on monotone submodular objectives, with at most as many gain
// evaluations.
template <typename Objective>
Selection greedy_lazy(const Objective& obj, BudgetSpec budget) {
  if constexpr (!Objective::kSubmodular) {
    throw UnsupportedObjectiveError(
        std::string("lazy greedy requires a submodular objective, got ") +
        std::string(Objective::kName));
  } else {
    const std::size_t n = obj.ground_size();
    detail::require(n >= 1, "ground set is empty");
    budget.validate(n);

    struct Candidate {
      double gain;
      Index index;
      std::size_t stamp;  // step at which `gain` was computed
    };
    // Max-heap on gain, then min index.
    auto lower = [](const Candidate& a, const Candidate& b) {
      if (a.gain != b.gain) return a.gain < b.gain;
      return a.index > b.index;
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(lower)>
        heap(lower);

    auto state = obj.initial_state();
    Selection sel;
    for (Index e = 0; e < n; ++e) {
      heap.push({state.gain(e), e, 0});
      ++sel.gain_evaluations;
    }
    std::size_t step = 0;
    while (step < budget.b && !heap.empty()) {
      Candidate top = heap.top();
      heap.pop();
      if (top.stamp != step) {
        top.gain = state.gain(top.index);
        top.stamp = step;
        ++sel.gain_evaluations;
        heap.push(top);
        continue;
      }
      if (top.gain <= 0.0) break;
      state.add(top.index);
      sel.indices.push_back(top.index);
      sel.step_values.push_back(state.value());
      ++step;
    }
    sel.final_value = state.value();
    return sel;
  }
}

// Default ground-set size up to which farthest_point seeds with the exact
// farthest pair.
inline constexpr std::size_t kExactPairThreshold = 2048;

// Farthest-point greedy for Disparity-Min. Seeds with the farthest pair when
// n <= exact_pair_threshold, otherwise with the element farthest from the
// medoid, then repeatedly adds the element farthest from the selection.
inline Selection farthest_point(const DisparityMin& obj, BudgetSpec budget,
                                std::size_t exact_pair_threshold =
                                    kExactPairThreshold) {
  const std::size_t n = obj.ground_size();
  detail::require(n >= 1, "ground set is empty");
  budget.validate(n);
  const auto& dist = obj.kernel();
  auto state = obj.initial_state();
  Selection sel;
  auto take = [&](Index e) {
    state.add(e);
    sel.indices.push_back(e);
    sel.step_values.push_back(state.value());
  };

  if (budget.b == 1) {
    take(0);
  } else if (n <= exact_pair_threshold) {
    Index bi = 0, bj = 1;
    double bd = -1.0;
    for (Index i = 0; i < n; ++i) {
      auto row = dist.row(i);
      for (Index j = i + 1; j < n; ++j) {
        if (row[j] > bd) {
          bd = row[j];
          bi = i;
          bj = j;
        }
      }
    }
    take(bi);
    take(bj);
  } else {
    Index medoid = 0;
    double best_sum = kUnboundedDistance;
    for (Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (double v : dist.row(i)) s += v;
      if (s < best_sum) {
        best_sum = s;
        medoid = i;
      }
    }
    Index seed = 0;
    double far = -1.0;
    auto row = dist.row(medoid);
    for (Index j = 0; j < n; ++j) {
      if (row[j] > far) {
        far = row[j];
        seed = j;
      }
    }
    take(seed);
  }

  while (sel.indices.size() < budget.b) {
    bool found = false;
    Index best = 0;
    double best_gain = 0.0;
    for (Index e = 0; e < n; ++e) {
      if (state.contains(e)) continue;
      double g = state.gain(e);
      ++sel.gain_evaluations;
      if (!found || g > best_gain) {
        found = true;
        best = e;
        best_gain = g;
      }
    }
    if (!found) break;
    take(best);
  }
  sel.final_value = obj.eval(sel.indices);
  return sel;
}

// Largest number of subsets brute_force will enumerate.
inline constexpr std::size_t kBruteForceLimit = 1'000'000;

// Exact optimum over all subsets of size b (lexicographically smallest on
// ties). Test oracle; refuses instances with C(n, b) > kBruteForceLimit.
template <typename Objective>
Selection brute_force(const Objective& obj, BudgetSpec budget) {
  const std::size_t n = obj.ground_size();
  detail::require(n >= 1, "ground set is empty");
  budget.validate(n);
  const std::size_t b = budget.b;

  std::size_t count = 1;
  for (std::size_t i = 1; i <= b; ++i) {
    // C(n-b+i, i) = C(n-b+i-1, i-1) * (n-b+i) / i stays integral.
    count = count * (n - b + i) / i;
    if (count > kBruteForceLimit) {
      throw CapacityError(detail::concat("C(", n, ", ", b,
                                         ") exceeds the enumeration limit of ",
                                         kBruteForceLimit));
    }
  }

  std::vector<Index> combo(b);
  for (std::size_t i = 0; i < b; ++i) combo[i] = i;
  std::vector<Index> best_combo = combo;
  double best_value = obj.eval(combo);
  Selection sel;
  sel.gain_evaluations = 1;
  while (true) {
    // Advance to the next combination in lexicographic order.
    std::size_t i = b;
    while (i > 0 && combo[i - 1] == n - b + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < b; ++j) combo[j] = combo[j - 1] + 1;
    double v = obj.eval(combo);
    ++sel.gain_evaluations;
    if (v > best_value) {
      best_value = v;
      best_combo = combo;
    }
  }
  sel.indices = best_combo;
  for (std::size_t k = 1; k <= b; ++k) {
    sel.step_values.push_back(
        obj.eval(std::span<const Index>(best_combo.data(), k)));
  }
  sel.final_value = best_value;
  return sel;
}

}  // namespace subsel

#endif  // SUBSEL_OPTIMIZER_HPP_
