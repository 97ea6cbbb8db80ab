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

// Filter-then-select mini-batch active learning.
//
// Each round fits a classifier on the labeled set L, scores the unlabeled
// pool U by uncertainty, keeps the beta% most uncertain elements (plus any
// element tied with the last one kept) as the ground set F, and labels a
// batch X drawn from F by the configured selector.

#ifndef SUBSEL_ACTIVE_HPP_
#define SUBSEL_ACTIVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subsel/dataset.hpp"
#include "subsel/error.hpp"
#include "subsel/kernel.hpp"
#include "subsel/models.hpp"
#include "subsel/objectives.hpp"
#include "subsel/optimizer.hpp"

namespace subsel {

enum class UncertaintyMethod { kLeastConfidence, kMargin, kEntropy };

enum class Selector { kFacilityLocation, kDisparityMin, kUncertainty, kRandom };

inline std::string_view to_string(UncertaintyMethod m) {
  switch (m) {
    case UncertaintyMethod::kLeastConfidence: return "lc";
    case UncertaintyMethod::kMargin: return "margin";
    case UncertaintyMethod::kEntropy: return "entropy";
  }
  return "?";
}

inline UncertaintyMethod parse_uncertainty_method(std::string_view s) {
  if (s == "lc") return UncertaintyMethod::kLeastConfidence;
  if (s == "margin") return UncertaintyMethod::kMargin;
  if (s == "entropy") return UncertaintyMethod::kEntropy;
  throw ValidationError(detail::concat("unknown uncertainty method '", s,
                                       "' (expected lc, margin or entropy)"));
}

inline std::string_view to_string(Selector s) {
  switch (s) {
    case Selector::kFacilityLocation: return "fl";
    case Selector::kDisparityMin: return "dm";
    case Selector::kUncertainty: return "us";
    case Selector::kRandom: return "random";
  }
  return "?";
}

inline Selector parse_selector(std::string_view s) {
  if (s == "fl") return Selector::kFacilityLocation;
  if (s == "dm") return Selector::kDisparityMin;
  if (s == "us") return Selector::kUncertainty;
  if (s == "random") return Selector::kRandom;
  throw ValidationError(detail::concat("unknown selector '", s,
                                       "' (expected fl, dm, us or random)"));
}

// least confidence: 1 - max p
// margin:           1 - (max p - second max p)
// entropy:          -sum p log2 p, with 0 log 0 = 0
inline double uncertainty(std::span<const double> p, UncertaintyMethod m) {
  detail::require(p.size() >= 2, "uncertainty needs at least two classes, got ",
                  p.size());
  switch (m) {
    case UncertaintyMethod::kLeastConfidence:
      return 1.0 - *std::max_element(p.begin(), p.end());
    case UncertaintyMethod::kMargin: {
      double first = -1.0, second = -1.0;
      for (double v : p) {
        if (v > first) {
          second = first;
          first = v;
        } else if (v > second) {
          second = v;
        }
      }
      return 1.0 - (first - second);
    }
    case UncertaintyMethod::kEntropy: {
      double h = 0.0;
      for (double v : p) {
        if (v > 0.0) h -= v * std::log2(v);
      }
      return h;
    }
  }
  return 0.0;
}

// ceil(percent/100 * n), ignoring representation error just above an
// integer (10% of 40 is 4, not 5).
inline std::size_t percent_ceil(double percent, std::size_t n) {
  double x = percent / 100.0 * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

struct FilteredSet {
  std::vector<Index> members;          // pool indices, most uncertain first
  std::vector<double> uncertainties;   // aligned with members
  double cutoff_value = 0.0;           // uncertainty of the last member
};

// Keeps ceil(beta% * |U|) elements by descending uncertainty (equal scores in
// ascending pool index), then every further element whose uncertainty equals
// the last kept one exactly. `scores[k]` belongs to `pool[k]`.
inline FilteredSet filter_by_uncertainty(std::span<const double> scores,
                                         std::span<const Index> pool,
                                         double beta_percent) {
  detail::require(!pool.empty(), "unlabeled pool is empty");
  detail::require(scores.size() == pool.size(), "got ", scores.size(),
                  " uncertainty scores for a pool of ", pool.size());
  detail::require(beta_percent > 0.0 && beta_percent <= 100.0,
                  "beta percent ", beta_percent, " outside (0,100]");
  std::vector<std::size_t> order(pool.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return pool[a] < pool[b];
  });
  std::size_t base = std::clamp<std::size_t>(
      percent_ceil(beta_percent, pool.size()), 1, pool.size());
  const double cutoff = scores[order[base - 1]];
  std::size_t count = base;
  while (count < order.size() && scores[order[count]] == cutoff) ++count;

  FilteredSet f;
  f.cutoff_value = cutoff;
  for (std::size_t k = 0; k < count; ++k) {
    f.members.push_back(pool[order[k]]);
    f.uncertainties.push_back(scores[order[k]]);
  }
  return f;
}

// `probs[k]` is the posterior of pool element `pool[k]`.
inline FilteredSet filter_uncertain(std::span<const ProbabilityVector> probs,
                                    std::span<const Index> pool,
                                    double beta_percent, UncertaintyMethod m) {
  detail::require(!pool.empty(), "unlabeled pool is empty");
  detail::require(probs.size() == pool.size(), "got ", probs.size(),
                  " posteriors for a pool of ", pool.size());
  std::vector<double> scores(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    scores[k] = uncertainty(probs[k], m);
  }
  return filter_by_uncertainty(scores, pool, beta_percent);
}

// Facility-Location batch over `members` given their kernel (kernel index t
// is members[t]).
inline std::vector<Index> select_fl(const SimilarityKernel& kernel,
                                    std::span<const Index> members,
                                    std::size_t batch) {
  detail::require(kernel.size() == members.size(), "kernel size ",
                  kernel.size(), " != member count ", members.size());
  if (members.size() <= batch) return {members.begin(), members.end()};
  auto sel = greedy_lazy(FacilityLocation(kernel), BudgetSpec{batch});
  std::vector<Index> out;
  for (Index t : sel.indices) out.push_back(members[t]);
  return out;
}

inline std::vector<Index> select_dm(const DistanceKernel& kernel,
                                    std::span<const Index> members,
                                    std::size_t batch) {
  detail::require(kernel.size() == members.size(), "kernel size ",
                  kernel.size(), " != member count ", members.size());
  if (members.size() <= batch) return {members.begin(), members.end()};
  auto sel = farthest_point(DisparityMin(kernel), BudgetSpec{batch});
  std::vector<Index> out;
  for (Index t : sel.indices) out.push_back(members[t]);
  return out;
}

// Picks at most `batch` elements of F. Always a subset of F.members.
inline std::vector<Index> select_batch(const FilteredSet& f,
                                       const FeatureMatrix& features,
                                       Selector selector, std::size_t batch,
                                       std::mt19937_64& rng) {
  detail::require(batch >= 1, "batch size must be positive");
  const auto& members = f.members;
  if (members.size() <= batch) return members;
  switch (selector) {
    case Selector::kFacilityLocation:
      return select_fl(cosine_similarity(features, members), members, batch);
    case Selector::kDisparityMin:
      return select_dm(euclidean_distance(features, members), members, batch);
    case Selector::kUncertainty:
      return {members.begin(), members.begin() + static_cast<long>(batch)};
    case Selector::kRandom: {
      std::vector<Index> pick(members);
      std::shuffle(pick.begin(), pick.end(), rng);
      pick.resize(batch);
      return pick;
    }
  }
  return {};
}

struct ALConfig {
  double batch_percent = 5.0;   // B, % of the full training pool per round
  double beta_percent = 10.0;   // beta, % of the current unlabeled pool
  std::size_t rounds = 10;      // T
  Selector selector = Selector::kFacilityLocation;
  UncertaintyMethod method = UncertaintyMethod::kEntropy;
  std::uint64_t seed = 0;
  std::size_t initial_seed_size = 0;  // 0 means max(C, batch size)
  LogRegConfig logreg;

  void validate() const {
    detail::require(batch_percent > 0.0 && batch_percent <= 100.0,
                    "batch percent ", batch_percent, " outside (0,100]");
    detail::require(beta_percent > 0.0 && beta_percent <= 100.0,
                    "beta percent ", beta_percent, " outside (0,100]");
    detail::require(rounds >= 1, "at least one round is required");
  }

  std::size_t batch_size(std::size_t pool_size) const {
    return std::max<std::size_t>(1, percent_ceil(batch_percent, pool_size));
  }
};

struct RoundRecord {
  std::size_t round = 0;          // 1-based
  std::size_t labeled_count = 0;  // |L| the model was trained on
  double accuracy = 0.0;          // holdout accuracy of that model
  std::size_t filtered_count = 0;
  std::size_t selected_count = 0;
};

using AccuracyCurve = std::vector<RoundRecord>;

struct ALState {
  std::vector<Index> labeled;    // ascending
  std::vector<Index> unlabeled;  // ascending
  std::size_t round = 0;
  AccuracyCurve history;
  std::mt19937_64 rng;
};

// Stratified random seed set: one instance per class first (classes in
// order), then uniform draws from the rest. Depends only on the labels,
// size and seed.
inline std::vector<Index> initial_seed_set(const LabelVector& labels,
                                           std::size_t size,
                                           std::uint64_t seed) {
  const auto classes = static_cast<std::size_t>(labels.num_classes());
  detail::require(size >= classes, "initial seed set of ", size,
                  " is smaller than the class count ", classes);
  detail::require(size <= labels.size(), "initial seed set of ", size,
                  " exceeds the pool of ", labels.size());
  std::seed_seq seq{seed, std::uint64_t{0x5eed}};
  std::mt19937_64 rng(seq);
  std::vector<std::vector<Index>> members(classes);
  for (Index i = 0; i < labels.size(); ++i) {
    members[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  std::vector<char> taken(labels.size(), 0);
  std::vector<Index> out;
  for (std::size_t c = 0; c < classes; ++c) {
    detail::require(!members[c].empty(), "class ", c,
                    " has no instances in the training pool");
    std::uniform_int_distribution<std::size_t> pick(0, members[c].size() - 1);
    Index e = members[c][pick(rng)];
    taken[e] = 1;
    out.push_back(e);
  }
  std::vector<Index> rest;
  for (Index i = 0; i < labels.size(); ++i) {
    if (!taken[i]) rest.push_back(i);
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  out.insert(out.end(), rest.begin(),
             rest.begin() + static_cast<long>(size - out.size()));
  std::sort(out.begin(), out.end());
  return out;
}

inline ALState initial_state(const LabeledDataset& pool, const ALConfig& cfg) {
  cfg.validate();
  const std::size_t batch = cfg.batch_size(pool.size());
  const std::size_t seed_size =
      cfg.initial_seed_size > 0
          ? cfg.initial_seed_size
          : std::max(static_cast<std::size_t>(pool.num_classes()), batch);
  ALState s;
  s.labeled = initial_seed_set(pool.labels, seed_size, cfg.seed);
  std::vector<char> in_l(pool.size(), 0);
  for (Index i : s.labeled) in_l[i] = 1;
  for (Index i = 0; i < pool.size(); ++i) {
    if (!in_l[i]) s.unlabeled.push_back(i);
  }
  std::seed_seq seq{cfg.seed, std::uint64_t{0xba7c}};
  s.rng.seed(seq);
  return s;
}

// One round: fit on L, record holdout accuracy, filter U, label a batch.
inline ALState fass_round(ALState state, const LabeledDataset& pool,
                          const LabeledDataset& holdout, const ALConfig& cfg) {
  detail::require(!state.unlabeled.empty(), "unlabeled pool is exhausted");
  const std::size_t round = state.round + 1;
  LogRegModel model;
  try {
    model = logreg_fit(pool.subset(state.labeled), cfg.logreg);
  } catch (const ValidationError& e) {
    throw ValidationError(detail::concat("round ", round, ": ", e.what()));
  }
  RoundRecord rec;
  rec.round = round;
  rec.labeled_count = state.labeled.size();
  rec.accuracy = logreg_accuracy(model, holdout);

  std::vector<ProbabilityVector> probs;
  probs.reserve(state.unlabeled.size());
  for (Index i : state.unlabeled) {
    probs.push_back(logreg_predict_proba(model, pool.features.row(i)));
  }
  auto filtered = filter_uncertain(probs, state.unlabeled, cfg.beta_percent,
                                   cfg.method);
  const std::size_t batch =
      std::min(cfg.batch_size(pool.size()), state.unlabeled.size());
  auto chosen =
      select_batch(filtered, pool.features, cfg.selector, batch, state.rng);
  rec.filtered_count = filtered.members.size();
  rec.selected_count = chosen.size();

  std::vector<char> picked(pool.size(), 0);
  for (Index i : chosen) picked[i] = 1;
  std::vector<Index> remaining;
  remaining.reserve(state.unlabeled.size() - chosen.size());
  for (Index i : state.unlabeled) {
    if (!picked[i]) remaining.push_back(i);
  }
  state.unlabeled = std::move(remaining);
  state.labeled.insert(state.labeled.end(), chosen.begin(), chosen.end());
  std::sort(state.labeled.begin(), state.labeled.end());
  state.round = round;
  state.history.push_back(rec);
  return state;
}

// Runs up to cfg.rounds rounds, stopping early if U empties.
inline AccuracyCurve run_al(const LabeledDataset& pool,
                            const LabeledDataset& holdout,
                            const ALConfig& cfg) {
  auto state = initial_state(pool, cfg);
  for (std::size_t t = 0; t < cfg.rounds && !state.unlabeled.empty(); ++t) {
    state = fass_round(std::move(state), pool, holdout, cfg);
  }
  return state.history;
}

}  // namespace subsel

#endif  // SUBSEL_ACTIVE_HPP_
