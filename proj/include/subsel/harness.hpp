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

// Experiment drivers and their CSV output.
//
//   sweep_goal1  kNN holdout accuracy vs. training-subset size for fl, dm
//                and random subsets.
//   run_goal2    paired active-learning curves across selectors and seeds.
//
// CSV header: method,seed,x,labeled_count,accuracy. Rows are sorted by
// (method, seed, x); accuracy has six decimals.

#ifndef SUBSEL_HARNESS_HPP_
#define SUBSEL_HARNESS_HPP_

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "subsel/active.hpp"
#include "subsel/dataset.hpp"
#include "subsel/error.hpp"
#include "subsel/kernel.hpp"
#include "subsel/models.hpp"
#include "subsel/objectives.hpp"
#include "subsel/optimizer.hpp"

namespace subsel {

struct CurveRecord {
  std::string method;
  std::uint64_t seed = 0;
  double x = 0.0;  // percent of training data, or AL round
  std::size_t labeled_count = 0;
  double accuracy = 0.0;

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

inline std::vector<double> default_fractions(double step = 5.0) {
  detail::require(step > 0.0 && step <= 100.0, "fraction step ", step,
                  " outside (0,100]");
  std::vector<double> out;
  for (int k = 1; k * step <= 100.0 + 1e-9; ++k) out.push_back(k * step);
  if (out.back() < 100.0) out.push_back(100.0);
  return out;
}

struct SweepConfig {
  std::vector<double> fractions = default_fractions();
  std::vector<std::string> methods = {"fl", "dm", "random"};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};  // random arm only
  KnnConfig knn;

  void validate() const {
    detail::require(!fractions.empty(), "no fractions given");
    for (std::size_t i = 0; i < fractions.size(); ++i) {
      detail::require(fractions[i] > 0.0 && fractions[i] <= 100.0,
                      "fraction ", fractions[i], " outside (0,100]");
      detail::require(i == 0 || fractions[i] > fractions[i - 1],
                      "fractions must be strictly increasing");
    }
    for (const auto& m : methods) {
      detail::require(m == "fl" || m == "dm" || m == "random",
                      "unknown sweep method '", m, "'");
    }
    detail::require(knn.k >= 1, "k must be positive");
  }
};

struct SweepResult {
  std::vector<CurveRecord> records;
  std::vector<std::string> warnings;  // skipped cells
};

// Greedy selection orders over the whole training set; every fraction uses a
// prefix of these, so subsets are nested.
inline std::vector<Index> fl_order(const FeatureMatrix& features) {
  auto kernel = cosine_similarity(features);
  return greedy_lazy(FacilityLocation(kernel), BudgetSpec{features.rows()})
      .indices;
}

inline std::vector<Index> dm_order(const FeatureMatrix& features) {
  auto kernel = euclidean_distance(features);
  return farthest_point(DisparityMin(kernel), BudgetSpec{features.rows()})
      .indices;
}

namespace detail {

inline double subset_knn_accuracy(const LabeledDataset& train,
                                  const LabeledDataset& holdout,
                                  std::span<const Index> subset,
                                  const KnnConfig& knn) {
  auto sub = train.subset(subset);
  // A subset smaller than k votes with all of its points.
  KnnConfig cfg{std::min(knn.k, sub.size())};
  return knn_accuracy(sub, holdout, cfg);
}

inline std::uint64_t fraction_key(double fraction) {
  return std::bit_cast<std::uint64_t>(fraction);
}

}  // namespace detail

inline SweepResult sweep_goal1(const LabeledDataset& train,
                               const LabeledDataset& holdout,
                               const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t n = train.size();
  SweepResult out;
  auto wants = [&](std::string_view m) {
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) !=
           cfg.methods.end();
  };
  std::vector<Index> fl, dm;
  if (wants("fl")) fl = fl_order(train.features);
  if (wants("dm")) dm = dm_order(train.features);

  for (double p : cfg.fractions) {
    const std::size_t budget = round_count(n, p / 100.0);
    if (budget == 0) {
      out.warnings.push_back(detail::concat("fraction ", p, "% of ", n,
                                            " rounds to 0 instances; skipped"));
      continue;
    }
    for (const auto& m : cfg.methods) {
      if (m == "fl" || m == "dm") {
        const auto& order = (m == "fl") ? fl : dm;
        std::span<const Index> prefix(order.data(),
                                      std::min(budget, order.size()));
        out.records.push_back(
            {m, 0, p, prefix.size(),
             detail::subset_knn_accuracy(train, holdout, prefix, cfg.knn)});
      } else {
        for (std::uint64_t seed : cfg.seeds) {
          std::seed_seq seq{seed, detail::fraction_key(p)};
          std::mt19937_64 rng(seq);
          std::vector<Index> idx(n);
          for (Index i = 0; i < n; ++i) idx[i] = i;
          std::shuffle(idx.begin(), idx.end(), rng);
          idx.resize(budget);
          out.records.push_back(
              {m, seed, p, budget,
               detail::subset_knn_accuracy(train, holdout, idx, cfg.knn)});
        }
      }
    }
  }
  return out;
}

// One AL config per (selector, seed), sharing every other setting.
inline std::vector<ALConfig> make_goal2_configs(
    const ALConfig& base, std::span<const Selector> selectors,
    std::span<const std::uint64_t> seeds) {
  std::vector<ALConfig> out;
  for (Selector s : selectors) {
    for (std::uint64_t seed : seeds) {
      ALConfig c = base;
      c.selector = s;
      c.seed = seed;
      out.push_back(c);
    }
  }
  return out;
}

// Runs every config on the same pool and holdout. Configs with the same seed
// start from the same labeled set, so curves are paired across selectors.
inline std::vector<CurveRecord> run_goal2(const LabeledDataset& train,
                                          const LabeledDataset& holdout,
                                          std::span<const ALConfig> cfgs) {
  for (const auto& c : cfgs) {
    c.validate();
    const auto& f = cfgs.front();
    detail::require(c.rounds == f.rounds && c.batch_percent == f.batch_percent &&
                        c.beta_percent == f.beta_percent &&
                        c.initial_seed_size == f.initial_seed_size,
                    "paired AL configs must share rounds, batch, beta and "
                    "initial seed size");
  }
  std::vector<CurveRecord> out;
  for (const auto& c : cfgs) {
    for (const auto& r : run_al(train, holdout, c)) {
      out.push_back({std::string(to_string(c.selector)), c.seed,
                     static_cast<double>(r.round), r.labeled_count,
                     r.accuracy});
    }
  }
  return out;
}

// Mean accuracy per (method, x) over seeds.
struct SummaryRow {
  std::string method;
  double x = 0.0;
  double mean_accuracy = 0.0;
  double mean_labeled = 0.0;
  std::size_t runs = 0;
};

inline std::vector<SummaryRow> summarize(std::span<const CurveRecord> records) {
  std::map<std::pair<std::string, double>, SummaryRow> acc;
  for (const auto& r : records) {
    auto& row = acc[{r.method, r.x}];
    row.method = r.method;
    row.x = r.x;
    row.mean_accuracy += r.accuracy;
    row.mean_labeled += static_cast<double>(r.labeled_count);
    ++row.runs;
  }
  std::vector<SummaryRow> out;
  for (auto& [key, row] : acc) {
    row.mean_accuracy /= static_cast<double>(row.runs);
    row.mean_labeled /= static_cast<double>(row.runs);
    out.push_back(row);
  }
  return out;
}

inline std::string format_csv(std::vector<CurveRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const CurveRecord& a, const CurveRecord& b) {
                     return std::tie(a.method, a.seed, a.x) <
                            std::tie(b.method, b.seed, b.x);
                   });
  std::string out = "method,seed,x,labeled_count,accuracy\n";
  char num[64];
  for (const auto& r : records) {
    out += r.method;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    auto res = std::to_chars(num, num + sizeof(num), r.x);
    out.append(num, res.ptr);
    out += ',';
    out += std::to_string(r.labeled_count);
    std::snprintf(num, sizeof(num), ",%.6f\n", r.accuracy);
    out += num;
  }
  return out;
}

inline void emit_csv(const std::vector<CurveRecord>& records,
                     const std::filesystem::path& path) {
  detail::write_file(path, format_csv(records));
}

inline std::vector<CurveRecord> parse_csv(std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.empty() ||
      detail::trim(lines[0]) != "method,seed,x,labeled_count,accuracy") {
    throw ParseError("missing curve CSV header", 1);
  }
  std::vector<CurveRecord> out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    auto line = detail::trim(lines[ln]);
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::size_t pos = 0;
    while (true) {
      auto c = line.find(',', pos);
      f.push_back(line.substr(pos, c == std::string_view::npos ? c : c - pos));
      if (c == std::string_view::npos) break;
      pos = c + 1;
    }
    auto bad = [&] {
      return ParseError(detail::concat("malformed curve row at line ", ln + 1),
                        ln + 1);
    };
    if (f.size() != 5) throw bad();
    CurveRecord r;
    r.method = std::string(f[0]);
    auto parse = [&](std::string_view s, auto& v) {
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw bad();
    };
    parse(f[1], r.seed);
    parse(f[2], r.x);
    parse(f[3], r.labeled_count);
    parse(f[4], r.accuracy);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<CurveRecord> load_csv(const std::filesystem::path& path) {
  return parse_csv(detail::read_file(path));
}

}  // namespace subsel

#endif  // SUBSEL_HARNESS_HPP_
