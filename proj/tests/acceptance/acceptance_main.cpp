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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptance [--cli PATH] [--workdir DIR] [--only N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "subsel/subsel.hpp"

namespace {

using namespace subsel;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0: no limit
  std::function<Outcome()> run;
};

std::string Fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

FeatureMatrix RandomFeatures(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<float> normal;
  std::vector<float> v(n * d);
  for (auto& x : v) x = normal(rng);
  return FeatureMatrix(n, d, std::move(v));
}

// 1. greedy >= (1 - 1/e) * optimum on 200 FL instances (n <= 12, b <= 4).
Outcome GreedyGuarantee() {
  const double bound = 1.0 - 1.0 / std::exp(1.0);
  std::mt19937_64 rng(101);
  int violations = 0, within90 = 0;
  double worst = 1.0, sum = 0.0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 12;
    std::size_t b = 1 + rng() % std::min<std::size_t>(4, n);
    auto m = RandomFeatures(n, 1 + rng() % 4, rng);
    auto k = cosine_similarity(m);
    double opt = brute_force(FacilityLocation(k), {b}).final_value;
    double got = greedy_naive(FacilityLocation(k), {b}).final_value;
    double r = got / opt;
    if (got < bound * opt) ++violations;
    if (r >= 0.9) ++within90;
    worst = std::min(worst, r);
    sum += r;
  }
  return {violations == 0,
          "violations=" + std::to_string(violations) + " worst_ratio=" +
              Fmt("%.4f", worst) + " mean_ratio=" + Fmt("%.4f", sum / 200) +
              " within_90pct=" + std::to_string(within90) + "/200"};
}

// 2. lazy == naive element-for-element on 100 FL instances (n <= 60, b <= 10).
Outcome LazyEquivalence() {
  std::mt19937_64 rng(102);
  int mismatches = 0;
  std::size_t lazy_evals = 0, naive_evals = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 60;
    std::size_t b = 1 + rng() % std::min<std::size_t>(10, n);
    auto m = RandomFeatures(n, 2 + rng() % 8, rng);
    auto k = cosine_similarity(m);
    auto naive = greedy_naive(FacilityLocation(k), {b});
    auto lazy = greedy_lazy(FacilityLocation(k), {b});
    if (naive.indices != lazy.indices || naive.step_values != lazy.step_values) {
      ++mismatches;
    }
    lazy_evals += lazy.gain_evaluations;
    naive_evals += naive.gain_evaluations;
  }
  return {mismatches == 0, "mismatches=" + std::to_string(mismatches) +
                               " gain_evals lazy/naive=" +
                               std::to_string(lazy_evals) + "/" +
                               std::to_string(naive_evals)};
}

// 3. farthest point >= optimum / 2 on 200 DM instances (n <= 12, b <= 4).
Outcome DispersionBound() {
  std::mt19937_64 rng(103);
  int violations = 0;
  double worst = kUnboundedDistance;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 12;
    std::size_t b = 1 + rng() % std::min<std::size_t>(4, n);
    auto m = RandomFeatures(n, 1 + rng() % 4, rng);
    auto k = euclidean_distance(m);
    double opt = brute_force(DisparityMin(k), {b}).final_value;
    double got = farthest_point(DisparityMin(k), {b}).final_value;
    if (std::isinf(opt)) {
      if (!std::isinf(got)) ++violations;
      continue;
    }
    if (got < 0.5 * opt) ++violations;
    worst = std::min(worst, got / opt);
  }
  return {violations == 0, "violations=" + std::to_string(violations) +
                               " worst_ratio=" + Fmt("%.4f", worst)};
}

// 4. exhaustive diminishing-returns and monotonicity checks (n <= 8).
Outcome SubmodularitySuite() {
  std::mt19937_64 rng(104);
  long checks = 0, violations = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 8;
    // Alternate feature-derived and arbitrary kernels.
    SimilarityKernel k =
        (t % 2 == 0)
            ? cosine_similarity(RandomFeatures(n, 1 + rng() % 4, rng))
            : SimilarityKernel::dense(
                  n, oracle::flatten(oracle::random_similarity(n, rng)));
    const std::uint32_t full = (1u << n) - 1;
    std::vector<double> f(full + 1);
    for (std::uint32_t s = 0; s <= full; ++s) {
      auto set = oracle::set_of_mask(s);
      f[s] = fl_eval(k, set);
    }
    for (std::uint32_t b = 0; b <= full; ++b) {
      for (std::uint32_t a = b;; a = (a - 1) & b) {
        for (std::size_t x = 0; x < n; ++x) {
          std::uint32_t bit = 1u << x;
          if (b & bit) continue;
          double ga = f[a | bit] - f[a];
          double gb = f[b | bit] - f[b];
          ++checks;
          if (ga < gb - 1e-9 || gb < -1e-9) ++violations;
        }
        if (a == 0) break;
      }
    }
  }
  return {violations == 0, "checks=" + std::to_string(checks) +
                               " violations=" + std::to_string(violations)};
}

// 5. Goal-1 desk analogue.
Outcome Goal1() {
  auto ds = gen_synthetic(600, 16, 3, 4.0, 42);
  auto [train, holdout] = split(ds, {1.0 / 3.0, 42, true});
  SweepConfig cfg;
  cfg.methods = {"fl", "random"};
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.knn.k = 5;
  auto res = sweep_goal1(train, holdout, cfg);
  std::map<std::pair<std::string, double>, double> mean;
  for (const auto& row : summarize(res.records)) {
    mean[{row.method, row.x}] = row.mean_accuracy;
  }
  double fl40 = mean[{"fl", 40.0}], fl100 = mean[{"fl", 100.0}];
  bool near_full = std::abs(fl40 - fl100) <= 0.02;
  int not_below = 0, strictly = 0, considered = 0;
  std::ostringstream per;
  for (double p : cfg.fractions) {
    if (p > 50.0) break;
    ++considered;
    double f = mean[{"fl", p}], r = mean[{"random", p}];
    if (f >= r) ++not_below;
    if (f > r) ++strictly;
    per << " " << p << "%:" << Fmt("%.4f", f) << "/" << Fmt("%.4f", r);
  }
  bool dominates = not_below == considered;
  bool strict = strictly >= 6;
  std::ostringstream d;
  d << "fl@40=" << Fmt("%.4f", fl40) << " fl@100=" << Fmt("%.4f", fl100)
    << " [within 2pts: " << (near_full ? "yes" : "NO") << "]"
    << " fl>=random at " << not_below << "/" << considered
    << " [" << (dominates ? "yes" : "NO") << "]"
    << " fl>random at " << strictly << "/" << considered << " (need >=6) ["
    << (strict ? "yes" : "NO") << "]" << " fl/random:" << per.str();
  return {near_full && dominates && strict, d.str()};
}

// 6. Goal-2 desk analogue.
Outcome Goal2() {
  auto ds = gen_synthetic(600, 16, 3, 2.0, 42);
  auto [train, holdout] = split(ds, {1.0 / 3.0, 42, true});
  ALConfig base;
  base.batch_percent = 5;
  base.beta_percent = 20;
  base.rounds = 10;
  base.method = UncertaintyMethod::kEntropy;
  std::vector<Selector> sels = {Selector::kFacilityLocation, Selector::kDisparityMin,
                                Selector::kUncertainty, Selector::kRandom};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto recs = run_goal2(train, holdout, make_goal2_configs(base, sels, seeds));
  std::map<std::pair<std::string, double>, double> mean;
  for (const auto& row : summarize(recs)) mean[{row.method, row.x}] = row.mean_accuracy;
  int bad_rounds = 0;
  for (std::size_t r = 1; r <= base.rounds; ++r) {
    double x = static_cast<double>(r);
    double rnd = mean[{"random", x}];
    if (mean[{"fl", x}] < rnd || mean[{"dm", x}] < rnd) ++bad_rounds;
  }
  const double last = static_cast<double>(base.rounds);
  double best_final = std::max(mean[{"fl", last}], mean[{"dm", last}]);
  double us_final = mean[{"us", last}];
  bool final_ok = best_final >= us_final - 0.005;
  std::ostringstream d;
  d << "rounds with fl or dm below random=" << bad_rounds
    << " final fl=" << Fmt("%.4f", mean[{"fl", last}])
    << " dm=" << Fmt("%.4f", mean[{"dm", last}])
    << " us=" << Fmt("%.4f", us_final)
    << " random=" << Fmt("%.4f", mean[{"random", last}]);
  return {bad_rounds == 0 && final_ok, d.str()};
}

// 7. uncertainty formulas and tie inclusion.
Outcome UncertaintyChecks() {
  struct Case {
    std::vector<double> p;
    double lc, margin, entropy;
  };
  // Entropy of (0.5, 0.3, 0.2) from a 30-digit evaluation.
  std::vector<Case> cases = {{{0.25, 0.25, 0.25, 0.25}, 0.75, 1.0, 2.0},
                             {{0.0, 1.0, 0.0}, 0.0, 0.0, 0.0},
                             {{0.5, 0.3, 0.2}, 0.5, 0.8, 1.4854752972273343}};
  double worst = 0.0;
  for (const auto& c : cases) {
    worst = std::max(worst, std::abs(uncertainty(c.p, UncertaintyMethod::kLeastConfidence) - c.lc));
    worst = std::max(worst, std::abs(uncertainty(c.p, UncertaintyMethod::kMargin) - c.margin));
    worst = std::max(worst, std::abs(uncertainty(c.p, UncertaintyMethod::kEntropy) - c.entropy));
  }
  std::vector<double> u = {0.9, 0.5, 0.5, 0.1};
  std::vector<Index> pool = {0, 1, 2, 3};
  auto f = filter_by_uncertainty(u, pool, 50.0);
  bool ok = worst <= 1e-6 && f.members.size() == 3;
  return {ok, "max_abs_err=" + Fmt("%.3g", worst) +
                  " |F|=" + std::to_string(f.members.size())};
}

// 8. analytic vs central-difference gradient.
Outcome GradientCheck() {
  std::mt19937_64 rng(108);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    int classes = 2 + static_cast<int>(rng() % 4);
    std::size_t d = 1 + rng() % 6;
    std::size_t n = 4 + rng() % 30;
    std::vector<float> x(n * d);
    for (auto& v : x) v = static_cast<float>(normal(rng));
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % classes);
    LabeledDataset ds(FeatureMatrix(n, d, x), LabelVector(y, classes));
    std::vector<double> params(static_cast<std::size_t>(classes) * (d + 1));
    for (auto& p : params) p = normal(rng);
    double l2 = (t % 2) ? 0.05 : 0.0;
    std::vector<double> grad(params.size());
    logreg_objective(ds, params, l2, grad);
    const double h = 1e-5;
    double diff = 0.0, gn = 0.0, nn = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto p = params;
      p[k] += h;
      double up = logreg_objective(ds, p, l2, {});
      p[k] = params[k] - h;
      double down = logreg_objective(ds, p, l2, {});
      double num = (up - down) / (2 * h);
      diff += (num - grad[k]) * (num - grad[k]);
      gn += grad[k] * grad[k];
      nn += num * num;
    }
    double rel = std::sqrt(diff) / std::max({std::sqrt(gn), std::sqrt(nn), 1e-12});
    worst = std::max(worst, rel);
  }
  return {worst <= 1e-5, "worst_rel_err=" + Fmt("%.3g", worst)};
}

std::string Slurp(const fs::path& p) {
  return detail::read_file(p);
}

// 9. CLI determinism and bit-exact feature round trip.
Outcome Determinism(const std::string& cli, const fs::path& dir) {
  std::ostringstream d;
  bool ok = true;

  std::mt19937_64 rng(109);
  auto m = RandomFeatures(257, 33, rng);
  auto feat = dir / "roundtrip.bin";
  save_features(m, feat);
  bool exact = load_features(feat) == m &&
               encode_features(load_features(feat)) == Slurp(feat);
  d << "feature_roundtrip=" << (exact ? "bit-exact" : "MISMATCH");
  ok &= exact;

  if (cli.empty()) {
    d << " cli=missing";
    return {false, d.str()};
  }
  auto run = [&](const std::string& args) {
    std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  auto f = (dir / "synth.bin").string(), l = (dir / "synth.txt").string();
  ok &= run("gen-synth --out " + f + " --labels " + l +
            " --n 300 --d 8 --classes 3 --sep 1 --seed 5");
  const std::string common = " --features " + f + " --labels " + l +
                             " --holdout-frac 0.3333333333";
  for (int rep = 0; rep < 2; ++rep) {
    auto tag = std::to_string(rep);
    ok &= run("sweep" + common + " --methods fl,dm,random --step 5 --k 5 "
              "--seeds 1,2,3 --out " + (dir / ("sweep" + tag + ".csv")).string());
    ok &= run("al" + common + " --selectors fl,dm,us,random --uncertainty "
              "entropy --batch-pct 5 --beta-pct 20 --rounds 4 --seeds 1,2 "
              "--out " + (dir / ("al" + tag + ".csv")).string());
  }
  if (!ok) {
    d << " cli_run=FAILED";
    return {false, d.str()};
  }
  auto s0 = Slurp(dir / "sweep0.csv"), s1 = Slurp(dir / "sweep1.csv");
  auto a0 = Slurp(dir / "al0.csv"), a1 = Slurp(dir / "al1.csv");
  bool same_sweep = s0 == s1 && s0.size() > 40;
  bool same_al = a0 == a1 && a0.size() > 40;
  d << " sweep_csv=" << (same_sweep ? "identical" : "DIFFERENT") << "("
    << s0.size() << "B)"
    << " al_csv=" << (same_al ? "identical" : "DIFFERENT") << "(" << a0.size()
    << "B)";
  return {ok && same_sweep && same_al, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
#ifdef SUBSEL_CLI_PATH
  cli = SUBSEL_CLI_PATH;
#endif
  fs::path workdir = fs::temp_directory_path() / "subsel_acceptance";
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--cli") cli = argv[i + 1];
    else if (flag == "--workdir") workdir = argv[i + 1];
    else if (flag == "--only") only = std::atoi(argv[i + 1]);
  }
  fs::create_directories(workdir);

  std::vector<Criterion> criteria = {
      {1, "greedy >= (1-1/e) * optimum, 200 FL instances", 10, GreedyGuarantee},
      {2, "lazy greedy == naive greedy, 100 FL instances", 10, LazyEquivalence},
      {3, "farthest point >= optimum/2, 200 DM instances", 0, DispersionBound},
      {4, "FL submodularity and monotonicity, 200 instances", 0, SubmodularitySuite},
      {5, "Goal-1: FL 40% subset vs full data and vs random", 120, Goal1},
      {6, "Goal-2: paired AL curves vs random and US", 300, Goal2},
      {7, "uncertainty formulas and tie inclusion", 0, UncertaintyChecks},
      {8, "logistic-regression gradient check", 0, GradientCheck},
      {9, "CLI determinism and feature round trip", 0,
       [&] { return Determinism(cli, workdir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = c.time_limit_s <= 0 || secs < c.time_limit_s;
    bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] AC%d %s (%.2fs%s) %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), secs,
                c.time_limit_s > 0
                    ? (std::string(", limit ") + Fmt("%.0fs", c.time_limit_s)).c_str()
                    : "",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
