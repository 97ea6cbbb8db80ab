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

// subsel: command-line front end.
//
//   subsel gen-synth --out F --labels L --n N --d D --classes C --sep S --seed K
//   subsel select --features F --objective fl|dm --metric cosine|euclidean
//                 --budget B [--knn-sparsify KAPPA] --out indices.csv
//   subsel sweep --features F --labels L --holdout-frac H --methods fl,dm,random
//                --step 5 --k 5 --seeds 1,2,3 --out curve.csv
//   subsel al --features F --labels L --holdout-frac H
//             --selectors fl,dm,us,random --uncertainty lc|margin|entropy
//             --batch-pct B --beta-pct BETA --rounds T --seeds 1,2 --out curve.csv

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subsel/subsel.hpp"

namespace {

using namespace subsel;

LabeledDataset load_dataset(const std::string& features,
                            const std::string& labels) {
  LabeledDataset ds(load_features(features), load_labels(labels));
  validate_full_dataset(ds);
  return ds;
}

void print_summary(const std::vector<CurveRecord>& records,
                   const char* x_name) {
  std::printf("%-8s %8s %10s %10s %5s\n", "method", x_name, "labeled",
              "accuracy", "runs");
  for (const auto& row : summarize(records)) {
    std::printf("%-8s %8g %10.1f %10.6f %5zu\n", row.method.c_str(), row.x,
                row.mean_labeled, row.mean_accuracy, row.runs);
  }
}

struct GenSynthArgs {
  std::string out, labels;
  std::size_t n = 600, d = 16;
  int classes = 3;
  double sep = 4.0;
  std::uint64_t seed = 42;
};

int run_gen_synth(const GenSynthArgs& a) {
  auto ds = gen_synthetic(a.n, a.d, a.classes, a.sep, a.seed);
  save_features(ds.features, a.out);
  save_labels(ds.labels, a.labels);
  std::cerr << "wrote " << ds.size() << "x" << ds.dim() << " features to "
            << a.out << "\n";
  return 0;
}

struct SelectArgs {
  std::string features, objective, metric, out;
  std::size_t budget = 1;
  std::optional<std::size_t> kappa;
};

int run_select(const SelectArgs& a) {
  auto m = load_features(a.features);
  std::string metric = a.metric;
  if (metric.empty()) metric = a.objective == "fl" ? "cosine" : "euclidean";
  Selection sel;
  if (a.objective == "fl") {
    detail::require(metric == "cosine",
                    "facility location needs a similarity (--metric cosine)");
    auto kernel = cosine_similarity(m);
    if (a.kappa) kernel = sparsify_knn(kernel, *a.kappa);
    sel = greedy_lazy(FacilityLocation(kernel), BudgetSpec{a.budget});
  } else {
    detail::require(metric == "euclidean",
                    "disparity-min needs a distance (--metric euclidean)");
    detail::require(!a.kappa, "--knn-sparsify applies to fl only");
    auto kernel = euclidean_distance(m);
    sel = farthest_point(DisparityMin(kernel), BudgetSpec{a.budget});
  }
  std::string out;
  for (Index i : sel.indices) out += std::to_string(i) + "\n";
  detail::write_file(a.out, out);
  std::cerr << "selected " << sel.indices.size() << " of " << m.rows()
            << ", objective " << sel.final_value << "\n";
  return 0;
}

struct SplitArgs {
  std::string features, labels, out;
  double holdout = 1.0 / 3.0;
  std::uint64_t split_seed = 0;
};

struct SweepArgs : SplitArgs {
  std::vector<std::string> methods = {"fl", "dm", "random"};
  double step = 5.0;
  std::size_t k = 5;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
};

int run_sweep(const SweepArgs& a) {
  auto ds = load_dataset(a.features, a.labels);
  auto [train, holdout] = split(ds, {a.holdout, a.split_seed, true});
  SweepConfig cfg;
  cfg.fractions = default_fractions(a.step);
  cfg.methods = a.methods;
  cfg.seeds = a.seeds;
  cfg.knn.k = a.k;
  auto result = sweep_goal1(train, holdout, cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  emit_csv(result.records, a.out);
  print_summary(result.records, "percent");
  return 0;
}

struct AlArgs : SplitArgs {
  std::vector<std::string> selectors = {"fl", "dm", "us", "random"};
  std::string uncertainty = "entropy";
  double batch_pct = 5.0, beta_pct = 10.0;
  std::size_t rounds = 10;
  std::size_t init_size = 0;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  double l2 = 1e-2, tol = 1e-6;
  std::size_t max_iters = 2000;
};

int run_al_cmd(const AlArgs& a) {
  auto ds = load_dataset(a.features, a.labels);
  auto [train, holdout] = split(ds, {a.holdout, a.split_seed, true});
  ALConfig base;
  base.batch_percent = a.batch_pct;
  base.beta_percent = a.beta_pct;
  base.rounds = a.rounds;
  base.method = parse_uncertainty_method(a.uncertainty);
  base.initial_seed_size = a.init_size;
  base.logreg.l2 = a.l2;
  base.logreg.tol = a.tol;
  base.logreg.max_iters = a.max_iters;
  std::vector<Selector> selectors;
  for (const auto& s : a.selectors) selectors.push_back(parse_selector(s));
  auto cfgs = make_goal2_configs(base, selectors, a.seeds);
  auto records = run_goal2(train, holdout, cfgs);
  emit_csv(records, a.out);
  print_summary(records, "round");
  return 0;
}

void add_split_options(CLI::App* cmd, SplitArgs& a) {
  cmd->add_option("--features", a.features, "Feature file (SUBSELF1 or .csv)")
      ->required();
  cmd->add_option("--labels", a.labels, "Label file, one integer per line")
      ->required();
  cmd->add_option("--holdout-frac", a.holdout, "Holdout fraction in (0,1)")
      ->capture_default_str();
  cmd->add_option("--split-seed", a.split_seed, "Seed of the stratified split")
      ->capture_default_str();
  cmd->add_option("--out", a.out, "Output curve CSV")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset selection and filter-then-select active learning"};
  app.require_subcommand(1);

  GenSynthArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-synth", "Write a synthetic dataset");
  gen_cmd->add_option("--out", gen.out, "Feature file to write")->required();
  gen_cmd->add_option("--labels", gen.labels, "Label file to write")->required();
  gen_cmd->add_option("--n", gen.n, "Instances")->capture_default_str();
  gen_cmd->add_option("--d", gen.d, "Feature dimension")->capture_default_str();
  gen_cmd->add_option("--classes", gen.classes, "Class count")
      ->capture_default_str();
  gen_cmd->add_option("--sep", gen.sep, "Class-mean scale")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();

  SelectArgs sel;
  auto* sel_cmd = app.add_subcommand("select", "Select a budgeted subset");
  sel_cmd->add_option("--features", sel.features, "Feature file")->required();
  sel_cmd->add_option("--objective", sel.objective, "fl or dm")
      ->required()
      ->check(CLI::IsMember({"fl", "dm"}));
  sel_cmd->add_option("--metric", sel.metric,
                      "cosine (fl) or euclidean (dm); defaults per objective")
      ->check(CLI::IsMember({"cosine", "euclidean"}));
  sel_cmd->add_option("--budget", sel.budget, "Cardinality budget")->required();
  sel_cmd->add_option("--knn-sparsify", sel.kappa,
                      "Keep only KAPPA nearest neighbors per row (fl)");
  sel_cmd->add_option("--out", sel.out, "Selected indices, one per line")
      ->required();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "kNN accuracy vs subset size");
  add_split_options(sweep_cmd, sweep);
  sweep_cmd->add_option("--methods", sweep.methods, "fl,dm,random")
      ->delimiter(',')
      ->check(CLI::IsMember({"fl", "dm", "random"}));
  sweep_cmd->add_option("--step", sweep.step, "Fraction step in percent")
      ->capture_default_str();
  sweep_cmd->add_option("--k", sweep.k, "kNN neighbors")->capture_default_str();
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seeds of the random arm")
      ->delimiter(',');

  AlArgs al;
  auto* al_cmd = app.add_subcommand("al", "Paired active-learning curves");
  add_split_options(al_cmd, al);
  al_cmd->add_option("--selectors", al.selectors, "fl,dm,us,random")
      ->delimiter(',')
      ->check(CLI::IsMember({"fl", "dm", "us", "random"}));
  al_cmd->add_option("--uncertainty", al.uncertainty, "lc, margin or entropy")
      ->check(CLI::IsMember({"lc", "margin", "entropy"}))
      ->capture_default_str();
  al_cmd->add_option("--batch-pct", al.batch_pct,
                     "Batch size B, percent of the training pool")
      ->capture_default_str();
  al_cmd->add_option("--beta-pct", al.beta_pct,
                     "Filter size beta, percent of the unlabeled pool")
      ->capture_default_str();
  al_cmd->add_option("--rounds", al.rounds, "Rounds T")->capture_default_str();
  al_cmd->add_option("--seeds", al.seeds, "Run seeds")->delimiter(',');
  al_cmd->add_option("--init-size", al.init_size,
                     "Initial labeled set size (0: max(C, batch))")
      ->capture_default_str();
  al_cmd->add_option("--l2", al.l2, "Logistic-regression L2 strength")
      ->capture_default_str();
  al_cmd->add_option("--tol", al.tol, "Gradient tolerance")->capture_default_str();
  al_cmd->add_option("--max-iters", al.max_iters, "Gradient steps per fit")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen_synth(gen);
    if (*sel_cmd) return run_select(sel);
    if (*sweep_cmd) return run_sweep(sweep);
    if (*al_cmd) return run_al_cmd(al);
  } catch (const subsel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
