// Command-line front end: skeptical multi-label decisions on credal models.
//
// Subcommands:
//   simulate  exact-vs-outer study over random interval trees (CSV + summary)
//   timing    pruned sweep vs naive pairwise enumeration wall-time trend
//   examples  replay the bundled worked examples and verify published values
//   dataset   corruption / downsampling pipelines on a CSV dataset
//   br        closed-form rules for per-label interval marginals
//   decide    exact maximal set and outer approximation for one tree
//
// CSV goes to --out (or stdout); a JSON run summary goes to stdout when the
// CSV was sent to a file, to stderr otherwise. Exit code 0 only when the run
// finished with every audit passing.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "credalml/harness.hpp"

namespace {

using credalml::ExperimentConfig;
using nlohmann::json;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// CSV to --out or stdout; summary JSON to stdout when the CSV went to a
// file, to stderr when the CSV occupies stdout.
void emit(const std::string& csv, const std::string& out_path,
          const json& summary) {
  if (out_path.empty()) {
    std::cout << csv;
    std::cerr << summary.dump(2) << '\n';
  } else {
    write_text_file(out_path, csv);
    std::cout << summary.dump(2) << '\n';
  }
}

ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return ExperimentConfig{};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return credalml::config_from_json(text);
}

int run_simulate(const ExperimentConfig& cfg, const std::string& out_path) {
  const credalml::SimulationResult result = credalml::run_simulation(cfg);
  json summary = {{"kind", "simulate"},
                  {"cells", result.cells.size()},
                  {"trees_total", result.trees_total},
                  {"checks_law_held", result.checks_law_held},
                  {"containment_held", true},
                  {"config", json::parse(credalml::config_to_json(cfg))}};
  emit(credalml::simulation_csv(result), out_path, summary);
  return result.checks_law_held ? 0 : 1;
}

int run_timing_cmd(const ExperimentConfig& cfg, const std::string& out_path) {
  const credalml::TimingResult result = credalml::run_timing(cfg);
  bool ratio_increasing = true;
  for (std::size_t i = 1; i < result.rows.size(); ++i)
    ratio_increasing =
        ratio_increasing && result.rows[i].ratio > result.rows[i - 1].ratio;
  json summary = {{"kind", "timing"},
                  {"rows", result.rows.size()},
                  {"agreement_audit", true},
                  {"ratio_increasing", ratio_increasing},
                  {"config", json::parse(credalml::config_to_json(cfg))}};
  emit(credalml::timing_csv(result), out_path, summary);
  return 0;  // the agreement audit inside run_timing throws on failure
}

int run_examples(const std::string& fixtures_dir) {
  const credalml::WorkedExamplesResult result =
      credalml::run_worked_examples(fixtures_dir);
  for (const credalml::ExampleCheck& check : result.checks)
    std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << ": "
              << check.detail << '\n';
  std::cout << (result.all_pass() ? "all worked examples pass"
                                  : "worked example MISMATCH")
            << '\n';
  return result.all_pass() ? 0 : 1;
}

int run_dataset(const ExperimentConfig& cfg, const std::string& out_path) {
  const credalml::MetricsTable table = credalml::run_dataset_experiment(cfg);
  json summary = {{"kind", cfg.kind},
                  {"rows", table.rows.size()},
                  {"config", json::parse(credalml::config_to_json(cfg))}};
  emit(credalml::metrics_csv(table), out_path, summary);
  return 0;
}

int run_br(const std::string& model_path) {
  const credalml::MarginalIntervalModel model =
      credalml::br_model_from_json_file(model_path);
  const credalml::PartialVector skeptical =
      credalml::br_skeptical_prediction(model);
  const credalml::PredictionSet id = credalml::interval_dominance_set(model);
  json bounds = json::array();
  for (const credalml::BinaryVector& y :
       credalml::PredictionSet::full(model.m).vectors()) {
    const auto [lo, hi] = credalml::br_hamming_bounds(model, y);
    bounds.push_back({{"y", y.str()}, {"lower", lo}, {"upper", hi}});
  }
  json out = {{"m", model.m},
              {"skeptical", skeptical.str()},
              {"gamma_minimax", credalml::gamma_minimax(model).str()},
              {"gamma_minimin", credalml::gamma_minimin(model).str()},
              {"interval_dominance", id.strings()},
              {"expected_loss_bounds", bounds}};
  const auto id_partial = credalml::is_partial_vector(id);
  if (id_partial) out["interval_dominance_partial"] = id_partial->str();
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_decide(const std::string& tree_path, bool trace) {
  const credalml::ImpreciseBinaryTree tree =
      credalml::tree_from_json_file(tree_path);
  const credalml::TreeOracle oracle(tree);
  credalml::MaximalityOptions options;
  options.trace = trace;
  const credalml::MaximalityResult result =
      credalml::maximal_set(oracle, options);
  std::vector<credalml::ProbabilityInterval> marginals;
  for (int i = 1; i <= tree.m; ++i)
    marginals.push_back(credalml::tree_marginal(tree, i));
  const credalml::PartialVector outer =
      credalml::outer_partial_vector(marginals);
  const long distance = credalml::set_distance(outer, result.set);

  json out = {{"m", tree.m},
              {"maximal", result.set.strings()},
              {"checks", result.checks},
              {"outer", outer.str()},
              {"outer_minus_exact", distance}};
  json marg = json::array();
  for (const credalml::ProbabilityInterval& iv : marginals)
    marg.push_back({iv.lower, iv.upper});
  out["marginals"] = marg;
  if (trace) {
    json rows = json::array();
    for (const credalml::DominanceRecord& rec : result.trace) {
      json indices = json::array(), values = json::array();
      for (int i : rec.assignment.indices) indices.push_back(i);
      for (int v : rec.assignment.values) values.push_back(v);
      rows.push_back({{"indices", indices},
                      {"values", values},
                      {"statistic", rec.statistic},
                      {"dominates", rec.dominates}});
    }
    out["trace"] = rows;
  }
  std::cout << out.dump(2) << '\n';
  return 0;  // set_distance throws if containment is violated
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skeptical multi-label prediction under credal uncertainty"};
  app.require_subcommand(1);

  std::string config_path, out_path;

  // --- simulate ---
  auto* sim = app.add_subcommand(
      "simulate", "exact vs outer-approximation study on random trees");
  std::vector<int> sim_ms;
  std::vector<double> sim_eps;
  int sim_trees = -1, sim_reps = -1;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false, full_scale = false;
  sim->add_option("--config", config_path, "JSON config file");
  sim->add_option("--m", sim_ms, "label counts")->delimiter(',');
  sim->add_option("--eps", sim_eps, "interval half-widths")->delimiter(',');
  sim->add_option("--trees", sim_trees, "trees per (m, eps) cell");
  sim->add_option("--reps", sim_reps, "repetitions per cell");
  sim->add_option("--seed", sim_seed, "master seed")
      ->each([&](const std::string&) { sim_seed_set = true; });
  sim->add_flag("--paper-scale", full_scale,
                "full-scale preset: 2000 trees x 5 repetitions");
  sim->add_option("--out", out_path, "CSV output path (default stdout)");

  // --- timing ---
  auto* tim = app.add_subcommand(
      "timing", "pruned sweep vs naive pairwise enumeration timing");
  std::vector<int> tim_ms{3, 4, 5, 6, 7};
  int tim_trees = -1;
  std::uint64_t tim_seed = 0;
  bool tim_seed_set = false;
  tim->add_option("--config", config_path, "JSON config file");
  tim->add_option("--m", tim_ms, "label counts (each <= 8)")->delimiter(',');
  tim->add_option("--trees", tim_trees, "trees per m");
  tim->add_option("--seed", tim_seed, "master seed")
      ->each([&](const std::string&) { tim_seed_set = true; });
  tim->add_option("--out", out_path, "CSV output path (default stdout)");

  // --- examples ---
  auto* exa = app.add_subcommand(
      "examples", "replay bundled worked examples and verify their values");
  std::string fixtures_dir = "fixtures";
  exa->add_option("--fixtures", fixtures_dir, "fixture directory");

  // --- dataset ---
  auto* dat = app.add_subcommand(
      "dataset", "corruption / downsampling pipeline on a CSV dataset");
  std::string data_path, protocol = "corruption", corruption = "missing";
  std::vector<int> levels, train_percents;
  std::vector<double> s_sweep, gamma_sweep, c_sep_sweep, c_par_sweep;
  std::vector<std::string> methods;
  double beta = -1.0;
  int repeats = -1, folds = -1, shuffles = -1, bins = -1;
  bool per_column = false;
  std::uint64_t dat_seed = 0;
  bool dat_seed_set = false;
  dat->add_option("--config", config_path, "JSON config file");
  dat->add_option("--data", data_path, "dataset CSV path");
  dat->add_option("--protocol", protocol, "corruption | downsample");
  dat->add_option("--corruption", corruption,
                  "missing | reversing | flipping");
  dat->add_option("--levels", levels, "corruption percentages")
      ->delimiter(',');
  dat->add_option("--beta", beta, "flipping Bernoulli parameter");
  dat->add_option("--train-percents", train_percents,
                  "downsampling training percentages")
      ->delimiter(',');
  dat->add_option("--repeats", repeats, "downsampling repeats per percent");
  dat->add_option("--folds", folds, "cross-validation folds");
  dat->add_option("--shuffles", shuffles, "cross-validation shuffles");
  dat->add_option("--bins", bins, "equal-width discretization bins");
  dat->add_flag("--per-column", per_column,
                "corrupt per label column instead of over the whole grid");
  dat->add_option("--methods", methods,
                  "precise,skeptic,reject,abstain-sep,abstain-par")
      ->delimiter(',');
  dat->add_option("--s", s_sweep, "imprecision sweep")->delimiter(',');
  dat->add_option("--gamma", gamma_sweep, "rejection band sweep")
      ->delimiter(',');
  dat->add_option("--c-sep", c_sep_sweep, "linear abstention cost sweep")
      ->delimiter(',');
  dat->add_option("--c-par", c_par_sweep, "concave abstention cost sweep")
      ->delimiter(',');
  dat->add_option("--seed", dat_seed, "master seed")
      ->each([&](const std::string&) { dat_seed_set = true; });
  dat->add_option("--out", out_path, "CSV output path (default stdout)");

  // --- br ---
  auto* br = app.add_subcommand(
      "br", "closed-form rules for per-label interval marginals");
  std::string model_path;
  br->add_option("--model", model_path, "marginal model JSON ([[l,u],...])")
      ->required();

  // --- decide ---
  auto* dec = app.add_subcommand(
      "decide", "exact maximal set and outer approximation for one tree");
  std::string tree_path;
  bool trace = false;
  dec->add_option("--tree", tree_path, "tree JSON file")->required();
  dec->add_flag("--trace", trace, "include every dominance check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      cfg.kind = "simulate";
      if (!sim_ms.empty()) cfg.ms = sim_ms;
      if (!sim_eps.empty()) cfg.epsilons = sim_eps;
      if (sim_trees > 0) cfg.trees_per_cell = sim_trees;
      if (sim_reps > 0) cfg.repetitions = sim_reps;
      if (sim_seed_set) cfg.seed = sim_seed;
      if (full_scale) cfg.apply_full_scale();
      return run_simulate(cfg, out_path);
    }
    if (tim->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      cfg.kind = "timing";
      cfg.ms = tim_ms;
      if (tim_trees > 0) cfg.timing_trees = tim_trees;
      if (tim_seed_set) cfg.seed = tim_seed;
      return run_timing_cmd(cfg, out_path);
    }
    if (exa->parsed()) return run_examples(fixtures_dir);
    if (dat->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      cfg.kind = protocol;
      if (!data_path.empty()) cfg.dataset_path = data_path;
      cfg.corruption = corruption;
      if (!levels.empty()) cfg.levels = levels;
      if (beta >= 0.0) cfg.beta = beta;
      if (!train_percents.empty()) cfg.train_percents = train_percents;
      if (repeats > 0) cfg.repeats = repeats;
      if (folds > 0) cfg.folds = folds;
      if (shuffles > 0) cfg.shuffles = shuffles;
      if (bins > 0) cfg.bins = bins;
      if (per_column) cfg.per_column = true;
      if (!methods.empty()) cfg.methods = methods;
      if (!s_sweep.empty()) cfg.s_sweep = s_sweep;
      if (!gamma_sweep.empty()) cfg.gamma_sweep = gamma_sweep;
      if (!c_sep_sweep.empty()) cfg.c_sep_sweep = c_sep_sweep;
      if (!c_par_sweep.empty()) cfg.c_par_sweep = c_par_sweep;
      if (dat_seed_set) cfg.seed = dat_seed;
      return run_dataset(cfg, out_path);
    }
    if (br->parsed()) return run_br(model_path);
    if (dec->parsed()) return run_decide(tree_path, trace);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
