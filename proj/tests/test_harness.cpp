// Experiment drivers: config round trip, simulation aggregation and
// determinism, timing table shape, worked-example audits, and the dataset
// pipelines.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "credalml/harness.hpp"
#include "doctest.h"

using namespace credalml;

namespace {

const std::string kFixtures = CREDALML_FIXTURES_DIR;

ExperimentConfig tiny_simulation() {
  ExperimentConfig cfg;
  cfg.kind = "simulate";
  cfg.ms = {2, 3};
  cfg.epsilons = {0.05, 0.45};
  cfg.trees_per_cell = 10;
  cfg.repetitions = 2;
  cfg.seed = 9;
  return cfg;
}

std::string write_temp_dataset(const std::string& path) {
  TabularDataset data = make_synthetic_dataset(120, 4, 3, 99);
  std::ofstream out(path);
  out << dataset_to_csv(data);
  return path;
}

}  // namespace

TEST_CASE("config json round trip") {
  ExperimentConfig cfg;
  cfg.kind = "timing";
  cfg.ms = {3, 4};
  cfg.epsilons = {0.1, 0.2};
  cfg.trees_per_cell = 7;
  cfg.repetitions = 2;
  cfg.timing_trees = 5;
  cfg.seed = 123;
  cfg.dataset_path = "x.csv";
  cfg.corruption = "reversing";
  cfg.levels = {10, 20};
  cfg.beta = 0.25;
  cfg.train_percents = {30};
  cfg.repeats = 4;
  cfg.folds = 3;
  cfg.shuffles = 2;
  cfg.bins = 7;
  cfg.per_column = true;
  cfg.methods = {"precise", "reject"};
  cfg.s_sweep = {0.5};
  cfg.gamma_sweep = {0.1};
  cfg.c_sep_sweep = {0.2};
  cfg.c_par_sweep = {0.4};

  ExperimentConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.kind == cfg.kind);
  CHECK(back.ms == cfg.ms);
  CHECK(back.epsilons == cfg.epsilons);
  CHECK(back.trees_per_cell == cfg.trees_per_cell);
  CHECK(back.repetitions == cfg.repetitions);
  CHECK(back.timing_trees == cfg.timing_trees);
  CHECK(back.seed == cfg.seed);
  CHECK(back.dataset_path == cfg.dataset_path);
  CHECK(back.corruption == cfg.corruption);
  CHECK(back.levels == cfg.levels);
  CHECK(back.beta == cfg.beta);
  CHECK(back.train_percents == cfg.train_percents);
  CHECK(back.repeats == cfg.repeats);
  CHECK(back.folds == cfg.folds);
  CHECK(back.shuffles == cfg.shuffles);
  CHECK(back.bins == cfg.bins);
  CHECK(back.per_column == cfg.per_column);
  CHECK(back.methods == cfg.methods);
  CHECK(back.s_sweep == cfg.s_sweep);
  CHECK(back.gamma_sweep == cfg.gamma_sweep);
  CHECK(back.c_sep_sweep == cfg.c_sep_sweep);
  CHECK(back.c_par_sweep == cfg.c_par_sweep);

  // Absent keys keep their defaults.
  ExperimentConfig sparse = config_from_json(R"({"kind": "simulate"})");
  ExperimentConfig defaults;
  CHECK(sparse.trees_per_cell == defaults.trees_per_cell);
  CHECK(sparse.methods == defaults.methods);

  CHECK_THROWS_AS(config_from_json("{bad"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"trees_per_cell": "many"})"),
                  std::invalid_argument);

  ExperimentConfig scaled;
  scaled.apply_full_scale();
  CHECK(scaled.trees_per_cell == 2000);
  CHECK(scaled.repetitions == 5);
}

TEST_CASE("simulation: audit law, aggregation, determinism") {
  ExperimentConfig cfg = tiny_simulation();
  SimulationResult result = run_simulation(cfg);

  CHECK(result.checks_law_held);
  CHECK(result.trees_total == 10 * 2 * 2 * 2);
  REQUIRE(result.cells.size() == 4);
  REQUIRE(result.rep_rows.size() == 8);

  // Reported cell means must equal the mean over repetition rows, and the
  // half-widths the normal-approximation formula.
  for (const SimulationCell& cell : result.cells) {
    std::vector<double> q0s, dists;
    for (const SimulationRepRow& rep : result.rep_rows) {
      if (rep.m != cell.m || rep.epsilon != cell.epsilon) continue;
      q0s.push_back(rep.shares.q0);
      dists.push_back(rep.mean_distance);
    }
    REQUIRE(static_cast<int>(q0s.size()) == cell.reps);
    double mean = 0.0;
    for (double v : q0s) mean += v;
    mean /= static_cast<double>(q0s.size());
    CHECK(cell.mean.q0 == doctest::Approx(mean).epsilon(1e-9));

    double var = 0.0;
    for (double v : q0s) var += (v - mean) * (v - mean);
    var /= static_cast<double>(q0s.size() - 1);
    double half = 1.96 * std::sqrt(var) / std::sqrt(static_cast<double>(q0s.size()));
    CHECK(cell.half_width.q0 == doctest::Approx(half).epsilon(1e-9));

    double dist_mean = 0.0;
    for (double v : dists) dist_mean += v;
    dist_mean /= static_cast<double>(dists.size());
    CHECK(cell.mean_distance == doctest::Approx(dist_mean).epsilon(1e-9));

    // Maximal vacuity keeps the outer approximation exact.
    if (cell.epsilon == 0.45) CHECK(cell.mean.q0 == doctest::Approx(100.0).epsilon(1e-12));
  }

  std::string csv = simulation_csv(result);
  CHECK(csv.rfind("m,epsilon,trees,reps,q0,q0_half,q25,q25_half,q50,q50_half,"
                  "q100,q100_half,mean_distance\n", 0) == 0);
  CHECK(simulation_csv(run_simulation(cfg)) == csv);  // bit-identical rerun
}

TEST_CASE("timing table: check-count columns and positive measurements") {
  ExperimentConfig cfg;
  cfg.kind = "timing";
  cfg.ms = {2, 3};
  cfg.timing_trees = 4;
  cfg.seed = 5;
  TimingResult result = run_timing(cfg);

  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].m == 2);
  CHECK(result.rows[0].naive_checks == 12);
  CHECK(result.rows[0].pruned_checks == 8);
  CHECK(result.rows[1].m == 3);
  CHECK(result.rows[1].naive_checks == 56);
  CHECK(result.rows[1].pruned_checks == 26);
  for (const TimingRow& row : result.rows) {
    CHECK(row.trees == 4);
    CHECK(row.reps >= 1);
    CHECK(row.naive_ms > 0.0);
    CHECK(row.pruned_ms > 0.0);
    CHECK(row.ratio == doctest::Approx(row.naive_ms / row.pruned_ms).epsilon(1e-12));
  }

  std::string csv = timing_csv(result);
  CHECK(csv.rfind("m,trees,reps,naive_ms,pruned_ms,ratio,naive_checks,pruned_checks\n",
                  0) == 0);

  ExperimentConfig bad = cfg;
  bad.ms = {9};
  CHECK_THROWS_AS(run_timing(bad), std::invalid_argument);
}

TEST_CASE("worked-example audits all pass") {
  WorkedExamplesResult result = run_worked_examples(kFixtures);
  CHECK(result.checks.size() == 7);
  for (const ExampleCheck& check : result.checks) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.pass);
  }
  CHECK(result.all_pass());
}

TEST_CASE("synthetic dataset generator") {
  TabularDataset data = make_synthetic_dataset(200, 5, 4, 31);
  CHECK(data.n() == 200);
  CHECK(data.d() == 5);
  CHECK(data.m() == 4);
  CHECK(data.feature_names.front() == "f1");
  CHECK(data.feature_names.back() == "f5");
  CHECK(data.label_names.front() == "y1");
  CHECK(data.label_names.back() == "y4");

  for (const auto& row : data.features)
    for (double v : row) {
      CHECK(v >= 0.0);
      CHECK(v <= 4.0);
      CHECK(v == std::floor(v));
    }
  for (int j = 0; j < data.m(); ++j) {
    int ones = 0;
    for (const auto& row : data.labels) {
      CHECK((row[j] == 0 || row[j] == 1));
      ones += row[j];
    }
    CHECK(ones > 0);
    CHECK(ones < data.n());
  }

  TabularDataset again = make_synthetic_dataset(200, 5, 4, 31);
  CHECK(again.features == data.features);
  CHECK(again.labels == data.labels);
}

TEST_CASE("corruption pipeline: trial structure and baseline equalities") {
  const std::string path = "harness_corruption_tmp.csv";
  write_temp_dataset(path);

  ExperimentConfig cfg;
  cfg.kind = "corruption";
  cfg.dataset_path = path;
  cfg.corruption = "missing";
  cfg.levels = {0, 40};
  cfg.folds = 3;
  cfg.shuffles = 2;
  cfg.bins = 5;
  cfg.seed = 17;
  cfg.s_sweep = {0.0, 1.0};
  cfg.gamma_sweep = {0.0, 0.2};
  cfg.c_sep_sweep = {0.15};
  cfg.c_par_sweep = {0.3};

  MetricsTable table = run_dataset_experiment(cfg);
  // 2 levels x 6 trials x (precise 1 + skeptic 2 + reject 2 + sep 1 + par 1).
  CHECK(table.rows.size() == 2 * 6 * 7);

  std::map<std::pair<int, int>, std::map<std::pair<std::string, double>, MetricsRow>>
      by_trial;
  for (const MetricsRow& row : table.rows) {
    CHECK(row.dataset == "harness_corruption_tmp");
    CHECK((row.level == 0 || row.level == 40));
    CHECK(row.trial >= 0);
    CHECK(row.trial < 6);
    CHECK(row.ic >= 0.0);
    CHECK(row.ic <= 1.0);
    CHECK(row.cp >= 0.0);
    CHECK(row.cp <= 1.0);
    by_trial[{row.level, row.trial}][{row.method, row.hyperparameter}] = row;
  }

  for (const auto& [key, rows] : by_trial) {
    const MetricsRow& precise = rows.at({"precise", 0.0});
    CHECK(precise.cp == doctest::Approx(1.0).epsilon(1e-12));

    // Zero imprecision reproduces the precise baseline row for row.
    const MetricsRow& s0 = rows.at({"skeptic", 0.0});
    CHECK(s0.ic == doctest::Approx(precise.ic).epsilon(1e-12));
    CHECK(s0.cp == doctest::Approx(precise.cp).epsilon(1e-12));

    // Imprecision can only abstain more.
    const MetricsRow& s1 = rows.at({"skeptic", 1.0});
    CHECK(s1.cp <= s0.cp + 1e-12);

    // A zero-width band reproduces the precise baseline (no 0.5 posterior
    // ties arise on this dataset and seed).
    const MetricsRow& g0 = rows.at({"reject", 0.0});
    CHECK(g0.ic == doctest::Approx(precise.ic).epsilon(1e-12));
    CHECK(g0.cp == doctest::Approx(precise.cp).epsilon(1e-12));
  }

  std::string csv = metrics_csv(table);
  CHECK(csv.rfind("dataset,method,hyperparameter,level,trial,IC,CP\n", 0) == 0);
  CHECK(metrics_csv(run_dataset_experiment(cfg)) == csv);  // deterministic

  std::remove(path.c_str());
}

TEST_CASE("downsampling pipeline: level is the training percentage") {
  const std::string path = "harness_downsample_tmp.csv";
  write_temp_dataset(path);

  ExperimentConfig cfg;
  cfg.kind = "downsample";
  cfg.dataset_path = path;
  cfg.train_percents = {50, 80};
  cfg.repeats = 2;
  cfg.bins = 5;
  cfg.seed = 21;
  cfg.s_sweep = {0.0, 1.0};
  cfg.gamma_sweep = {0.1};
  cfg.c_sep_sweep = {0.15};
  cfg.c_par_sweep = {0.3};

  MetricsTable table = run_dataset_experiment(cfg);
  CHECK(table.rows.size() == 2 * 2 * 6);
  bool saw50 = false, saw80 = false;
  for (const MetricsRow& row : table.rows) {
    CHECK((row.level == 50 || row.level == 80));
    CHECK(row.trial >= 0);
    CHECK(row.trial < 2);
    saw50 |= row.level == 50;
    saw80 |= row.level == 80;
  }
  CHECK(saw50);
  CHECK(saw80);
  CHECK(metrics_csv(run_dataset_experiment(cfg)) == metrics_csv(table));

  std::remove(path.c_str());
}

TEST_CASE("dataset pipeline error paths") {
  ExperimentConfig cfg;
  cfg.kind = "corruption";
  cfg.dataset_path = "";
  CHECK_THROWS_AS(run_dataset_experiment(cfg), std::invalid_argument);

  cfg.dataset_path = "no_such_file_anywhere.csv";
  CHECK_THROWS_AS(run_dataset_experiment(cfg), std::runtime_error);

  const std::string path = "harness_errors_tmp.csv";
  write_temp_dataset(path);
  cfg.dataset_path = path;
  cfg.methods = {"precise", "mystery"};
  cfg.levels = {0};
  cfg.folds = 2;
  CHECK_THROWS_AS(run_dataset_experiment(cfg), std::invalid_argument);

  ExperimentConfig bad_kind;
  bad_kind.kind = "nonsense";
  bad_kind.dataset_path = path;
  CHECK_THROWS_AS(run_dataset_experiment(bad_kind), std::invalid_argument);

  std::remove(path.c_str());
}
