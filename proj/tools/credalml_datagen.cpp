// Generates the bundled synthetic discrete dataset: iid uniform features in
// {0..4} and labels drawn from feature-driven logistic probabilities clamped
// away from 0/1. Deterministic per seed.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "credalml/harness.hpp"
#include "credalml/ncc.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic multi-label dataset generator"};
  int n = 500, d = 8, m = 6;
  std::uint64_t seed = 7;
  std::string out_path;
  app.add_option("--n", n, "rows");
  app.add_option("--d", d, "feature columns");
  app.add_option("--m", m, "label columns");
  app.add_option("--seed", seed, "seed");
  app.add_option("--out", out_path, "output CSV path (default stdout)");
  CLI11_PARSE(app, argc, argv);

  try {
    const credalml::TabularDataset data =
        credalml::make_synthetic_dataset(n, d, m, seed);
    const std::string csv = credalml::dataset_to_csv(data);
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open: " + out_path);
      out << csv;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
