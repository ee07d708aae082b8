#pragma once

// Per-label naive credal classifier over discrete features: count tables
// learned from data, feature-conditional bounds from the imprecise Dirichlet
// model (n/(N+s) .. (n+s)/(N+s)) with a precise empirical class prior, and
// closed-form posterior interval queries feeding the binary-relevance rules.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "credalml/types.hpp"

namespace credalml {

// Raw table as loaded from CSV: real features, labels in {0,1,-1 (missing)}.
struct TabularDataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> label_names;
  std::vector<std::vector<double>> features;  // n rows x d
  std::vector<std::vector<int>> labels;       // n rows x m

  int n() const { return static_cast<int>(features.size()); }
  int d() const { return static_cast<int>(feature_names.size()); }
  int m() const { return static_cast<int>(label_names.size()); }
};

// Equal-width binning parameters; values at a column's max fall in the top
// bin, constant columns collapse to bin 0.
struct Discretization {
  int z = 0;                  // bins per feature
  std::vector<double> mins;   // per feature
  std::vector<double> widths; // per feature; 0 marks a constant column

  int bin(int feature, double value) const;
};

// Discrete-feature dataset ready for counting; labels may be missing (-1).
struct DiscreteDataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> label_names;
  std::vector<int> domain;                 // values per feature
  std::vector<std::vector<int>> features;  // n rows x d
  std::vector<std::vector<int>> labels;    // n rows x m; -1 = missing
  Discretization disc;

  int n() const { return static_cast<int>(features.size()); }
  int d() const { return static_cast<int>(feature_names.size()); }
  int m() const { return static_cast<int>(label_names.size()); }
};

// One bin assignment for a single column; exposed for direct testing.
std::vector<int> discretize_column(const std::vector<double>& column, int z);

// Equal-width discretization of every feature column, z >= 2.
DiscreteDataset discretize(const TabularDataset& data, int z);

// CSV schema: header row, feature columns first, then label columns whose
// names carry a "y:" prefix; missing labels encoded as "*".
TabularDataset dataset_from_csv(std::istream& in);
TabularDataset dataset_from_csv_file(const std::string& path);
std::string dataset_to_csv(const TabularDataset& data);

// Count tables for one label: class totals and per-feature-value counts.
struct LabelTable {
  std::array<std::int64_t, 2> class_count{0, 0};
  // counts[feature][class][value]
  std::vector<std::array<std::vector<std::int64_t>, 2>> counts;
  bool vacuous = false;  // some class never observed -> predict [0,1]
};

struct NccModel {
  int d = 0, m = 0;
  double s = 0.0;  // imprecision hyper-parameter
  std::vector<int> domain;
  Discretization disc;
  std::vector<LabelTable> tables;  // one per label

  NccModel with_s(double s_new) const;  // same counts, different imprecision
};

// Learns exact counts; rows with a missing label are excluded from that
// label's tables only.
NccModel ncc_fit(const DiscreteDataset& data, double s);

// Posterior interval for P(Y_j = 1 | x) from the closed forms
//   lower = (1 + [P(0) prod upper(x_i|0)] / [P(1) prod lower(x_i|1)])^-1
// and its mirror for the upper bound; s = 0 collapses to the precise
// naive-Bayes posterior. Unseen feature values contribute zero counts.
ProbabilityInterval ncc_posterior(const NccModel& model,
                                  const std::vector<int>& x, int label);

// All m posterior intervals for one feature row.
std::vector<ProbabilityInterval> ncc_predict(const NccModel& model,
                                             const std::vector<int>& x);

// JSON round trip: counts, s, domain sizes, and bin edges.
std::string ncc_to_json(const NccModel& model);
NccModel ncc_from_json(const std::string& text);

}  // namespace credalml
