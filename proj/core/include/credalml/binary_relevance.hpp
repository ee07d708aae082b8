#pragma once

// Closed-form skeptical rules for the independence (binary-relevance) credal
// set built from per-label marginal intervals: the exact partial-vector
// prediction (E-admissible == maximal here), interval dominance, and the
// Gamma-minimax / Gamma-minimin point rules with surfaced indifference.

#include <string>
#include <utility>
#include <vector>

#include "credalml/tree.hpp"
#include "credalml/types.hpp"

namespace credalml {

// m independent interval marginals for P(Y_i = 1); the credal set is every
// product of per-label choices inside the intervals.
struct MarginalIntervalModel {
  int m = 0;
  std::vector<ProbabilityInterval> intervals;

  MarginalIntervalModel() = default;
  explicit MarginalIntervalModel(std::vector<ProbabilityInterval> ivs);
};

// Exact set-valued prediction under Hamming loss for this credal set, as a
// partial vector: 1 if lower > 1/2, 0 if upper < 1/2, * otherwise. For this
// model the E-admissible and maximal sets coincide with its expansion.
PartialVector br_skeptical_prediction(const MarginalIntervalModel& model);

// Best worst-case point prediction; per label 1 if lower(Y_i=1) > lower(Y_i=0),
// 0 if smaller, * marking indifference. Coincides with gamma_minimin.
PartialVector gamma_minimax(const MarginalIntervalModel& model);

// Best best-case point prediction; per label comparison of the uppers.
PartialVector gamma_minimin(const MarginalIntervalModel& model);

// Keep y unless some y' has a worst-case expected Hamming loss below y's
// best case. Always a superset of the skeptical prediction's expansion.
// Guarded at m <= 14.
PredictionSet interval_dominance_set(const MarginalIntervalModel& model);

// [lower, upper] expected Hamming loss of predicting y under the model:
// sums of per-label mistake-probability bounds.
std::pair<double, double> br_hamming_bounds(const MarginalIntervalModel& model,
                                            const BinaryVector& y);

// Tree whose every depth-d node carries interval d+1: its credal set admits
// path-dependent choices, yet its Hamming-maximal set equals the skeptical
// prediction's expansion, which makes it a cross-check harness.
ImpreciseBinaryTree br_equivalent_tree(const MarginalIntervalModel& model);

// JSON wire format: [[lower, upper], ...], one pair per label.
std::string br_model_to_json(const MarginalIntervalModel& model);
MarginalIntervalModel br_model_from_json(const std::string& text);
MarginalIntervalModel br_model_from_json_file(const std::string& path);

}  // namespace credalml
