#pragma once

// Skeptical decision rules under Hamming loss for arbitrary credal sets:
// exact maximality via subset-assignment pruning, the naive pairwise oracle,
// the marginal-interval outer approximation, and a finite-credal-set engine
// for E-admissibility and maximality under arbitrary losses.

#include <cstdint>
#include <vector>

#include "credalml/tree.hpp"
#include "credalml/types.hpp"

namespace credalml {

// Explicit list of joint distributions over the 2^m outcomes.
struct FiniteCredalSet {
  int m = 0;
  std::vector<std::vector<double>> distributions;  // each sums to 1, size 2^m

  FiniteCredalSet() = default;
  FiniteCredalSet(int m_, std::vector<std::vector<double>> dists);
};

// Dense loss table ell(yhat, y) over all ordered pairs of complete vectors.
struct LossMatrix {
  int m = 0;
  std::vector<double> entries;  // row-major, 2^m x 2^m

  static LossMatrix hamming(int m);
  static LossMatrix zero_one(int m);
  double operator()(std::uint32_t yhat, std::uint32_t y) const {
    return entries[(std::size_t{yhat} << m) | y];
  }
};

// Anything that can evaluate exact lower expectations of leaf cost vectors.
class CredalOracle {
 public:
  virtual ~CredalOracle() = default;
  virtual int labels() const = 0;
  virtual double lower(const CostVector& cost) const = 0;
  double upper(const CostVector& cost) const { return -lower(cost.negated()); }
};

class TreeOracle final : public CredalOracle {
 public:
  explicit TreeOracle(const ImpreciseBinaryTree& tree) : tree_(&tree) {}
  int labels() const override { return tree_->m; }
  double lower(const CostVector& cost) const override {
    return lower_expectation(*tree_, cost);
  }

 private:
  const ImpreciseBinaryTree* tree_;
};

class FiniteSetOracle final : public CredalOracle {
 public:
  explicit FiniteSetOracle(const FiniteCredalSet& credal) : credal_(&credal) {}
  int labels() const override { return credal_->m; }
  double lower(const CostVector& cost) const override;

 private:
  const FiniteCredalSet* credal_;
};

// Per-label thresholding of precise marginals: 1 iff p_i >= 1/2 (tie -> 1).
BinaryVector precise_bayes_hamming(const std::vector<double>& marginals);

// Lower expected partial Hamming loss of the complement assignment:
// the statistic whose exceeding |I|/2 certifies dominance.
double dominance_statistic(const CredalOracle& oracle, const Assignment& a);

// True iff vectors agreeing with `a` on its indices dominate those agreeing
// with its complement (all else equal): dominance_statistic > |I|/2, strict
// beyond the 1e-9 tolerance (within tolerance counts as non-dominating).
bool dominance_check(const CredalOracle& oracle, const Assignment& a);

struct DominanceRecord {
  Assignment assignment;  // the candidate-side assignment that was tested
  double statistic;       // lower expected partial Hamming loss of complement
  bool dominates;
};

struct MaximalityOptions {
  bool skip_removed = false;  // skip checks whose removal target is already gone
  bool trace = false;         // record every executed check
};

struct MaximalityResult {
  PredictionSet set;
  std::uint64_t checks = 0;
  std::vector<DominanceRecord> trace;
};

// Exact Hamming-loss maximal set: sweeps index subsets by ascending size
// (lexicographic within a size) and all assignments per subset, removing the
// complement half-space on every successful dominance check. Executes exactly
// 3^m - 1 checks unless skip_removed is set. Guarded at m <= 14.
MaximalityResult maximal_set(const CredalOracle& oracle,
                             const MaximalityOptions& options = {});

// Pairwise maximality oracle under an arbitrary loss: y'' beats y' iff the
// lower expectation of ell(y',.) - ell(y'',.) is positive; keeps the
// undominated vectors. Runs all 2^m(2^m - 1) ordered checks. m <= 8.
PredictionSet maximal_set_pairwise(const CredalOracle& oracle,
                                   const LossMatrix& loss);

// Union over the listed distributions of their expected-loss minimizers
// (ties kept). m <= 8.
PredictionSet eadmissible_set(const FiniteCredalSet& credal,
                              const LossMatrix& loss);

// Per label: 1 if lower > 1/2, 0 if upper < 1/2, * if 1/2 lies inside.
// Always a superset (after expansion) of the exact Hamming-maximal set.
PartialVector outer_partial_vector(const std::vector<ProbabilityInterval>& marginals);

// Theoretical check counts: pruning sweep vs naive pairwise enumeration.
std::uint64_t pruning_check_count(int m);   // 3^m - 1
std::uint64_t pairwise_check_count(int m);  // 2^m (2^m - 1)

}  // namespace credalml
