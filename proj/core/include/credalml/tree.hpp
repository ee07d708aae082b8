#pragma once

// Imprecise probabilistic binary trees over a fixed label chain: node k at
// depth d carries an interval for P(Y_{d+1} = 1 | path to k). Lower
// expectations of leaf cost vectors are exact via backward recursion; a
// brute-force extreme-point oracle over endpoint choices verifies them.

#include <random>
#include <string>
#include <vector>

#include "credalml/types.hpp"

namespace credalml {

// Full binary tree of depth m stored breadth-first: 2^m - 1 internal nodes,
// node k's children at 2k+1 (branch Y=0) and 2k+2 (branch Y=1). The interval
// is for the Y=1 branch; the Y=0 branch carries its complement.
struct ImpreciseBinaryTree {
  int m = 0;
  std::vector<ProbabilityInterval> nodes;

  ImpreciseBinaryTree() = default;
  ImpreciseBinaryTree(int m_, std::vector<ProbabilityInterval> nodes_);

  bool degenerate() const;  // every node interval has zero width
};

// One real cost per leaf/outcome; leaf order equals BinaryVector mask order
// (label 1 at the most significant bit).
struct CostVector {
  int m = 0;
  std::vector<double> costs;  // size 2^m

  CostVector() = default;
  CostVector(int m_, std::vector<double> costs_);

  static CostVector constant(int m, double k);
  static CostVector indicator(const BinaryVector& y);   // 1 at y, else 0
  static CostVector label_indicator(int m, int i, int value);  // 1[y_i = value]
  CostVector negated() const;
};

// Exact lower expectation of the cost over the tree's credal set, computed
// leaf-to-root: each node takes the interval endpoint minimizing
// p*v1 + (1-p)*v0 (ties take the lower endpoint; the value is unaffected).
double lower_expectation(const ImpreciseBinaryTree& tree, const CostVector& cost);

// Conjugate bound: -lower_expectation(tree, -cost).
double upper_expectation(const ImpreciseBinaryTree& tree, const CostVector& cost);

// [lower, upper] for P(Y_i = 1), i 1-based.
ProbabilityInterval tree_marginal(const ImpreciseBinaryTree& tree, int i);

// Product of branch probabilities along y's path; degenerate trees only.
double joint_probability(const ImpreciseBinaryTree& tree, const BinaryVector& y);

// Per node: theta ~ U[0,1], interval [max(0, theta-eps), min(theta+eps, 1)].
ImpreciseBinaryTree generate_tree(int m, double epsilon, std::mt19937_64& rng);

// Minimum precise expectation over all 2^(2^m - 1) assignments of each node
// to one of its interval endpoints. Guarded at m <= 4; verification oracle.
double extreme_point_oracle(const ImpreciseBinaryTree& tree, const CostVector& cost);

// JSON wire format: {"m": int, "nodes": [[lower, upper], ...]} breadth-first.
std::string tree_to_json(const ImpreciseBinaryTree& tree);
ImpreciseBinaryTree tree_from_json(const std::string& text);
ImpreciseBinaryTree tree_from_json_file(const std::string& path);
void tree_to_json_file(const ImpreciseBinaryTree& tree, const std::string& path);

// Portable uniform draw in [0,1) from the engine's top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace credalml
