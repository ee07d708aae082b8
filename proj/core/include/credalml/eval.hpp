#pragma once

// Evaluation utilities: incorrectness/completeness of partial predictions,
// exact-vs-outer set distances with quartile binning, seeded label
// corruption (missing / reversing / flipping), and deterministic dataset
// splitters (downsampling and k-fold).

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "credalml/ncc.hpp"
#include "credalml/types.hpp"

namespace credalml {

// Fraction of decided labels that disagree with the truth; 0 when nothing
// is decided.
double incorrectness(const PartialVector& pred, const BinaryVector& truth);

// Fraction of labels decided.
double completeness(const PartialVector& pred);

struct MetricsRecord {
  double incorrectness = 0.0;
  double completeness = 0.0;
  int decided = 0;
  int abstained = 0;
};

MetricsRecord evaluate_prediction(const PartialVector& pred,
                                  const BinaryVector& truth);

// |expansion of approx| - |exact|; throws if the expansion does not contain
// the exact set (that would signal an inference bug upstream).
long set_distance(const PartialVector& approx, const PredictionSet& exact);

// Shares (percent) of distances falling in: exactly 0; (0, 2^m/4];
// (2^m/4, 2^m/2]; and above. Sums to 100.
struct BinShares {
  double q0 = 0.0, q25 = 0.0, q50 = 0.0, q100 = 0.0;
};
BinShares bin_distances(const std::vector<long>& distances, int m);

enum class CorruptionKind { missing, reversing, flipping };

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::missing;
  double percentage = 0.0;  // share of label cells touched
  double beta = 0.5;        // flipping only: Bernoulli parameter
  std::uint64_t seed = 0;
  bool per_column = false;  // pick cells per label column instead of globally
};

// Returns a corrupted copy of the label matrix (n rows x m, entries 0/1/-1).
// Selects round(pct/100 * cells) cells without replacement; missing sets -1,
// reversing flips the bit, flipping redraws it as Bernoulli(beta).
std::vector<std::vector<int>> corrupt(const std::vector<std::vector<int>>& labels,
                                      const CorruptionSpec& spec);

// Seeded shuffle, then the first round(n*x/100) rows train and the rest
// test; deterministic per (seed, repeat, x). Requires at least two training
// instances of every label class observed in the full data.
std::pair<DiscreteDataset, DiscreteDataset> downsample_split(
    const DiscreteDataset& data, int x_percent, int repeat, std::uint64_t seed);

// Deterministic k-fold assignment: shuffled row order dealt round-robin.
// fold_of[row] in [0, k).
std::vector<int> cv_fold_assignment(int n, int k, std::uint64_t seed);

DiscreteDataset dataset_rows(const DiscreteDataset& data,
                             const std::vector<int>& rows);

// splitmix64 fold over the words: the sub-seed derivation used everywhere.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words);

// Deterministic integer in [0, bound) from the engine (no std::distribution).
std::uint64_t random_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace credalml
