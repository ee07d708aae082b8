#pragma once

// Shared domain types for set-valued multi-label prediction under
// interval/credal uncertainty: probability intervals, complete and partial
// label vectors, index-subset assignments, and explicit prediction sets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace credalml {

inline constexpr int kMaxLabels = 24;     // bitmask width cap
inline constexpr int kMaxEnumerate = 16;  // cap for 2^m explicit enumeration
inline constexpr double kTol = 1e-9;      // strict-comparison tolerance

// Closed interval [lower, upper] within [0,1] for the probability of a
// binary event. The complement event carries [1-upper, 1-lower].
struct ProbabilityInterval {
  double lower = 0.0;
  double upper = 1.0;

  ProbabilityInterval() = default;
  ProbabilityInterval(double lo, double hi);

  ProbabilityInterval complement() const { return {1.0 - upper, 1.0 - lower}; }
  bool degenerate() const { return lower == upper; }
  bool contains(double p) const { return lower <= p && p <= upper; }
  bool contains(const ProbabilityInterval& o) const {
    return lower <= o.lower && o.upper <= upper;
  }

  friend bool operator==(const ProbabilityInterval&,
                         const ProbabilityInterval&) = default;
};

// Complete labeling in {0,1}^m, m <= 24. Label i (1-based) sits at bit
// (m - i), so the mask read MSB-first spells the vector left to right and
// numeric mask order equals lexicographic order on label strings.
struct BinaryVector {
  int m = 0;
  std::uint32_t mask = 0;

  BinaryVector() = default;
  BinaryVector(int m_, std::uint32_t mask_);

  int get(int i) const;                     // label i in 1..m -> 0 or 1
  BinaryVector with(int i, int value) const;
  BinaryVector complemented() const;
  std::string str() const;                  // e.g. "10"
  static BinaryVector parse(const std::string& text);

  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;
};

// Partial labeling in {0,1,*}^m. Star marks an abstained label; the vector
// denotes the set of its 2^(#stars) completions.
struct PartialVector {
  int m = 0;
  std::uint32_t decided = 0;  // bit set where the label is decided
  std::uint32_t values = 0;   // decided value bits; subset of `decided`

  PartialVector() = default;
  explicit PartialVector(int m_);  // all stars
  PartialVector(int m_, std::uint32_t decided_, std::uint32_t values_);
  explicit PartialVector(const BinaryVector& y);  // complete, no stars

  int get(int i) const;  // 0, 1, or -1 for star
  PartialVector with(int i, int value) const;       // value in {0,1}
  PartialVector with_star(int i) const;
  int stars() const;
  int decided_count() const { return m - stars(); }
  bool complete() const { return stars() == 0; }
  std::string str() const;  // e.g. "1*0"
  static PartialVector parse(const std::string& text);

  friend bool operator==(const PartialVector&, const PartialVector&) = default;
};

// Values pinned on an ordered subset of label indices (1-based, strictly
// ascending). Complementation flips every value and keeps the indices.
struct Assignment {
  std::vector<int> indices;
  std::vector<int> values;  // 0/1, same length as indices

  Assignment() = default;
  Assignment(std::vector<int> idx, std::vector<int> vals);

  int size() const { return static_cast<int>(indices.size()); }
  Assignment complemented() const;

  // Bitmasks under the label-i-at-bit-(m-i) convention: first the mask of
  // covered positions, then the mask of positions assigned value 1.
  std::pair<std::uint32_t, std::uint32_t> masks(int m) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Explicit, deduplicated set of complete label vectors, kept as a sorted
// mask list for deterministic output ordering.
struct PredictionSet {
  int m = 0;
  std::vector<std::uint32_t> masks;  // sorted, unique

  PredictionSet() = default;
  explicit PredictionSet(int m_) : m(m_) {}
  static PredictionSet from_masks(int m, std::vector<std::uint32_t> raw);
  static PredictionSet from_vectors(int m, const std::vector<BinaryVector>& ys);
  static PredictionSet full(int m);  // all 2^m vectors; m <= kMaxEnumerate

  std::size_t size() const { return masks.size(); }
  bool contains(std::uint32_t mask) const;
  bool contains(const BinaryVector& y) const;
  std::vector<BinaryVector> vectors() const;
  std::vector<std::string> strings() const;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

// Number of disagreeing labels between two complete vectors.
int hamming_loss(const BinaryVector& y1, const BinaryVector& y2);

// Disagreements restricted to the assignment's index set:
// sum over i in I of 1[b_i != y_i]. Equals hamming_loss when I = {1..m}.
int partial_hamming_loss(const Assignment& b, const BinaryVector& y);

// The 2^(#stars) completions of a partial vector. Guarded at m <= 16.
PredictionSet expand_partial(const PartialVector& v);

// Inverse of expansion: the partial vector whose completions equal `s`,
// or nullopt when `s` is not expressible as one.
std::optional<PartialVector> is_partial_vector(const PredictionSet& s);

}  // namespace credalml
