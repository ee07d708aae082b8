#include "credalml/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "credalml/tree.hpp"

namespace credalml {

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

double incorrectness(const PartialVector& pred, const BinaryVector& truth) {
  require(pred.m == truth.m, "prediction and truth label counts differ");
  int decided = 0, wrong = 0;
  for (int i = 1; i <= pred.m; ++i) {
    int v = pred.get(i);
    if (v < 0) continue;
    ++decided;
    if (v != truth.get(i)) ++wrong;
  }
  if (decided == 0) return 0.0;  // empty prediction convention
  return static_cast<double>(wrong) / decided;
}

double completeness(const PartialVector& pred) {
  return static_cast<double>(pred.decided_count()) / pred.m;
}

MetricsRecord evaluate_prediction(const PartialVector& pred,
                                  const BinaryVector& truth) {
  MetricsRecord rec;
  rec.incorrectness = incorrectness(pred, truth);
  rec.completeness = completeness(pred);
  rec.decided = pred.decided_count();
  rec.abstained = pred.stars();
  return rec;
}

long set_distance(const PartialVector& approx, const PredictionSet& exact) {
  require(approx.m == exact.m, "label counts differ");
  // Containment check: every exact member must complete the partial vector.
  for (std::uint32_t mask : exact.masks)
    if ((mask & approx.decided) != approx.values)
      throw std::invalid_argument(
          "outer approximation does not contain the exact set");
  long expansion = 1L << (approx.stars());
  return expansion - static_cast<long>(exact.size());
}

BinShares bin_distances(const std::vector<long>& distances, int m) {
  require(!distances.empty(), "cannot bin an empty distance list");
  require(m >= 1 && m <= kMaxEnumerate, "label count out of range");
  double quarter = std::ldexp(1.0, m) / 4.0;  // 2^m / 4
  double half = std::ldexp(1.0, m) / 2.0;
  long n0 = 0, n25 = 0, n50 = 0, n100 = 0;
  for (long d : distances) {
    require(d >= 0 && d <= (1L << m), "distance outside [0, 2^m]");
    if (d == 0) ++n0;
    else if (d <= quarter) ++n25;
    else if (d <= half) ++n50;
    else ++n100;
  }
  double total = static_cast<double>(distances.size());
  return {100.0 * n0 / total, 100.0 * n25 / total, 100.0 * n50 / total,
          100.0 * n100 / total};
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
  // splitmix64 absorb-and-finalize over the word sequence
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  auto step = [&state](std::uint64_t w) {
    state += 0x9e3779b97f4a7c15ULL + w;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    state = z ^ (z >> 31);
  };
  for (std::uint64_t w : words) step(w);
  step(0xfeedface);
  return state;
}

std::uint64_t random_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Fixed-point multiply keeps the draw deterministic across platforms.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

std::vector<std::vector<int>> corrupt(const std::vector<std::vector<int>>& labels,
                                      const CorruptionSpec& spec) {
  require(spec.percentage >= 0.0 && spec.percentage <= 100.0,
          "corruption percentage must lie in [0, 100]");
  require(spec.beta >= 0.0 && spec.beta <= 1.0, "beta must lie in [0,1]");
  std::vector<std::vector<int>> out = labels;
  if (out.empty() || spec.percentage == 0.0) return out;
  std::size_t n = out.size();
  std::size_t m = out[0].size();
  for (const auto& row : out)
    require(row.size() == m, "ragged label matrix");

  std::mt19937_64 rng(spec.seed);
  auto apply = [&](int& cell) {
    switch (spec.kind) {
      case CorruptionKind::missing:
        cell = -1;
        break;
      case CorruptionKind::reversing:
        if (cell >= 0) cell ^= 1;  // a missing cell has nothing to reverse
        break;
      case CorruptionKind::flipping:
        cell = uniform01(rng) < spec.beta ? 1 : 0;
        break;
    }
  };
  auto pick_and_apply = [&](std::vector<std::size_t>& cells, std::size_t k) {
    // Partial Fisher-Yates: the first k entries become the selection.
    for (std::size_t t = 0; t < k; ++t) {
      std::size_t j = t + random_below(rng, cells.size() - t);
      std::swap(cells[t], cells[j]);
      std::size_t cell = cells[t];
      apply(out[cell / m][cell % m]);
    }
  };

  if (spec.per_column) {
    std::size_t k = static_cast<std::size_t>(
        std::llround(spec.percentage / 100.0 * static_cast<double>(n)));
    std::vector<std::size_t> cells(n);
    for (std::size_t col = 0; col < m; ++col) {
      for (std::size_t r = 0; r < n; ++r) cells[r] = r * m + col;
      pick_and_apply(cells, k);
    }
  } else {
    std::size_t k = static_cast<std::size_t>(
        std::llround(spec.percentage / 100.0 * static_cast<double>(n * m)));
    std::vector<std::size_t> cells(n * m);
    std::iota(cells.begin(), cells.end(), 0);
    pick_and_apply(cells, k);
  }
  return out;
}

DiscreteDataset dataset_rows(const DiscreteDataset& data,
                             const std::vector<int>& rows) {
  DiscreteDataset out;
  out.feature_names = data.feature_names;
  out.label_names = data.label_names;
  out.domain = data.domain;
  out.disc = data.disc;
  out.features.reserve(rows.size());
  out.labels.reserve(rows.size());
  for (int r : rows) {
    out.features.push_back(data.features[r]);
    out.labels.push_back(data.labels[r]);
  }
  return out;
}

std::pair<DiscreteDataset, DiscreteDataset> downsample_split(
    const DiscreteDataset& data, int x_percent, int repeat, std::uint64_t seed) {
  require(x_percent >= 1 && x_percent <= 99, "training percentage out of range");
  int n = data.n();
  require(n >= 2, "need at least two rows to split");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(mix_seed({seed, static_cast<std::uint64_t>(repeat),
                                static_cast<std::uint64_t>(x_percent)}));
  for (int t = 0; t < n - 1; ++t) {
    int j = t + static_cast<int>(random_below(rng, static_cast<std::uint64_t>(n - t)));
    std::swap(order[t], order[j]);
  }
  int train_n = static_cast<int>(std::llround(n * x_percent / 100.0));
  train_n = std::clamp(train_n, 1, n - 1);
  std::vector<int> train_rows(order.begin(), order.begin() + train_n);
  std::vector<int> test_rows(order.begin() + train_n, order.end());

  // Every label class observed in the full data needs >= 2 training rows.
  for (int j = 0; j < data.m(); ++j) {
    for (int cls = 0; cls <= 1; ++cls) {
      bool observed = false;
      for (int r = 0; r < n; ++r)
        if (data.labels[r][j] == cls) { observed = true; break; }
      if (!observed) continue;
      int count = 0;
      for (int r : train_rows)
        if (data.labels[r][j] == cls) ++count;
      if (count < 2)
        throw std::runtime_error("label \"" + data.label_names[j] +
                                 "\" has fewer than two training instances of class " +
                                 std::to_string(cls));
    }
  }
  return {dataset_rows(data, train_rows), dataset_rows(data, test_rows)};
}

std::vector<int> cv_fold_assignment(int n, int k, std::uint64_t seed) {
  require(n >= k && k >= 2, "fold count out of range");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < n - 1; ++t) {
    int j = t + static_cast<int>(random_below(rng, static_cast<std::uint64_t>(n - t)));
    std::swap(order[t], order[j]);
  }
  std::vector<int> fold_of(n);
  for (int pos = 0; pos < n; ++pos) fold_of[order[pos]] = pos % k;
  return fold_of;
}

}  // namespace credalml
