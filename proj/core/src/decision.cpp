#include "credalml/decision.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace credalml {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

FiniteCredalSet::FiniteCredalSet(int m_, std::vector<std::vector<double>> dists)
    : m(m_), distributions(std::move(dists)) {
  require(m >= 1 && m <= kMaxEnumerate, "label count out of range");
  require(!distributions.empty(), "credal set needs at least one distribution");
  for (const auto& p : distributions) {
    require(p.size() == (std::size_t{1} << m),
            "distribution must cover all 2^m outcomes");
    double sum = 0.0;
    for (double v : p) {
      require(v >= -kTol, "distribution entries must be non-negative");
      sum += v;
    }
    require(std::abs(sum - 1.0) <= kTol, "distribution must sum to 1");
  }
}

LossMatrix LossMatrix::hamming(int m) {
  require(m >= 1 && m <= 8, "loss matrix guarded at m <= 8");
  LossMatrix loss;
  loss.m = m;
  std::size_t n = std::size_t{1} << m;
  loss.entries.resize(n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      loss.entries[(std::size_t{a} << m) | b] =
          static_cast<double>(std::popcount(a ^ b));
  return loss;
}

LossMatrix LossMatrix::zero_one(int m) {
  require(m >= 1 && m <= 8, "loss matrix guarded at m <= 8");
  LossMatrix loss;
  loss.m = m;
  std::size_t n = std::size_t{1} << m;
  loss.entries.assign(n * n, 1.0);
  for (std::uint32_t a = 0; a < n; ++a)
    loss.entries[(std::size_t{a} << m) | a] = 0.0;
  return loss;
}

double FiniteSetOracle::lower(const CostVector& cost) const {
  require(cost.m == credal_->m, "cost vector and credal set label counts differ");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : credal_->distributions) {
    double e = std::inner_product(p.begin(), p.end(), cost.costs.begin(), 0.0);
    best = std::min(best, e);
  }
  return best;
}

BinaryVector precise_bayes_hamming(const std::vector<double>& marginals) {
  int m = static_cast<int>(marginals.size());
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
  std::uint32_t mask = 0;
  for (int i = 1; i <= m; ++i) {
    double p = marginals[i - 1];
    require(p >= 0.0 && p <= 1.0, "marginals must lie in [0,1]");
    if (p >= 0.5) mask |= std::uint32_t{1} << (m - i);
  }
  return BinaryVector(m, mask);
}

double dominance_statistic(const CredalOracle& oracle, const Assignment& a) {
  int m = oracle.labels();
  auto [idx_mask, val_mask] = a.complemented().masks(m);
  std::size_t n = std::size_t{1} << m;
  std::vector<double> costs(n);
  for (std::uint32_t leaf = 0; leaf < n; ++leaf)
    costs[leaf] = static_cast<double>(std::popcount((leaf ^ val_mask) & idx_mask));
  return oracle.lower(CostVector(m, std::move(costs)));
}

bool dominance_check(const CredalOracle& oracle, const Assignment& a) {
  return dominance_statistic(oracle, a) > a.size() / 2.0 + kTol;
}

MaximalityResult maximal_set(const CredalOracle& oracle,
                             const MaximalityOptions& options) {
  int m = oracle.labels();
  require(m >= 1 && m <= 14, "maximal set sweep guarded at m <= 14");
  std::uint32_t full = (std::uint32_t{1} << m) - 1;
  std::vector<char> alive(std::size_t{1} << m, 1);

  MaximalityResult result;
  result.set.m = m;

  std::vector<int> subset;  // current index combination, 1-based ascending
  for (int k = 1; k <= m; ++k) {
    subset.resize(k);
    std::iota(subset.begin(), subset.end(), 1);
    while (true) {
      // All 2^k assignments on this subset; first index is the top bit.
      for (std::uint32_t aval = 0; aval < (std::uint32_t{1} << k); ++aval) {
        std::vector<int> values(k);
        for (int j = 0; j < k; ++j) values[j] = (aval >> (k - 1 - j)) & 1u;
        Assignment a(subset, values);
        auto [idx_mask, val_mask] = a.complemented().masks(m);
        std::uint32_t free_mask = full & ~idx_mask;

        if (options.skip_removed) {
          bool any_alive = false;
          std::uint32_t sub = 0;
          while (true) {
            if (alive[val_mask | sub]) { any_alive = true; break; }
            if (sub == free_mask) break;
            sub = (sub - free_mask) & free_mask;
          }
          if (!any_alive) continue;  // removal target already gone
        }

        double stat = dominance_statistic(oracle, a);
        bool dominates = stat > k / 2.0 + kTol;
        ++result.checks;
        if (options.trace) result.trace.push_back({a, stat, dominates});
        if (dominates) {
          // Remove every completion of the complement assignment.
          std::uint32_t sub = 0;
          while (true) {
            alive[val_mask | sub] = 0;
            if (sub == free_mask) break;
            sub = (sub - free_mask) & free_mask;
          }
        }
      }
      // Next k-combination of {1..m} in lexicographic order.
      int j = k - 1;
      while (j >= 0 && subset[j] == m - (k - 1 - j)) --j;
      if (j < 0) break;
      ++subset[j];
      for (int t = j + 1; t < k; ++t) subset[t] = subset[t - 1] + 1;
    }
  }

  std::vector<std::uint32_t> masks;
  for (std::uint32_t v = 0; v <= full; ++v)
    if (alive[v]) masks.push_back(v);
  if (masks.empty())
    throw std::logic_error("maximal set came out empty; oracle is incoherent");
  result.set = PredictionSet::from_masks(m, std::move(masks));
  return result;
}

PredictionSet maximal_set_pairwise(const CredalOracle& oracle,
                                   const LossMatrix& loss) {
  int m = oracle.labels();
  require(m == loss.m, "oracle and loss label counts differ");
  require(m >= 1 && m <= 8, "pairwise maximality guarded at m <= 8");
  std::size_t n = std::size_t{1} << m;
  std::vector<std::uint32_t> survivors;
  std::vector<double> cost(n);
  for (std::uint32_t yp = 0; yp < n; ++yp) {
    bool dominated = false;
    for (std::uint32_t ypp = 0; ypp < n; ++ypp) {
      if (ypp == yp) continue;
      for (std::uint32_t y = 0; y < n; ++y) cost[y] = loss(yp, y) - loss(ypp, y);
      if (oracle.lower(CostVector(m, cost)) > kTol) dominated = true;
    }
    if (!dominated) survivors.push_back(yp);
  }
  return PredictionSet::from_masks(m, std::move(survivors));
}

PredictionSet eadmissible_set(const FiniteCredalSet& credal,
                              const LossMatrix& loss) {
  require(credal.m == loss.m, "credal set and loss label counts differ");
  require(credal.m <= 8, "E-admissibility guarded at m <= 8");
  std::size_t n = std::size_t{1} << credal.m;
  std::vector<std::uint32_t> members;
  std::vector<double> expected(n);
  for (const auto& p : credal.distributions) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t yhat = 0; yhat < n; ++yhat) {
      double e = 0.0;
      for (std::uint32_t y = 0; y < n; ++y) e += p[y] * loss(yhat, y);
      expected[yhat] = e;
      best = std::min(best, e);
    }
    for (std::uint32_t yhat = 0; yhat < n; ++yhat)
      if (expected[yhat] <= best + kTol) members.push_back(yhat);
  }
  return PredictionSet::from_masks(credal.m, std::move(members));
}

PartialVector outer_partial_vector(
    const std::vector<ProbabilityInterval>& marginals) {
  int m = static_cast<int>(marginals.size());
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
  PartialVector out(m);
  for (int i = 1; i <= m; ++i) {
    const ProbabilityInterval& iv = marginals[i - 1];
    if (iv.lower > 0.5 + kTol) out = out.with(i, 1);
    else if (iv.upper < 0.5 - kTol) out = out.with(i, 0);
    // else 1/2 lies inside the interval: abstain
  }
  return out;
}

std::uint64_t pruning_check_count(int m) {
  std::uint64_t p = 1;
  for (int i = 0; i < m; ++i) p *= 3;
  return p - 1;
}

std::uint64_t pairwise_check_count(int m) {
  std::uint64_t n = std::uint64_t{1} << m;
  return n * (n - 1);
}

}  // namespace credalml
