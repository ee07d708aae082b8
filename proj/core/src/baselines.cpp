#include "credalml/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace credalml {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

PreciseMarginals::PreciseMarginals(std::vector<double> probs)
    : m(static_cast<int>(probs.size())), p(std::move(probs)) {
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
  for (double v : p) require(v >= 0.0 && v <= 1.0, "marginals must lie in [0,1]");
}

double Penalty::f(int abstained, int m) const {
  if (abstained == 0) return 0.0;
  double a = static_cast<double>(abstained);
  if (kind == PenaltyKind::SEP) return a * c;
  return (a * m) / (m + a) * c;
}

PartialVector reject_predict(const PreciseMarginals& p, double gamma) {
  require(gamma >= 0.0 && gamma < 0.5, "rejection threshold must lie in [0, 0.5)");
  PartialVector out(p.m);
  for (int i = 1; i <= p.m; ++i) {
    double pi = p.p[i - 1];
    if (pi > 0.5 + gamma) out = out.with(i, 1);
    else if (pi <= 0.5 - gamma) out = out.with(i, 0);
    // else inside the band: abstain
  }
  return out;
}

PartialVector abstain_sep(const PreciseMarginals& p, double c) {
  require(c > 0.0, "penalty must be positive");
  PartialVector out(p.m);
  for (int i = 1; i <= p.m; ++i) {
    double pi = p.p[i - 1];
    double uncertainty = std::min(pi, 1.0 - pi);
    if (c < uncertainty) continue;  // abstaining is cheaper than deciding
    out = out.with(i, pi >= 0.5 ? 1 : 0);
  }
  return out;
}

PartialVector abstain_par(const PreciseMarginals& p, double c) {
  require(c > 0.0, "penalty must be positive");
  int m = p.m;
  std::vector<double> uncertainty(m);
  for (int i = 0; i < m; ++i)
    uncertainty[i] = std::min(p.p[i], 1.0 - p.p[i]);
  std::vector<int> order(m);  // label positions, most uncertain first
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return uncertainty[a] > uncertainty[b];
  });
  Penalty penalty{PenaltyKind::PAR, c};
  // The optimal abstention set under a size-based concave penalty is a
  // top-k by uncertainty; scan k and keep the smallest risk (ties favor
  // fewer abstentions).
  double total = std::accumulate(uncertainty.begin(), uncertainty.end(), 0.0);
  double best_risk = total;  // k = 0: every label decided at Bayes risk
  int best_k = 0;
  double removed = 0.0;
  for (int k = 1; k <= m; ++k) {
    removed += uncertainty[order[k - 1]];
    double risk = (total - removed) + penalty.f(k, m);
    if (risk < best_risk - kTol) {
      best_risk = risk;
      best_k = k;
    }
  }
  PartialVector out(p.m);
  std::vector<bool> abstain(m, false);
  for (int k = 0; k < best_k; ++k) abstain[order[k]] = true;
  for (int i = 1; i <= m; ++i) {
    if (abstain[i - 1]) continue;
    out = out.with(i, p.p[i - 1] >= 0.5 ? 1 : 0);
  }
  return out;
}

double generalized_loss(const BinaryVector& truth, const PartialVector& pred,
                        const Penalty& penalty) {
  require(truth.m == pred.m, "truth and prediction label counts differ");
  int mistakes = 0;
  for (int i = 1; i <= truth.m; ++i) {
    int v = pred.get(i);
    if (v >= 0 && v != truth.get(i)) ++mistakes;
  }
  return mistakes + penalty.f(pred.stars(), pred.m);
}

}  // namespace credalml
