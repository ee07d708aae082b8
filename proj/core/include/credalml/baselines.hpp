#pragma once

// Competitor set-valued predictors over precise marginals: a per-label
// rejection band around 1/2 and partial abstention chosen to minimize a
// generalized loss (Hamming on decided labels plus an abstention penalty,
// linear "SEP" or concave "PAR").

#include <vector>

#include "credalml/types.hpp"

namespace credalml {

struct PreciseMarginals {
  int m = 0;
  std::vector<double> p;  // P(Y_i = 1), each in [0,1]

  PreciseMarginals() = default;
  explicit PreciseMarginals(std::vector<double> probs);
};

enum class PenaltyKind { SEP, PAR };

// Abstention penalty f(a) for a abstained labels out of m:
// SEP: a*c (linear); PAR: (a*m)/(m+a) * c (concave).
struct Penalty {
  PenaltyKind kind = PenaltyKind::SEP;
  double c = 0.0;

  double f(int abstained, int m) const;
};

// 1 if p_i > 1/2 + gamma, 0 if p_i <= 1/2 - gamma, * inside the band.
// gamma in [0, 0.5); gamma = 0 leaves no band (p_i = 1/2 maps to 0).
PartialVector reject_predict(const PreciseMarginals& p, double gamma);

// Linear penalty: abstain exactly where c < min(p_i, 1-p_i); decided labels
// take the per-label Bayes value.
PartialVector abstain_sep(const PreciseMarginals& p, double c);

// Concave penalty: sort labels by uncertainty min(p_i, 1-p_i) descending and
// pick the risk-minimizing top-k abstention set (fewest abstentions on ties).
PartialVector abstain_par(const PreciseMarginals& p, double c);

// Hamming loss on decided coordinates plus the penalty at the abstention
// count; reduces to plain Hamming loss for complete predictions.
double generalized_loss(const BinaryVector& truth, const PartialVector& pred,
                        const Penalty& penalty);

}  // namespace credalml
