#include "credalml/binary_relevance.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "credalml/decision.hpp"

#include <nlohmann/json.hpp>

namespace credalml {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

MarginalIntervalModel::MarginalIntervalModel(std::vector<ProbabilityInterval> ivs)
    : m(static_cast<int>(ivs.size())), intervals(std::move(ivs)) {
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
}

PartialVector br_skeptical_prediction(const MarginalIntervalModel& model) {
  return outer_partial_vector(model.intervals);
}

namespace {
// Both point rules reduce per label to the sign of lower + upper - 1:
// minimax compares lower(Y=1) against lower(Y=0) = 1 - upper(Y=1), minimin
// compares the uppers, and the two differences are equal.
PartialVector gamma_rule(const MarginalIntervalModel& model) {
  PartialVector out(model.m);
  for (int i = 1; i <= model.m; ++i) {
    const ProbabilityInterval& iv = model.intervals[i - 1];
    double diff = iv.lower + iv.upper - 1.0;
    if (diff > kTol) out = out.with(i, 1);
    else if (diff < -kTol) out = out.with(i, 0);
    // else indifferent: either value achieves the same worst/best case
  }
  return out;
}
}  // namespace

PartialVector gamma_minimax(const MarginalIntervalModel& model) {
  return gamma_rule(model);
}

PartialVector gamma_minimin(const MarginalIntervalModel& model) {
  return gamma_rule(model);
}

std::pair<double, double> br_hamming_bounds(const MarginalIntervalModel& model,
                                            const BinaryVector& y) {
  require(y.m == model.m, "vector and model label counts differ");
  double lo = 0.0, hi = 0.0;
  for (int i = 1; i <= model.m; ++i) {
    const ProbabilityInterval& iv = model.intervals[i - 1];
    if (y.get(i) == 1) {  // mistake event is Y_i = 0
      lo += 1.0 - iv.upper;
      hi += 1.0 - iv.lower;
    } else {  // mistake event is Y_i = 1
      lo += iv.lower;
      hi += iv.upper;
    }
  }
  return {lo, hi};
}

PredictionSet interval_dominance_set(const MarginalIntervalModel& model) {
  require(model.m <= 14, "interval dominance guarded at m <= 14");
  std::size_t n = std::size_t{1} << model.m;
  std::vector<double> lo(n), hi(n);
  double best_hi = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < n; ++mask) {
    auto [l, h] = br_hamming_bounds(model, BinaryVector(model.m, mask));
    lo[mask] = l;
    hi[mask] = h;
    best_hi = std::min(best_hi, h);
  }
  std::vector<std::uint32_t> keep;
  for (std::uint32_t mask = 0; mask < n; ++mask)
    if (lo[mask] <= best_hi + kTol) keep.push_back(mask);
  return PredictionSet::from_masks(model.m, std::move(keep));
}

ImpreciseBinaryTree br_equivalent_tree(const MarginalIntervalModel& model) {
  require(model.m <= kMaxEnumerate, "tree depth out of range");
  std::vector<ProbabilityInterval> nodes;
  nodes.reserve((std::size_t{1} << model.m) - 1);
  for (int d = 0; d < model.m; ++d)
    for (std::size_t p = 0; p < (std::size_t{1} << d); ++p)
      nodes.push_back(model.intervals[d]);
  return ImpreciseBinaryTree(model.m, std::move(nodes));
}

std::string br_model_to_json(const MarginalIntervalModel& model) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& iv : model.intervals) j.push_back({iv.lower, iv.upper});
  return j.dump(2) + "\n";
}

MarginalIntervalModel br_model_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array())
    throw std::invalid_argument("interval model JSON must be a list of pairs");
  std::vector<ProbabilityInterval> ivs;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("interval model entries must be [lower, upper]");
    ivs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return MarginalIntervalModel(std::move(ivs));
}

MarginalIntervalModel br_model_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open interval model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return br_model_from_json(buf.str());
}

}  // namespace credalml
