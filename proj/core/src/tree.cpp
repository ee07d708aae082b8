#include "credalml/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace credalml {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

ImpreciseBinaryTree::ImpreciseBinaryTree(int m_,
                                         std::vector<ProbabilityInterval> nodes_)
    : m(m_), nodes(std::move(nodes_)) {
  require(m >= 1 && m <= kMaxEnumerate, "tree depth out of range");
  require(nodes.size() == (std::size_t{1} << m) - 1,
          "tree must hold exactly 2^m - 1 nodes");
}

bool ImpreciseBinaryTree::degenerate() const {
  return std::all_of(nodes.begin(), nodes.end(),
                     [](const ProbabilityInterval& iv) { return iv.degenerate(); });
}

CostVector::CostVector(int m_, std::vector<double> costs_)
    : m(m_), costs(std::move(costs_)) {
  require(m >= 1 && m <= kMaxEnumerate, "cost vector label count out of range");
  require(costs.size() == (std::size_t{1} << m),
          "cost vector must hold exactly 2^m entries");
  for (double c : costs)
    require(std::isfinite(c), "cost entries must be finite");
}

CostVector CostVector::constant(int m, double k) {
  return CostVector(m, std::vector<double>(std::size_t{1} << m, k));
}

CostVector CostVector::indicator(const BinaryVector& y) {
  std::vector<double> c(std::size_t{1} << y.m, 0.0);
  c[y.mask] = 1.0;
  return CostVector(y.m, std::move(c));
}

CostVector CostVector::label_indicator(int m, int i, int value) {
  require(i >= 1 && i <= m, "label index out of range");
  require(value == 0 || value == 1, "label value must be 0 or 1");
  std::vector<double> c(std::size_t{1} << m, 0.0);
  std::uint32_t bit = std::uint32_t{1} << (m - i);
  for (std::uint32_t leaf = 0; leaf < c.size(); ++leaf)
    if (static_cast<int>((leaf & bit) != 0) == value) c[leaf] = 1.0;
  return CostVector(m, std::move(c));
}

CostVector CostVector::negated() const {
  CostVector out = *this;
  for (double& c : out.costs) c = -c;
  return out;
}

double lower_expectation(const ImpreciseBinaryTree& tree, const CostVector& cost) {
  require(cost.m == tree.m, "cost vector and tree label counts differ");
  std::vector<double> v = cost.costs;
  for (int d = tree.m - 1; d >= 0; --d) {
    std::size_t width = std::size_t{1} << d;
    std::size_t node_base = width - 1;
    for (std::size_t p = 0; p < width; ++p) {
      double v0 = v[2 * p], v1 = v[2 * p + 1];
      const ProbabilityInterval& iv = tree.nodes[node_base + p];
      // p*v1 + (1-p)*v0 is linear in p: minimized at an endpoint.
      double prob = (v1 > v0) ? iv.lower : (v1 < v0 ? iv.upper : iv.lower);
      v[p] = prob * v1 + (1.0 - prob) * v0;
    }
  }
  return v[0];
}

double upper_expectation(const ImpreciseBinaryTree& tree, const CostVector& cost) {
  return -lower_expectation(tree, cost.negated());
}

ProbabilityInterval tree_marginal(const ImpreciseBinaryTree& tree, int i) {
  CostVector ind = CostVector::label_indicator(tree.m, i, 1);
  double lo = lower_expectation(tree, ind);
  double hi = upper_expectation(tree, ind);
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, lo, 1.0);
  return {lo, hi};
}

double joint_probability(const ImpreciseBinaryTree& tree, const BinaryVector& y) {
  require(y.m == tree.m, "vector and tree label counts differ");
  if (!tree.degenerate())
    throw std::invalid_argument("joint probabilities need a degenerate tree");
  double prod = 1.0;
  std::size_t node = 0;
  for (int i = 1; i <= tree.m; ++i) {
    int bit = y.get(i);
    double p1 = tree.nodes[node].lower;
    prod *= bit ? p1 : (1.0 - p1);
    node = 2 * node + 1 + static_cast<std::size_t>(bit);
  }
  return prod;
}

ImpreciseBinaryTree generate_tree(int m, double epsilon, std::mt19937_64& rng) {
  require(m >= 1 && m <= kMaxEnumerate, "tree depth out of range");
  require(epsilon >= 0.0 && epsilon <= 0.5, "imprecision must lie in [0, 0.5]");
  std::vector<ProbabilityInterval> nodes;
  nodes.reserve((std::size_t{1} << m) - 1);
  for (std::size_t k = 0; k + 1 < (std::size_t{1} << m); ++k) {
    double theta = uniform01(rng);
    nodes.emplace_back(std::max(0.0, theta - epsilon),
                       std::min(theta + epsilon, 1.0));
  }
  return ImpreciseBinaryTree(m, std::move(nodes));
}

double extreme_point_oracle(const ImpreciseBinaryTree& tree, const CostVector& cost) {
  require(cost.m == tree.m, "cost vector and tree label counts differ");
  if (tree.m > 4)
    throw std::invalid_argument("extreme-point oracle guarded at m <= 4");
  std::size_t n_nodes = tree.nodes.size();
  std::size_t n_leaves = std::size_t{1} << tree.m;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t sel = 0; sel < (std::uint32_t{1} << n_nodes); ++sel) {
    double expectation = 0.0;
    for (std::uint32_t leaf = 0; leaf < n_leaves; ++leaf) {
      double prob = 1.0;
      std::size_t node = 0;
      for (int d = 0; d < tree.m; ++d) {
        int bit = static_cast<int>((leaf >> (tree.m - 1 - d)) & 1u);
        const ProbabilityInterval& iv = tree.nodes[node];
        double p1 = (sel >> node) & 1u ? iv.upper : iv.lower;
        prob *= bit ? p1 : (1.0 - p1);
        node = 2 * node + 1 + static_cast<std::size_t>(bit);
      }
      expectation += prob * cost.costs[leaf];
    }
    best = std::min(best, expectation);
  }
  return best;
}

std::string tree_to_json(const ImpreciseBinaryTree& tree) {
  nlohmann::json j;
  j["m"] = tree.m;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (const auto& iv : tree.nodes) nodes.push_back({iv.lower, iv.upper});
  return j.dump(2) + "\n";
}

ImpreciseBinaryTree tree_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object() || !j.contains("m") || !j.contains("nodes"))
    throw std::invalid_argument("tree JSON needs fields \"m\" and \"nodes\"");
  int m = j.at("m").get<int>();
  std::vector<ProbabilityInterval> nodes;
  for (const auto& pair : j.at("nodes")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("tree JSON nodes must be [lower, upper] pairs");
    nodes.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return ImpreciseBinaryTree(m, std::move(nodes));
}

ImpreciseBinaryTree tree_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return tree_from_json(buf.str());
}

void tree_to_json_file(const ImpreciseBinaryTree& tree, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write tree file: " + path);
  out << tree_to_json(tree);
}

}  // namespace credalml
