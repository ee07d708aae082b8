#include "credalml/ncc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace credalml {

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

int Discretization::bin(int feature, double value) const {
  double w = widths[feature];
  if (w <= 0.0) return 0;  // constant column
  int b = static_cast<int>(std::floor((value - mins[feature]) / w));
  return std::clamp(b, 0, z - 1);
}

std::vector<int> discretize_column(const std::vector<double>& column, int z) {
  require(z >= 2, "discretization needs at least 2 bins");
  require(!column.empty(), "cannot discretize an empty column");
  auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  double lo = *lo_it, hi = *hi_it;
  std::vector<int> out(column.size(), 0);
  if (hi <= lo) return out;  // constant column: single bin 0
  double width = (hi - lo) / z;
  for (std::size_t r = 0; r < column.size(); ++r) {
    int b = static_cast<int>(std::floor((column[r] - lo) / width));
    out[r] = std::clamp(b, 0, z - 1);  // the max lands in the top bin
  }
  return out;
}

DiscreteDataset discretize(const TabularDataset& data, int z) {
  require(z >= 2, "discretization needs at least 2 bins");
  require(data.n() > 0, "cannot discretize an empty dataset");
  DiscreteDataset out;
  out.feature_names = data.feature_names;
  out.label_names = data.label_names;
  out.labels = data.labels;
  out.domain.assign(data.d(), z);
  out.disc.z = z;
  out.disc.mins.resize(data.d());
  out.disc.widths.resize(data.d());
  out.features.assign(data.n(), std::vector<int>(data.d(), 0));
  std::vector<double> column(data.n());
  for (int f = 0; f < data.d(); ++f) {
    for (int r = 0; r < data.n(); ++r) column[r] = data.features[r][f];
    auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
    out.disc.mins[f] = *lo_it;
    out.disc.widths[f] = (*hi_it > *lo_it) ? (*hi_it - *lo_it) / z : 0.0;
    std::vector<int> bins = discretize_column(column, z);
    for (int r = 0; r < data.n(); ++r) out.features[r][f] = bins[r];
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TabularDataset dataset_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("dataset CSV is empty (missing header)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  TabularDataset data;
  bool in_labels = false;
  std::vector<bool> is_label;
  for (const std::string& name : split_csv_line(line)) {
    bool label = name.rfind("y:", 0) == 0;
    if (label) in_labels = true;
    else if (in_labels)
      throw std::runtime_error(
          "dataset CSV must list all feature columns before label columns");
    is_label.push_back(label);
    if (label) data.label_names.push_back(name.substr(2));
    else data.feature_names.push_back(name);
  }
  if (data.label_names.empty())
    throw std::runtime_error("dataset CSV has no label columns (prefix \"y:\")");
  int row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != is_label.size())
      throw std::runtime_error("row " + std::to_string(row_number) +
                               ": expected " + std::to_string(is_label.size()) +
                               " cells, found " + std::to_string(cells.size()));
    std::vector<double> feats;
    std::vector<int> labs;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (is_label[c]) {
        if (cells[c] == "*") labs.push_back(-1);
        else if (cells[c] == "0") labs.push_back(0);
        else if (cells[c] == "1") labs.push_back(1);
        else
          throw std::runtime_error("row " + std::to_string(row_number) +
                                   ": label cell must be 0, 1, or *");
      } else {
        try {
          std::size_t used = 0;
          double v = std::stod(cells[c], &used);
          if (used != cells[c].size() || !std::isfinite(v)) throw std::invalid_argument("");
          feats.push_back(v);
        } catch (const std::exception&) {
          throw std::runtime_error("row " + std::to_string(row_number) +
                                   ": feature cell is not a finite number");
        }
      }
    }
    data.features.push_back(std::move(feats));
    data.labels.push_back(std::move(labs));
  }
  if (data.features.empty()) throw std::runtime_error("dataset CSV has no rows");
  return data;
}

TabularDataset dataset_from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return dataset_from_csv(in);
}

std::string dataset_to_csv(const TabularDataset& data) {
  std::ostringstream out;
  bool first = true;
  for (const auto& name : data.feature_names) {
    if (!first) out << ',';
    out << name;
    first = false;
  }
  for (const auto& name : data.label_names) out << ",y:" << name;
  out << '\n';
  char buf[64];
  for (int r = 0; r < data.n(); ++r) {
    for (int f = 0; f < data.d(); ++f) {
      if (f) out << ',';
      double v = data.features[r][f];
      if (v == std::floor(v) && std::abs(v) < 1e15)
        out << static_cast<long long>(v);
      else {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        out << buf;
      }
    }
    for (int j = 0; j < data.m(); ++j) {
      int v = data.labels[r][j];
      out << ',';
      if (v < 0) out << '*';
      else out << v;
    }
    out << '\n';
  }
  return out.str();
}

NccModel NccModel::with_s(double s_new) const {
  require(s_new >= 0.0, "imprecision parameter must be non-negative");
  NccModel copy = *this;
  copy.s = s_new;
  return copy;
}

NccModel ncc_fit(const DiscreteDataset& data, double s) {
  require(s >= 0.0, "imprecision parameter must be non-negative");
  require(data.n() > 0, "cannot fit on an empty dataset");
  NccModel model;
  model.d = data.d();
  model.m = data.m();
  model.s = s;
  model.domain = data.domain;
  model.disc = data.disc;
  model.tables.resize(data.m());
  for (int j = 0; j < data.m(); ++j) {
    LabelTable& table = model.tables[j];
    table.counts.resize(data.d());
    for (int f = 0; f < data.d(); ++f)
      for (int c = 0; c < 2; ++c)
        table.counts[f][c].assign(data.domain[f], 0);
    for (int r = 0; r < data.n(); ++r) {
      int y = data.labels[r][j];
      if (y < 0) continue;  // missing: excluded from this label only
      ++table.class_count[y];
      for (int f = 0; f < data.d(); ++f) {
        int v = data.features[r][f];
        require(v >= 0 && v < data.domain[f], "feature value outside its domain");
        ++table.counts[f][y][v];
      }
    }
    table.vacuous = table.class_count[0] == 0 || table.class_count[1] == 0;
  }
  return model;
}

ProbabilityInterval ncc_posterior(const NccModel& model,
                                  const std::vector<int>& x, int label) {
  require(label >= 1 && label <= model.m, "label index out of range");
  require(static_cast<int>(x.size()) == model.d, "feature row width mismatch");
  const LabelTable& table = model.tables[label - 1];
  if (table.vacuous) return {0.0, 1.0};

  double n1 = static_cast<double>(table.class_count[1]);
  double n0 = static_cast<double>(table.class_count[0]);
  double prior1 = n1 / (n1 + n0);  // precise empirical class prior
  double prior0 = 1.0 - prior1;

  // Products of conditional bounds; an unseen value contributes count 0.
  double lo1 = prior1, hi1 = prior1, lo0 = prior0, hi0 = prior0;
  for (int f = 0; f < model.d; ++f) {
    int v = x[f];
    double c1 = 0.0, c0 = 0.0;
    if (v >= 0 && v < model.domain[f]) {
      c1 = static_cast<double>(table.counts[f][1][v]);
      c0 = static_cast<double>(table.counts[f][0][v]);
    }
    lo1 *= c1 / (n1 + model.s);
    hi1 *= (c1 + model.s) / (n1 + model.s);
    lo0 *= c0 / (n0 + model.s);
    hi0 *= (c0 + model.s) / (n0 + model.s);
  }

  double lower = (lo1 + hi0 > 0.0) ? lo1 / (lo1 + hi0) : 0.0;
  double upper = (hi1 + lo0 > 0.0) ? hi1 / (hi1 + lo0) : 1.0;
  lower = std::clamp(lower, 0.0, 1.0);
  upper = std::clamp(upper, lower, 1.0);
  return {lower, upper};
}

std::vector<ProbabilityInterval> ncc_predict(const NccModel& model,
                                             const std::vector<int>& x) {
  std::vector<ProbabilityInterval> out;
  out.reserve(model.m);
  for (int j = 1; j <= model.m; ++j) out.push_back(ncc_posterior(model, x, j));
  return out;
}

std::string ncc_to_json(const NccModel& model) {
  nlohmann::json j;
  j["d"] = model.d;
  j["m"] = model.m;
  j["s"] = model.s;
  j["domain"] = model.domain;
  j["bins"] = model.disc.z;
  j["bin_mins"] = model.disc.mins;
  j["bin_widths"] = model.disc.widths;
  auto& tables = j["labels"] = nlohmann::json::array();
  for (const auto& table : model.tables) {
    nlohmann::json t;
    t["class_count"] = {table.class_count[0], table.class_count[1]};
    t["vacuous"] = table.vacuous;
    auto& counts = t["counts"] = nlohmann::json::array();
    for (const auto& per_feature : table.counts)
      counts.push_back({per_feature[0], per_feature[1]});
    tables.push_back(std::move(t));
  }
  return j.dump(2) + "\n";
}

NccModel ncc_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  NccModel model;
  model.d = j.at("d").get<int>();
  model.m = j.at("m").get<int>();
  model.s = j.at("s").get<double>();
  model.domain = j.at("domain").get<std::vector<int>>();
  model.disc.z = j.at("bins").get<int>();
  model.disc.mins = j.at("bin_mins").get<std::vector<double>>();
  model.disc.widths = j.at("bin_widths").get<std::vector<double>>();
  for (const auto& t : j.at("labels")) {
    LabelTable table;
    table.class_count[0] = t.at("class_count")[0].get<std::int64_t>();
    table.class_count[1] = t.at("class_count")[1].get<std::int64_t>();
    table.vacuous = t.at("vacuous").get<bool>();
    for (const auto& per_feature : t.at("counts")) {
      std::array<std::vector<std::int64_t>, 2> fc;
      fc[0] = per_feature[0].get<std::vector<std::int64_t>>();
      fc[1] = per_feature[1].get<std::vector<std::int64_t>>();
      table.counts.push_back(std::move(fc));
    }
    model.tables.push_back(std::move(table));
  }
  require(static_cast<int>(model.tables.size()) == model.m,
          "model JSON label tables do not match label count");
  return model;
}

}  // namespace credalml
