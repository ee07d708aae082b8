#include "credalml/types.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace credalml {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

ProbabilityInterval::ProbabilityInterval(double lo, double hi)
    : lower(lo), upper(hi) {
  require(lo >= 0.0 && hi <= 1.0 && lo <= hi,
          "probability interval must satisfy 0 <= lower <= upper <= 1");
}

BinaryVector::BinaryVector(int m_, std::uint32_t mask_) : m(m_), mask(mask_) {
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
  require(mask < (std::uint32_t{1} << m), "mask has bits beyond label count");
}

int BinaryVector::get(int i) const {
  require(i >= 1 && i <= m, "label index out of range");
  return static_cast<int>((mask >> (m - i)) & 1u);
}

BinaryVector BinaryVector::with(int i, int value) const {
  require(i >= 1 && i <= m, "label index out of range");
  require(value == 0 || value == 1, "label value must be 0 or 1");
  std::uint32_t bit = std::uint32_t{1} << (m - i);
  return BinaryVector(m, value ? (mask | bit) : (mask & ~bit));
}

BinaryVector BinaryVector::complemented() const {
  return BinaryVector(m, mask ^ ((std::uint32_t{1} << m) - 1));
}

std::string BinaryVector::str() const {
  std::string out(static_cast<std::size_t>(m), '0');
  for (int i = 1; i <= m; ++i) out[i - 1] = static_cast<char>('0' + get(i));
  return out;
}

BinaryVector BinaryVector::parse(const std::string& text) {
  require(!text.empty() && text.size() <= kMaxLabels,
          "binary vector string length out of range");
  std::uint32_t mask = 0;
  for (char c : text) {
    require(c == '0' || c == '1', "binary vector may contain only 0/1");
    mask = (mask << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return BinaryVector(static_cast<int>(text.size()), mask);
}

PartialVector::PartialVector(int m_) : m(m_) {
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
}

PartialVector::PartialVector(int m_, std::uint32_t decided_,
                             std::uint32_t values_)
    : m(m_), decided(decided_), values(values_) {
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
  require(decided < (std::uint32_t{1} << m), "mask has bits beyond label count");
  require((values & ~decided) == 0, "value bits must lie on decided labels");
}

PartialVector::PartialVector(const BinaryVector& y)
    : PartialVector(y.m, (std::uint32_t{1} << y.m) - 1, y.mask) {}

int PartialVector::get(int i) const {
  require(i >= 1 && i <= m, "label index out of range");
  std::uint32_t bit = std::uint32_t{1} << (m - i);
  if (!(decided & bit)) return -1;
  return (values & bit) ? 1 : 0;
}

PartialVector PartialVector::with(int i, int value) const {
  require(i >= 1 && i <= m, "label index out of range");
  require(value == 0 || value == 1, "label value must be 0 or 1");
  std::uint32_t bit = std::uint32_t{1} << (m - i);
  return PartialVector(m, decided | bit,
                       value ? (values | bit) : (values & ~bit));
}

PartialVector PartialVector::with_star(int i) const {
  require(i >= 1 && i <= m, "label index out of range");
  std::uint32_t bit = std::uint32_t{1} << (m - i);
  return PartialVector(m, decided & ~bit, values & ~bit);
}

int PartialVector::stars() const { return m - std::popcount(decided); }

std::string PartialVector::str() const {
  std::string out(static_cast<std::size_t>(m), '*');
  for (int i = 1; i <= m; ++i) {
    int v = get(i);
    if (v >= 0) out[i - 1] = static_cast<char>('0' + v);
  }
  return out;
}

PartialVector PartialVector::parse(const std::string& text) {
  require(!text.empty() && text.size() <= kMaxLabels,
          "partial vector string length out of range");
  int m = static_cast<int>(text.size());
  PartialVector v(m);
  for (int i = 1; i <= m; ++i) {
    char c = text[i - 1];
    if (c == '*') continue;
    require(c == '0' || c == '1', "partial vector may contain only 0/1/*");
    v = v.with(i, c - '0');
  }
  return v;
}

Assignment::Assignment(std::vector<int> idx, std::vector<int> vals)
    : indices(std::move(idx)), values(std::move(vals)) {
  require(indices.size() == values.size(),
          "assignment indices/values length mismatch");
  require(!indices.empty(), "assignment must cover at least one index");
  for (std::size_t j = 0; j < indices.size(); ++j) {
    require(indices[j] >= 1, "assignment indices are 1-based");
    if (j > 0) require(indices[j] > indices[j - 1],
                       "assignment indices must be strictly ascending");
    require(values[j] == 0 || values[j] == 1, "assignment values must be 0/1");
  }
}

Assignment Assignment::complemented() const {
  Assignment out = *this;
  for (int& v : out.values) v ^= 1;
  return out;
}

std::pair<std::uint32_t, std::uint32_t> Assignment::masks(int m) const {
  std::uint32_t idx_mask = 0, val_mask = 0;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] > m) throw std::invalid_argument("assignment index beyond label count");
    std::uint32_t bit = std::uint32_t{1} << (m - indices[j]);
    idx_mask |= bit;
    if (values[j]) val_mask |= bit;
  }
  return {idx_mask, val_mask};
}

PredictionSet PredictionSet::from_masks(int m, std::vector<std::uint32_t> raw) {
  require(m >= 1 && m <= kMaxLabels, "label count out of range");
  for (std::uint32_t v : raw)
    require(v < (std::uint32_t{1} << m), "mask has bits beyond label count");
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  PredictionSet s(m);
  s.masks = std::move(raw);
  return s;
}

PredictionSet PredictionSet::from_vectors(int m,
                                          const std::vector<BinaryVector>& ys) {
  std::vector<std::uint32_t> raw;
  raw.reserve(ys.size());
  for (const auto& y : ys) {
    require(y.m == m, "prediction set members must share the label count");
    raw.push_back(y.mask);
  }
  return from_masks(m, std::move(raw));
}

PredictionSet PredictionSet::full(int m) {
  require(m >= 1 && m <= kMaxEnumerate, "enumeration too large");
  PredictionSet s(m);
  s.masks.resize(std::size_t{1} << m);
  for (std::uint32_t v = 0; v < s.masks.size(); ++v) s.masks[v] = v;
  return s;
}

bool PredictionSet::contains(std::uint32_t mask) const {
  return std::binary_search(masks.begin(), masks.end(), mask);
}

bool PredictionSet::contains(const BinaryVector& y) const {
  return y.m == m && contains(y.mask);
}

std::vector<BinaryVector> PredictionSet::vectors() const {
  std::vector<BinaryVector> out;
  out.reserve(masks.size());
  for (std::uint32_t v : masks) out.emplace_back(m, v);
  return out;
}

std::vector<std::string> PredictionSet::strings() const {
  std::vector<std::string> out;
  out.reserve(masks.size());
  for (std::uint32_t v : masks) out.push_back(BinaryVector(m, v).str());
  return out;
}

int hamming_loss(const BinaryVector& y1, const BinaryVector& y2) {
  require(y1.m == y2.m, "hamming_loss requires equal label counts");
  return std::popcount(y1.mask ^ y2.mask);
}

int partial_hamming_loss(const Assignment& b, const BinaryVector& y) {
  auto [idx_mask, val_mask] = b.masks(y.m);
  return std::popcount((y.mask ^ val_mask) & idx_mask);
}

PredictionSet expand_partial(const PartialVector& v) {
  if (v.m > kMaxEnumerate) throw std::invalid_argument("enumeration too large");
  std::uint32_t star_mask = ~v.decided & ((std::uint32_t{1} << v.m) - 1);
  std::vector<std::uint32_t> raw;
  raw.reserve(std::size_t{1} << std::popcount(star_mask));
  // Enumerate all subsets of the star positions on top of the decided values.
  std::uint32_t sub = 0;
  while (true) {
    raw.push_back(v.values | sub);
    if (sub == star_mask) break;
    sub = (sub - star_mask) & star_mask;  // next subset of star_mask
  }
  return PredictionSet::from_masks(v.m, std::move(raw));
}

std::optional<PartialVector> is_partial_vector(const PredictionSet& s) {
  if (s.masks.empty()) throw std::invalid_argument("empty prediction set");
  std::uint32_t full = (std::uint32_t{1} << s.m) - 1;
  std::uint32_t and_mask = full, or_mask = 0;
  for (std::uint32_t v : s.masks) {
    and_mask &= v;
    or_mask |= v;
  }
  std::uint32_t star_mask = or_mask & ~and_mask;
  if (s.masks.size() != (std::size_t{1} << std::popcount(star_mask)))
    return std::nullopt;
  // Members all agree outside star_mask (bits constant across the set), and
  // the size matches the expansion, so the expansion equals the set.
  return PartialVector(s.m, full & ~star_mask, and_mask);
}

}  // namespace credalml
