// Label-vector domain types: bit conventions, Hamming losses, partial-vector
// expansion and its inverse, assignments, and prediction sets.

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "credalml/types.hpp"
#include "doctest.h"

using namespace credalml;

TEST_CASE("binary vector bit convention and string round trip") {
  BinaryVector y = BinaryVector::parse("10");
  CHECK(y.m == 2);
  CHECK(y.mask == 0b10u);
  CHECK(y.get(1) == 1);
  CHECK(y.get(2) == 0);
  CHECK(y.str() == "10");
  CHECK(y.with(2, 1).str() == "11");
  CHECK(y.with(1, 0).str() == "00");
  CHECK(y.complemented().str() == "01");

  // Numeric mask order must equal lexicographic order on label strings.
  std::vector<std::string> strings;
  for (std::uint32_t mask = 0; mask < 8; ++mask)
    strings.push_back(BinaryVector(3, mask).str());
  CHECK(std::is_sorted(strings.begin(), strings.end()));

  CHECK_THROWS_AS(BinaryVector(2, 4u), std::invalid_argument);
  CHECK_THROWS_AS(BinaryVector(0, 0u), std::invalid_argument);
  CHECK_THROWS_AS(BinaryVector::parse("0120"), std::invalid_argument);
}

TEST_CASE("hamming loss") {
  CHECK(hamming_loss(BinaryVector::parse("01"), BinaryVector::parse("10")) == 2);
  BinaryVector y = BinaryVector::parse("1101");
  CHECK(hamming_loss(y, y) == 0);
  CHECK(hamming_loss(BinaryVector::parse("110"), BinaryVector::parse("100")) == 1);
  CHECK_THROWS_AS(hamming_loss(BinaryVector::parse("1"), BinaryVector::parse("10")),
                  std::invalid_argument);
}

TEST_CASE("partial hamming loss on index subsets") {
  // Values pinned on I = {2} with a = (0), truth (1,1): one disagreement.
  CHECK(partial_hamming_loss(Assignment({2}, {0}), BinaryVector::parse("11")) == 1);
  CHECK(partial_hamming_loss(Assignment({2}, {1}), BinaryVector::parse("11")) == 0);

  // Full index set reduces to plain Hamming loss, exhaustively for m <= 8.
  for (int m = 1; m <= 8; ++m) {
    for (std::uint32_t a = 0; a < (1u << m); ++a) {
      BinaryVector ya(m, a);
      std::vector<int> idx(m), vals(m);
      for (int i = 1; i <= m; ++i) {
        idx[i - 1] = i;
        vals[i - 1] = ya.get(i);
      }
      Assignment full(idx, vals);
      for (std::uint32_t b = 0; b < (1u << m); ++b) {
        BinaryVector yb(m, b);
        CHECK(partial_hamming_loss(full, yb) == hamming_loss(ya, yb));
      }
    }
  }

  CHECK_THROWS_AS(partial_hamming_loss(Assignment({3}, {1}), BinaryVector::parse("10")),
                  std::invalid_argument);
}

TEST_CASE("assignment construction, complement, masks") {
  Assignment a({1, 3}, {1, 0});
  CHECK(a.size() == 2);
  Assignment ac = a.complemented();
  CHECK(ac.indices == std::vector<int>{1, 3});
  CHECK(ac.values == std::vector<int>{0, 1});

  // m = 3: index 1 -> bit 2, index 3 -> bit 0.
  auto [covered, ones] = a.masks(3);
  CHECK(covered == 0b101u);
  CHECK(ones == 0b100u);

  CHECK_THROWS_AS(Assignment({2, 1}, {0, 0}), std::invalid_argument);  // not ascending
  CHECK_THROWS_AS(Assignment({1}, {2}), std::invalid_argument);        // bad value
  CHECK_THROWS_AS(Assignment({}, {}), std::invalid_argument);          // empty
}

TEST_CASE("partial vector basics") {
  PartialVector v = PartialVector::parse("1*0");
  CHECK(v.m == 3);
  CHECK(v.get(1) == 1);
  CHECK(v.get(2) == -1);
  CHECK(v.get(3) == 0);
  CHECK(v.stars() == 1);
  CHECK(v.decided_count() == 2);
  CHECK_FALSE(v.complete());
  CHECK(v.str() == "1*0");
  CHECK(v.with(2, 1).str() == "110");
  CHECK(v.with_star(1).str() == "**0");

  PartialVector all_star(3);
  CHECK(all_star.stars() == 3);
  CHECK(all_star.str() == "***");

  PartialVector complete(BinaryVector::parse("01"));
  CHECK(complete.complete());
  CHECK(complete.str() == "01");

  CHECK_THROWS_AS(PartialVector(2, 0b01u, 0b10u), std::invalid_argument);
}

TEST_CASE("expand partial vector") {
  CHECK(expand_partial(PartialVector::parse("1*")).strings() ==
        std::vector<std::string>{"10", "11"});
  CHECK(expand_partial(PartialVector::parse("**")).size() == 4);
  CHECK(expand_partial(PartialVector::parse("01")).strings() ==
        std::vector<std::string>{"01"});

  PartialVector too_wide(kMaxEnumerate + 1);
  CHECK_THROWS_AS(expand_partial(too_wide), std::invalid_argument);
}

TEST_CASE("inverse of expansion") {
  auto inv = is_partial_vector(
      PredictionSet::from_vectors(2, {BinaryVector::parse("10"), BinaryVector::parse("11")}));
  REQUIRE(inv.has_value());
  CHECK(inv->str() == "1*");

  CHECK_FALSE(is_partial_vector(PredictionSet::from_vectors(
                                    2, {BinaryVector::parse("01"), BinaryVector::parse("10")}))
                  .has_value());
  CHECK_FALSE(is_partial_vector(
                  PredictionSet::from_vectors(2, {BinaryVector::parse("10"),
                                                  BinaryVector::parse("00"),
                                                  BinaryVector::parse("11")}))
                  .has_value());
}

TEST_CASE("round trip: every partial vector with small m survives expand + invert") {
  for (int m = 1; m <= 10; ++m) {
    // Enumerate all 3^m partial vectors via base-3 counting.
    long total = 1;
    for (int i = 0; i < m; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
      long c = code;
      PartialVector v(m);
      for (int i = 1; i <= m; ++i) {
        int digit = static_cast<int>(c % 3);
        c /= 3;
        if (digit < 2) v = v.with(i, digit);
      }
      auto back = is_partial_vector(expand_partial(v));
      REQUIRE(back.has_value());
      CHECK(*back == v);
    }
  }
}

TEST_CASE("inverse succeeds exactly on expressible sets (exhaustive m = 3)") {
  // Brute force: a set is expressible iff some of the 27 partial vectors
  // expands to it.
  std::vector<PredictionSet> expansions;
  for (long code = 0; code < 27; ++code) {
    long c = code;
    PartialVector v(3);
    for (int i = 1; i <= 3; ++i) {
      int digit = static_cast<int>(c % 3);
      c /= 3;
      if (digit < 2) v = v.with(i, digit);
    }
    expansions.push_back(expand_partial(v));
  }
  for (std::uint32_t subset = 1; subset < 256; ++subset) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < 8; ++mask)
      if (subset & (1u << mask)) masks.push_back(mask);
    PredictionSet s = PredictionSet::from_masks(3, masks);
    bool expressible = false;
    for (const auto& e : expansions)
      if (e == s) expressible = true;
    CHECK(is_partial_vector(s).has_value() == expressible);
  }
}

TEST_CASE("prediction set dedup, ordering, membership") {
  PredictionSet s = PredictionSet::from_masks(2, {3, 1, 3, 0});
  CHECK(s.size() == 3);
  CHECK(s.masks == std::vector<std::uint32_t>{0, 1, 3});
  CHECK(s.strings() == std::vector<std::string>{"00", "01", "11"});
  CHECK(s.contains(BinaryVector::parse("01")));
  CHECK_FALSE(s.contains(BinaryVector::parse("10")));

  CHECK(PredictionSet::full(4).size() == 16);
  CHECK_THROWS_AS(PredictionSet::full(kMaxEnumerate + 1), std::invalid_argument);
  CHECK_THROWS_AS(PredictionSet::from_masks(2, {4}), std::invalid_argument);
}

TEST_CASE("probability interval validation and helpers") {
  ProbabilityInterval iv(0.2, 0.6);
  CHECK(iv.complement() == ProbabilityInterval(0.4, 0.8));
  CHECK(iv.contains(0.2));
  CHECK(iv.contains(0.6));
  CHECK_FALSE(iv.contains(0.61));
  CHECK(iv.contains(ProbabilityInterval(0.3, 0.5)));
  CHECK_FALSE(iv.contains(ProbabilityInterval(0.1, 0.5)));
  CHECK(ProbabilityInterval(0.4, 0.4).degenerate());
  CHECK_FALSE(iv.degenerate());

  CHECK_THROWS_AS(ProbabilityInterval(0.7, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityInterval(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityInterval(0.5, 1.1), std::invalid_argument);
}
