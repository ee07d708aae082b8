// Closed-form skeptical rules for independent per-label marginal intervals:
// the exact partial-vector prediction, interval dominance, the minimax and
// minimin point rules, and the cross-check against the general sweep on an
// equivalent tree.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "credalml/binary_relevance.hpp"
#include "credalml/decision.hpp"
#include "credalml/tree.hpp"
#include "credalml/types.hpp"
#include "doctest.h"

using namespace credalml;

namespace {

const std::string kFixtures = CREDALML_FIXTURES_DIR;

MarginalIntervalModel random_model(int m, std::mt19937_64& rng) {
  std::vector<ProbabilityInterval> ivs;
  for (int i = 0; i < m; ++i) {
    double a = uniform01(rng);
    double b = uniform01(rng);
    if (a > b) std::swap(a, b);
    ivs.emplace_back(a, b);
  }
  return MarginalIntervalModel(std::move(ivs));
}

bool subset_of(const PredictionSet& inner, const PredictionSet& outer) {
  for (std::uint32_t mask : inner.masks)
    if (!outer.contains(mask)) return false;
  return true;
}

}  // namespace

TEST_CASE("skeptical partial-vector prediction") {
  MarginalIntervalModel half_vacuous({ProbabilityInterval(0.6, 1.0),
                                  ProbabilityInterval(0.0, 1.0)});
  CHECK(br_skeptical_prediction(half_vacuous).str() == "1*");

  MarginalIntervalModel precise({ProbabilityInterval(0.45, 0.45),
                                 ProbabilityInterval(0.7, 0.7)});
  CHECK(br_skeptical_prediction(precise).str() == "01");

  MarginalIntervalModel vacuous({ProbabilityInterval(0.0, 1.0),
                                 ProbabilityInterval(0.0, 1.0),
                                 ProbabilityInterval(0.0, 1.0)});
  CHECK(br_skeptical_prediction(vacuous).str() == "***");
}

TEST_CASE("minimax and minimin point rules") {
  MarginalIntervalModel half_vacuous({ProbabilityInterval(0.6, 1.0),
                                  ProbabilityInterval(0.0, 1.0)});
  CHECK(gamma_minimax(half_vacuous).str() == "1*");
  CHECK(gamma_minimin(half_vacuous).str() == "1*");

  MarginalIntervalModel precise({ProbabilityInterval(0.45, 0.45),
                                 ProbabilityInterval(0.7, 0.7)});
  CHECK(gamma_minimax(precise).str() == "01");
  CHECK(gamma_minimin(precise).str() == "01");
  CHECK(gamma_minimax(precise) ==
        PartialVector(precise_bayes_hamming({0.45, 0.7})));

  MarginalIntervalModel symmetric({ProbabilityInterval(0.3, 0.7),
                                   ProbabilityInterval(0.3, 0.7)});
  CHECK(gamma_minimax(symmetric).str() == "**");
  CHECK(gamma_minimin(symmetric).str() == "**");

  MarginalIntervalModel low({ProbabilityInterval(0.2, 0.3)});
  CHECK(gamma_minimin(low).str() == "0");
  CHECK(gamma_minimax(low).str() == "0");
}

TEST_CASE("minimax coincides with minimin on random models") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 1000; ++trial) {
    int m = 1 + static_cast<int>(rng() % 6);
    MarginalIntervalModel model = random_model(m, rng);
    CHECK(gamma_minimax(model) == gamma_minimin(model));
  }
}

TEST_CASE("expected-loss bounds and interval dominance witness") {
  MarginalIntervalModel half_vacuous({ProbabilityInterval(0.6, 1.0),
                                  ProbabilityInterval(0.0, 1.0)});

  auto [lo11, hi11] = br_hamming_bounds(half_vacuous, BinaryVector::parse("11"));
  auto [lo10, hi10] = br_hamming_bounds(half_vacuous, BinaryVector::parse("10"));
  auto [lo01, hi01] = br_hamming_bounds(half_vacuous, BinaryVector::parse("01"));
  auto [lo00, hi00] = br_hamming_bounds(half_vacuous, BinaryVector::parse("00"));
  CHECK(lo11 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lo10 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lo01 == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(lo00 == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(hi11 == doctest::Approx(1.4).epsilon(1e-9));
  CHECK(hi10 == doctest::Approx(1.4).epsilon(1e-9));
  CHECK(hi01 == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(hi00 == doctest::Approx(2.0).epsilon(1e-9));

  // Every best case (0.6) beats no worst case (1.4): all four survive, and
  // the set is expressible as the full partial vector.
  PredictionSet id = interval_dominance_set(half_vacuous);
  CHECK(id.size() == 4);
  auto as_partial = is_partial_vector(id);
  REQUIRE(as_partial.has_value());
  CHECK(as_partial->str() == "**");

  // Strict-inclusion witness: maximality keeps only the completions of "1*".
  PredictionSet maximal = expand_partial(br_skeptical_prediction(half_vacuous));
  CHECK(maximal.size() == 2);
  CHECK(subset_of(maximal, id));

  // Degenerate model with distinct expectations collapses to a singleton.
  MarginalIntervalModel precise({ProbabilityInterval(0.45, 0.45),
                                 ProbabilityInterval(0.7, 0.7)});
  CHECK(interval_dominance_set(precise).strings() == std::vector<std::string>{"01"});

  auto [plo, phi] = br_hamming_bounds(precise, BinaryVector::parse("01"));
  CHECK(plo == doctest::Approx(0.45 + 0.3).epsilon(1e-9));
  CHECK(phi == doctest::Approx(plo).epsilon(1e-9));
}

TEST_CASE("rule-inclusion chain on random models") {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + static_cast<int>(rng() % 4);
    MarginalIntervalModel model = random_model(m, rng);

    PredictionSet point = expand_partial(gamma_minimax(model));
    PredictionSet skeptical = expand_partial(br_skeptical_prediction(model));
    PredictionSet id = interval_dominance_set(model);

    CHECK(subset_of(point, skeptical));
    CHECK(subset_of(skeptical, id));
  }
}

TEST_CASE("closed form equals the general sweep on the equivalent tree") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 120; ++trial) {
    int m = 1 + static_cast<int>(rng() % 4);
    MarginalIntervalModel model = random_model(m, rng);
    ImpreciseBinaryTree tree = br_equivalent_tree(model);
    CHECK(tree.m == m);
    CHECK(tree.nodes.size() == (std::size_t{1} << m) - 1);
    TreeOracle oracle(tree);
    PredictionSet closed = expand_partial(br_skeptical_prediction(model));
    PredictionSet swept = maximal_set(oracle).set;
    CHECK(closed == swept);
  }
}

TEST_CASE("json wire format for marginal models") {
  MarginalIntervalModel loaded =
      br_model_from_json_file(kFixtures + "/marginal_model_2label.json");
  CHECK(loaded.m == 2);
  CHECK(loaded.intervals[0] == ProbabilityInterval(0.6, 1.0));
  CHECK(loaded.intervals[1] == ProbabilityInterval(0.0, 1.0));
  CHECK(br_skeptical_prediction(loaded).str() == "1*");

  MarginalIntervalModel back = br_model_from_json(br_model_to_json(loaded));
  CHECK(back.m == loaded.m);
  CHECK(back.intervals == loaded.intervals);

  CHECK_THROWS(br_model_from_json("[[0.9, 0.1]]"));  // inverted bounds
  CHECK_THROWS(br_model_from_json("{}"));            // not a list
}
