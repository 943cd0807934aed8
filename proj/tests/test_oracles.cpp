#include <doctest.h>

#include <cmath>

#include "og/concept_class.hpp"
#include "og/generators.hpp"
#include "og/rng.hpp"

using namespace og;

namespace {

// Independent brute force used as the oracle for the oracles.
int brute_force_min_loss(const FiniteConceptClass& cls,
                         const std::vector<LabeledExample>& examples) {
  double best = 1e18;
  for (int h = 0; h < cls.size(); ++h) {
    double loss = 0.0;
    for (const auto& ex : examples) loss += std::abs(cls.at(h, ex.x) - ex.y);
    best = std::min(best, loss);
  }
  return int(best + 0.5);
}

std::vector<LabeledExample> random_examples(SplitMix64& rng,
                                            const FiniteConceptClass& cls,
                                            int count) {
  std::vector<LabeledExample> out;
  for (int i = 0; i < count; ++i)
    out.push_back({int(rng.next_below(std::uint64_t(cls.domain_size()))),
                   rng.bernoulli(0.5) ? 1.0 : 0.0});
  return out;
}

}  // namespace

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(FiniteConceptClass(2, LabelKind::binary, {{1.0, 0.5}}),
                  input_error);
  CHECK_THROWS_AS(FiniteConceptClass(2, LabelKind::binary, {{1.0}}), input_error);
  CHECK_THROWS_AS(FiniteConceptClass(2, LabelKind::binary, {}), input_error);
  CHECK_THROWS_AS(FiniteConceptClass(0, LabelKind::binary, {{}}), input_error);
  CHECK_THROWS_AS(FiniteConceptClass(1, LabelKind::real, {{1.5}}), input_error);
  CHECK_NOTHROW(FiniteConceptClass(1, LabelKind::real, {{0.25}}));
}

TEST_CASE("consistent oracle on T3") {
  auto t3 = gen_threshold_class(3);

  std::vector<LabeledExample> e1{{0, 0.0}, {2, 1.0}};
  auto h = consistent_oracle(t3, e1);
  REQUIRE(h.has_value());
  CHECK(h->index == 1);

  auto empty = consistent_oracle(t3, {});
  REQUIRE(empty.has_value());
  CHECK(empty->index == 0);

  std::vector<LabeledExample> contradictory{{0, 0.0}, {0, 1.0}};
  CHECK(!consistent_oracle(t3, contradictory).has_value());

  std::vector<LabeledExample> bad{{5, 1.0}};
  CHECK_THROWS_AS(consistent_oracle(t3, bad), input_error);

  // Adversarial tie-break: rows 1 and 2 both work, highest wins.
  auto high = consistent_oracle(t3, e1, TieBreak::highest);
  REQUIRE(high.has_value());
  CHECK(high->index == 2);
}

TEST_CASE("erm oracle on T3") {
  auto t3 = gen_threshold_class(3);

  std::vector<LabeledExample> e1{{0, 1.0}, {1, 0.0}};
  CHECK(erm_oracle(t3, e1).index == 0);
  CHECK(empirical_loss(t3, HypothesisId{0}, e1) == doctest::Approx(1.0));

  std::vector<LabeledExample> e2{{2, 1.0}};
  CHECK(erm_oracle(t3, e2).index == 0);

  CHECK(erm_oracle(t3, {}).index == 0);
  CHECK_THROWS_AS(erm_oracle(t3, {}, -0.5), input_error);
}

TEST_CASE("value oracle is a table read") {
  auto t3 = gen_threshold_class(3);
  CHECK(value_oracle(t3, HypothesisId{1}, 0) == 0.0);
  CHECK(value_oracle(t3, HypothesisId{1}, 2) == 1.0);
  CHECK(value_oracle(t3, HypothesisId{0}, 1) == 1.0);
  CHECK_THROWS_AS(value_oracle(t3, HypothesisId{3}, 0), input_error);
  CHECK_THROWS_AS(value_oracle(t3, HypothesisId{0}, 3), input_error);
}

TEST_CASE("oracles agree with brute force on random classes") {
  SplitMix64 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + int(rng.next_below(12));
    int n = 1 + int(rng.next_below(8));
    auto cls = gen_random_class(m, n, 0.5, rng.next_u64());
    auto examples = random_examples(rng, cls, int(rng.next_below(10)));

    auto consistent = consistent_oracle(cls, examples);
    int min_loss = brute_force_min_loss(cls, examples);
    if (consistent) {
      CHECK(empirical_loss(cls, *consistent, examples) == doctest::Approx(0.0));
    } else {
      CHECK(min_loss > 0);
    }
    // present iff zero-loss achievable
    CHECK(consistent.has_value() == (min_loss == 0));

    auto best = erm_oracle(cls, examples);
    CHECK(empirical_loss(cls, best, examples) == doctest::Approx(min_loss));

    // Tie-breaking: no lower-index hypothesis achieves the same loss.
    for (int h = 0; h < best.index; ++h)
      CHECK(empirical_loss(cls, HypothesisId{h}, examples) > min_loss - 0.5);
  }
}
