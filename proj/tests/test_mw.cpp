#include <doctest.h>

#include <cmath>

#include "og/mw.hpp"
#include "og/rng.hpp"

using namespace og;

TEST_CASE("single expert has zero regret") {
  MwLearner mw(1, mw_learning_rate(1, 100));
  for (int t = 0; t < 100; ++t) {
    double loss = (t % 3) / 2.0;
    mw.observe(std::vector<double>{loss});
  }
  CHECK(mw.regret() == doctest::Approx(0.0));
}

TEST_CASE("weights stay normalized and positive") {
  SplitMix64 rng(7);
  MwLearner mw(8, mw_learning_rate(8, 200));
  for (int t = 0; t < 200; ++t) {
    std::vector<double> losses(8);
    for (auto& l : losses) l = rng.next_double();
    mw.observe(losses);
    double sum = 0.0;
    for (double w : mw.weights()) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("regret bound 2 sqrt(T log N) on random adversarial matrices") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + int(rng.next_below(31));
    long horizon = 16 + long(rng.next_below(496));
    MwLearner mw(n, mw_learning_rate(n, horizon));
    std::vector<double> losses(std::size_t(n));
    for (long t = 0; t < horizon; ++t) {
      for (auto& l : losses) l = rng.bernoulli(0.5) ? 1.0 : 0.0;
      mw.observe(losses);
    }
    double bound = 2.0 * std::sqrt(double(horizon) * std::log(double(n)));
    CHECK(mw.regret() <= bound);
  }
}

TEST_CASE("adaptive adversary cannot break the bound") {
  // Feed the loss that punishes the current favorite expert.
  int n = 4;
  long horizon = 512;
  MwLearner mw(n, mw_learning_rate(n, horizon));
  for (long t = 0; t < horizon; ++t) {
    std::size_t favorite = 0;
    for (std::size_t i = 1; i < mw.weights().size(); ++i)
      if (mw.weights()[i] > mw.weights()[favorite]) favorite = i;
    std::vector<double> losses(std::size_t(n), 0.0);
    losses[favorite] = 1.0;
    mw.observe(losses);
  }
  CHECK(mw.regret() <= 2.0 * std::sqrt(double(horizon) * std::log(double(n))));
}
