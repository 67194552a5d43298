#include <cmath>
#include <stdexcept>

#include "advgame/exact.hpp"
#include "advgame/game.hpp"
#include "advgame/harness.hpp"
#include "advgame/random.hpp"
#include "doctest.h"

using namespace advgame;

namespace {

// One clean point, labelled 0, with corruptions z0 and z1.
GameInstance two_corruptions(const std::vector<std::vector<int>>& rows) {
  GameInstance g;
  g.x_domain = {1};
  g.z_domain = {2};
  g.rho = {2, {{0, 1}}};
  g.target = Concept::categorical({0}, 2);
  g.dist = Distribution::uniform(1);
  g.sample.examples = {{0, 0}};
  g.hypotheses = HypothesisClass::categorical(2, rows);
  return g;
}

GameInstance random_instance(Rng& rng, int max_n, int max_h, int max_k) {
  GameInstance g;
  const int nx = static_cast<int>(rng.uniform_int(1, 6));
  const int nz = static_cast<int>(rng.uniform_int(2, 6));
  const int k = static_cast<int>(rng.uniform_int(1, std::min(max_k, nz)));
  const int nh = static_cast<int>(rng.uniform_int(1, max_h));
  const int n = static_cast<int>(rng.uniform_int(1, max_n));
  g.x_domain = {nx};
  g.z_domain = {nz};
  g.rho.budget = k;
  for (int x = 0; x < nx; ++x)
    g.rho.lists.push_back(rng.sample_without_replacement(nz, static_cast<int>(rng.uniform_int(1, k))));
  std::vector<int> labels(static_cast<std::size_t>(nx));
  for (auto& y : labels) y = static_cast<int>(rng.uniform_int(0, 1));
  g.target = Concept::categorical(labels, 2);
  g.dist = Distribution::uniform(nx);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(nh), std::vector<int>(static_cast<std::size_t>(nz)));
  for (auto& r : rows)
    for (auto& v : r) v = static_cast<int>(rng.uniform_int(0, 1));
  g.hypotheses = HypothesisClass::categorical(2, rows);
  g.sample = draw_sample(g.dist, g.target, n, rng.next());
  return g;
}

}  // namespace

TEST_CASE("horizon_for") {
  CHECK(horizon_for(100, 4, 0.1) == 55452);
  CHECK(horizon_for(37, 1, 0.01) == 1);
  CHECK(horizon_for(1, 2, 1.0) == 3);
  CHECK_THROWS_AS(horizon_for(0, 2, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(horizon_for(1, 2, 0.0), std::invalid_argument);
}

TEST_CASE("default learning rate") {
  CHECK(default_eta(2, 1) == 0.5);
  CHECK(default_eta(4, 10000) == doctest::Approx(std::sqrt(std::log(4.0) / 10000)));
  CHECK(default_eta(1, 10000) == default_eta(2, 10000));
}

TEST_CASE("D^P with k = 1 puts 1/n on each sole corruption") {
  GameInstance g = two_corruptions({{0, 0}});
  g.rho = {1, {{1}}};
  g.sample.examples = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
  const auto pairs = dp_distribution(AdversaryStrategy::uniform(g), g);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].z == 1);
  CHECK(pairs[0].weight == doctest::Approx(1.0));
}

TEST_CASE("D^P of a single example follows P_x") {
  const GameInstance g = two_corruptions({{0, 0}});
  const auto pairs = dp_distribution({{{0.6, 0.4}}}, g);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].z == 0);
  CHECK(pairs[0].weight == doctest::Approx(0.6));
  CHECK(pairs[1].z == 1);
  CHECK(pairs[1].weight == doctest::Approx(0.4));
}

TEST_CASE("D^P merges a shared corruption with the same label") {
  GameInstance g;
  g.x_domain = {2};
  g.z_domain = {3};
  g.rho = {2, {{0, 2}, {1, 2}}};
  g.target = Concept::categorical({1, 1}, 2);
  g.dist = Distribution::uniform(2);
  g.sample.examples = {{0, 1}, {1, 1}};
  g.hypotheses = HypothesisClass::categorical(2, {{0, 0, 0}});
  const auto pairs = dp_distribution({{{0.3, 0.7}, {0.8, 0.2}}}, g);
  REQUIRE(pairs.size() == 3);
  // By hand: z2 gets 0.5 * 0.7 + 0.5 * 0.2.
  CHECK(pairs[2].z == 2);
  CHECK(pairs[2].weight == doctest::Approx(0.45));
  double total = 0;
  for (const auto& p : pairs) total += p.weight;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("ERM oracle") {
  const auto single = HypothesisClass::categorical(2, {{1}});
  const std::vector<WeightedPair> pairs{{0, 0.0, 1.0}};
  CHECK(erm_oracle(single, pairs, LossKind::ZeroOne) == 0);

  const auto two = HypothesisClass::real({{0.3}, {0.1}});
  const std::vector<WeightedPair> at_zero{{0, 0.0, 1.0}};
  CHECK(erm_oracle(two, at_zero, LossKind::L1) == 1);

  const auto tied = HypothesisClass::categorical(2, {{1, 0}, {0, 1}, {0, 0}});
  const std::vector<WeightedPair> half{{0, 0.0, 0.5}, {1, 0.0, 0.5}};
  CHECK(erm_oracle(tied, half, LossKind::ZeroOne) == 2);
  const std::vector<WeightedPair> one{{0, 1.0, 0.5}, {1, 1.0, 0.5}};
  CHECK(erm_oracle(tied, one, LossKind::ZeroOne) == 0);
  CHECK_THROWS_AS(erm_oracle(tied, std::vector<WeightedPair>{}, LossKind::ZeroOne),
                  std::invalid_argument);
}

TEST_CASE("one multiplicative update by hand") {
  // h errs at z0 (predicts 1) and not at z1.
  const GameInstance g = two_corruptions({{1, 0}});
  MwTrainer trainer(g, 0.5);
  CHECK(trainer.step() == 0);
  const auto w = trainer.weights();
  CHECK(w[0][0] == doctest::Approx(1.5));
  CHECK(w[0][1] == doctest::Approx(1.0));
  const auto p = trainer.current_strategy();
  CHECK(p.per_example[0][0] == doctest::Approx(0.6));
  CHECK(p.per_example[0][1] == doctest::Approx(0.4));
}

TEST_CASE("with k = 1 every round plays the same ERM hypothesis") {
  GameInstance g;
  g.x_domain = {3};
  g.z_domain = {3};
  g.rho = {1, {{0}, {1}, {2}}};
  g.target = Concept::categorical({0, 1, 1}, 2);
  g.dist = Distribution::uniform(3);
  g.sample.examples = {{0, 0}, {1, 1}, {2, 1}, {1, 1}};
  g.hypotheses = HypothesisClass::categorical(2, {{1, 1, 0}, {0, 1, 0}, {0, 0, 0}});
  const auto out = mw_train(g, 20, 0.3);
  for (int h : out.hypotheses) CHECK(h == 1);
  CHECK(adversary_guarantee(out.average_adversary, g) == doctest::Approx(0.25));
  CHECK(learner_guarantee(out, g) == doctest::Approx(0.25));
}

TEST_CASE("matching pennies converges to 1/2") {
  const GameInstance g = matching_pennies();
  const auto T = horizon_for(1, 2, 0.05);
  const auto out = mw_train(g, T, default_eta(2, T));
  CHECK(learner_guarantee(out, g) <= 0.55);
  CHECK(adversary_guarantee(out.average_adversary, g) >= 0.45);
}

TEST_CASE("weights stay positive and never decrease") {
  Rng rng(3);
  const GameInstance g = random_instance(rng, 12, 6, 4);
  MwTrainer trainer(g, 0.4);
  auto before = trainer.weights();
  for (int t = 0; t < 60; ++t) {
    trainer.step();
    const auto after = trainer.weights();
    for (std::size_t i = 0; i < after.size(); ++i)
      for (std::size_t j = 0; j < after[i].size(); ++j) {
        CHECK(after[i][j] > 0.0);
        CHECK(after[i][j] >= before[i][j]);
      }
    before = after;
  }
}

TEST_CASE("training is deterministic") {
  Rng rng(8);
  const GameInstance g = random_instance(rng, 15, 5, 3);
  const auto a = mw_train(g, 300, 0.1);
  const auto b = mw_train(g, 300, 0.1);
  CHECK(a.hypotheses == b.hypotheses);
  CHECK(a.average_adversary.per_example == b.average_adversary.per_example);
}

TEST_CASE("guarantees bracket the exact value and meet the horizon bound") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const GameInstance g = random_instance(rng, 10, 6, 3);
    const double eps = 0.2;
    const auto T = horizon_for(g.sample.size(), g.budget(), eps);
    const auto out = mw_train(g, T, default_eta(g.budget(), T));
    const double v = exact_game_value(g).value;
    const double learner = learner_guarantee(out, g);
    const double adversary = adversary_guarantee(out.average_adversary, g);
    CHECK(out.average_adversary.is_valid_for(g));
    CHECK(adversary <= v + 1e-9);
    CHECK(v <= learner + 1e-9);
    CHECK(learner - v <= eps);
    CHECK(v - adversary <= eps);
  }
}

TEST_CASE("trainer rejects bad parameters") {
  const GameInstance g = matching_pennies();
  CHECK_THROWS_AS(mw_train(g, 0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(MwTrainer(g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MwTrainer(g, 1.5), std::invalid_argument);
}
