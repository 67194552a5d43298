#include <cmath>
#include <stdexcept>

#include "advgame/exact.hpp"
#include "advgame/harness.hpp"
#include "doctest.h"

using namespace advgame;

namespace {

void strip_time(std::vector<ExperimentRow>& rows) {
  for (auto& r : rows) r.wall_ms = 0.0;
}

}  // namespace

TEST_CASE("scenario names round trip") {
  for (auto s : {Scenario::RandomBinary, Scenario::RandomMulticlass, Scenario::RandomRegression,
                 Scenario::Thresholds, Scenario::MatchingPennies}) {
    CHECK(scenario_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(scenario_from_string("coin-toss"), std::invalid_argument);
}

TEST_CASE("matching pennies trial") {
  ExperimentConfig cfg;
  cfg.scenario = Scenario::MatchingPennies;
  cfg.epsilon = 0.05;
  cfg.sample_sizes = {1};
  const auto row = run_trial(cfg, 0, 1);
  CHECK(row.error.empty());
  CHECK(row.value == doctest::Approx(0.5));
  CHECK(row.learner <= 0.55);
  CHECK(row.adversary >= 0.45);
  CHECK(row.eps_checked);
  CHECK(row.eps_ok(cfg.epsilon));
}

TEST_CASE("generated instances are valid") {
  int count = 0;
  for (auto s : {Scenario::RandomBinary, Scenario::RandomMulticlass, Scenario::RandomRegression,
                 Scenario::Thresholds}) {
    ExperimentConfig cfg;
    cfg.scenario = s;
    cfg.seed = 17;
    cfg.k = 3;
    cfg.num_labels = s == Scenario::RandomMulticlass ? 4 : 2;
    cfg.loss = s == Scenario::RandomRegression ? LossKind::L2 : LossKind::ZeroOne;
    for (int trial = 0; trial < 250; ++trial) {
      const auto g = generate_instance(cfg, trial, 1 + trial % 40);
      CHECK(validate_instance(g).empty());
      CHECK(g.sample.size() == 1 + trial % 40);
      CHECK(g.budget() == cfg.k);
      ++count;
    }
  }
  CHECK(count == 1000);
}

TEST_CASE("population depends on the trial, sample on m") {
  ExperimentConfig cfg;
  cfg.seed = 5;
  const auto a = generate_instance(cfg, 3, 10);
  const auto b = generate_instance(cfg, 3, 50);
  CHECK(a.rho.lists == b.rho.lists);
  CHECK(a.target.labels == b.target.labels);
  CHECK(a.dist.weights == b.dist.weights);
  CHECK(a.hypotheses.size() == b.hypotheses.size());
  for (int h = 0; h < a.hypotheses.size(); ++h)
    CHECK(std::equal(a.hypotheses.row(h).begin(), a.hypotheses.row(h).end(), b.hypotheses.row(h).begin()));
  const auto c = generate_instance(cfg, 4, 10);
  CHECK(c.sample != a.sample);
  CHECK(generate_instance(cfg, 3, 10).sample == a.sample);
}

TEST_CASE("with k = 1 the learner guarantee equals the game value") {
  ExperimentConfig cfg;
  cfg.k = 1;
  cfg.seed = 9;
  cfg.sample_sizes = {15};
  cfg.trials = 8;
  const auto result = run_experiment(cfg);
  for (const auto& r : result.rows) {
    CHECK(r.error.empty());
    CHECK(r.rounds == 1);
    CHECK(r.learner == doctest::Approx(r.value).epsilon(1e-9));
  }
}

TEST_CASE("experiment rows are deterministic across thread counts") {
  ExperimentConfig cfg;
  cfg.seed = 77;
  cfg.sample_sizes = {10, 30};
  cfg.trials = 6;
  cfg.epsilon = 0.2;
  cfg.threads = 1;
  auto one = run_experiment(cfg).rows;
  cfg.threads = 4;
  auto four = run_experiment(cfg).rows;
  strip_time(one);
  strip_time(four);
  CHECK(to_csv(one) == to_csv(four));
  REQUIRE(one.size() == 12);
  CHECK(one[0].trial == 0);
  CHECK(one[0].m == 10);
  CHECK(one[1].m == 30);
  CHECK(one[2].trial == 1);
}

TEST_CASE("experiment summary") {
  ExperimentConfig cfg;
  cfg.seed = 3;
  cfg.sample_sizes = {10, 40};
  cfg.trials = 5;
  cfg.epsilon = 0.2;
  const auto result = run_experiment(cfg);
  const auto& s = result.summary;
  CHECK(s.rows == 10);
  CHECK(s.errors == 0);
  CHECK(s.eps_checks == 10);
  CHECK(s.eps_pass_rate() == 1.0);
  CHECK(s.ordering_violations == 0);
  CHECK(s.ok());
  REQUIRE(s.median_gaps.size() == 2);
  CHECK(s.median_gaps[0].m == 10);
  CHECK(s.decay_slope.has_value());
}

TEST_CASE("fixed rounds skip the epsilon check") {
  ExperimentConfig cfg;
  cfg.seed = 4;
  cfg.trials = 2;
  cfg.rounds = 5;
  const auto result = run_experiment(cfg);
  for (const auto& r : result.rows) {
    CHECK(r.rounds == 5);
    CHECK_FALSE(r.eps_checked);
  }
  CHECK(result.summary.eps_checks == 0);
}

TEST_CASE("CSV round trip is byte identical") {
  ExperimentConfig cfg;
  cfg.seed = 12;
  cfg.sample_sizes = {8, 16};
  cfg.trials = 3;
  auto rows = run_experiment(cfg).rows;
  rows[1].error = "bad, \"quoted\"\nvalue";
  const auto text = to_csv(rows);
  CHECK(text.rfind(csv_header(), 0) == 0);
  const auto back = from_csv(text);
  REQUIRE(back.size() == rows.size());
  CHECK(back[1].error == rows[1].error);
  CHECK(back[0].value == rows[0].value);
  CHECK(to_csv(back) == text);
  CHECK_THROWS(from_csv("trial,m\n1,2\n"));
}

TEST_CASE("least-squares slope") {
  CHECK(regression_slope({0, 1, 2, 3}, {3, 2.5, 2, 1.5}) == doctest::Approx(-0.5));
  CHECK(regression_slope({1, 2, 4}, {1, 3, 2}) == doctest::Approx(3.0 / 14.0));
  CHECK_THROWS(regression_slope({1, 1}, {2, 3}));
}

TEST_CASE("configuration checks") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.check());
  auto bad = cfg;
  bad.k = 9;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = cfg;
  bad.sample_sizes.clear();
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = cfg;
  bad.scenario = Scenario::RandomRegression;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}
