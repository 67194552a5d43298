#include <algorithm>
#include <cmath>
#include <numeric>

#include "advgame/errors.hpp"
#include "advgame/exact.hpp"
#include "advgame/harness.hpp"
#include "advgame/random.hpp"
#include "advgame/simplex.hpp"
#include "doctest.h"

using namespace advgame;

namespace {

GameInstance random_tiny(Rng& rng, bool real) {
  GameInstance g;
  const int nx = static_cast<int>(rng.uniform_int(1, 3));
  const int nz = static_cast<int>(rng.uniform_int(2, 4));
  const int k = static_cast<int>(rng.uniform_int(1, 2));
  const int nh = static_cast<int>(rng.uniform_int(1, 3));
  g.x_domain = {nx};
  g.z_domain = {nz};
  g.rho.budget = k;
  for (int x = 0; x < nx; ++x)
    g.rho.lists.push_back(rng.sample_without_replacement(nz, static_cast<int>(rng.uniform_int(1, k))));
  g.dist = Distribution::uniform(nx);
  if (real) {
    std::vector<double> labels(static_cast<std::size_t>(nx));
    for (auto& y : labels) y = rng.uniform();
    g.target = Concept::real(labels);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(nh), std::vector<double>(static_cast<std::size_t>(nz)));
    for (auto& r : rows)
      for (auto& v : r) v = rng.uniform();
    g.hypotheses = HypothesisClass::real(rows);
    g.loss = rng.coin() ? LossKind::L1 : LossKind::L2;
  } else {
    std::vector<int> labels(static_cast<std::size_t>(nx));
    for (auto& y : labels) y = static_cast<int>(rng.uniform_int(0, 2));
    g.target = Concept::categorical(labels, 3);
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(nh), std::vector<int>(static_cast<std::size_t>(nz)));
    for (auto& r : rows)
      for (auto& v : r) v = static_cast<int>(rng.uniform_int(0, 2));
    g.hypotheses = HypothesisClass::categorical(3, rows);
  }
  g.sample = draw_sample(g.dist, g.target, static_cast<int>(rng.uniform_int(1, 3)), rng.next());
  return g;
}

// Piecewise-max objective at Q, computed from scratch.
double objective(const GameInstance& g, const std::vector<double>& q) {
  double total = 0.0;
  for (const auto& e : g.sample.examples) {
    double worst = 0.0;
    for (int z : g.rho.at(e.x)) {
      double l = 0.0;
      for (std::size_t h = 0; h < q.size(); ++h) {
        const double p = g.hypotheses(static_cast<int>(h), z);
        const double d = std::abs(p - e.y);
        l += q[h] * (g.loss == LossKind::ZeroOne ? (p != e.y ? 1.0 : 0.0)
                                                 : (g.loss == LossKind::L1 ? d : d * d));
      }
      worst = std::max(worst, l);
    }
    total += worst;
  }
  return total / g.sample.size();
}

// Minimum over the simplex grid with the given step (|H| <= 3).
double grid_value(const GameInstance& g, double step) {
  const int nh = g.hypotheses.size();
  const int cells = static_cast<int>(std::lround(1.0 / step));
  double best = 1e300;
  if (nh == 1) return objective(g, {1.0});
  for (int a = 0; a <= cells; ++a) {
    if (nh == 2) {
      best = std::min(best, objective(g, {a * step, 1.0 - a * step}));
      continue;
    }
    for (int b = 0; a + b <= cells; ++b)
      best = std::min(best, objective(g, {a * step, b * step, 1.0 - (a + b) * step}));
  }
  return best;
}

}  // namespace

TEST_CASE("matching pennies has value 1/2 at the uniform mixture") {
  const auto sol = exact_game_value(matching_pennies());
  CHECK(sol.value == doctest::Approx(0.5).epsilon(1e-12));
  std::vector<double> q(2, 0.0);
  for (const auto& t : sol.learner.terms) q[static_cast<std::size_t>(t.hypothesis)] += t.weight;
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.5));
  CHECK(sol.adversary.per_example[0][0] == doctest::Approx(0.5));
}

TEST_CASE("with k = 1 the value is the ERM risk") {
  GameInstance g;
  g.x_domain = {3};
  g.z_domain = {3};
  g.rho = {1, {{2}, {0}, {1}}};
  g.target = Concept::categorical({0, 1, 1}, 2);
  g.dist = Distribution::uniform(3);
  g.sample.examples = {{0, 0}, {1, 1}, {2, 1}, {2, 1}};
  g.hypotheses = HypothesisClass::categorical(2, {{1, 1, 1}, {0, 1, 0}, {1, 0, 1}});
  const auto sol = exact_game_value(g);
  double erm = 1.0;
  for (int h = 0; h < 3; ++h)
    erm = std::min(erm, empirical_risk(MixtureStrategy::pure(h), g.sample, g.rho, g.hypotheses, g.loss));
  CHECK(sol.value == doctest::Approx(erm));
}

TEST_CASE("LP value matches a fine simplex grid") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const GameInstance g = random_tiny(rng, trial % 2 == 1);
    const auto sol = exact_game_value(g);
    CHECK(std::abs(sol.value - grid_value(g, 1e-3)) <= 2e-3);
    CHECK(sol.value <= grid_value(g, 1e-3) + 1e-9);
  }
}

TEST_CASE("solution invariants") {
  Rng rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    const GameInstance g = random_tiny(rng, trial % 3 == 0);
    const auto sol = exact_game_value(g);
    CHECK(sol.learner.is_valid(g.hypotheses.size(), 1e-8));
    const double mean = std::accumulate(sol.slack.begin(), sol.slack.end(), 0.0) / sol.slack.size();
    CHECK(mean == doctest::Approx(sol.value).epsilon(1e-8));
    CHECK(empirical_risk(sol.learner, g.sample, g.rho, g.hypotheses, g.loss) ==
          doctest::Approx(sol.value).epsilon(1e-6));
    CHECK(adversary_guarantee(sol.adversary, g) >= sol.value - 1e-6);
    for (int h = 0; h < g.hypotheses.size(); ++h)
      CHECK(sol.value <= empirical_risk(MixtureStrategy::pure(h), g.sample, g.rho, g.hypotheses, g.loss) + 1e-9);
  }
}

TEST_CASE("value is invariant under permutations") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    GameInstance g = random_tiny(rng, trial % 2 == 0);
    const double v = exact_game_value(g).value;

    GameInstance rows = g;
    std::vector<std::vector<double>> table;
    for (int h = g.hypotheses.size() - 1; h >= 0; --h) {
      const auto r = g.hypotheses.row(h);
      table.emplace_back(r.begin(), r.end());
    }
    if (g.hypotheses.kind() == LabelKind::Real) {
      rows.hypotheses = HypothesisClass::real(table);
    } else {
      std::vector<std::vector<int>> ints;
      for (const auto& r : table) ints.emplace_back(r.begin(), r.end());
      rows.hypotheses = HypothesisClass::categorical(3, ints);
    }
    CHECK(exact_game_value(rows).value == doctest::Approx(v).epsilon(1e-9));

    GameInstance order = g;
    std::reverse(order.sample.examples.begin(), order.sample.examples.end());
    CHECK(exact_game_value(order).value == doctest::Approx(v).epsilon(1e-9));
  }
}

TEST_CASE("best response attains the empirical risk") {
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const GameInstance g = random_tiny(rng, trial % 2 == 0);
    const auto w = rng.dirichlet_uniform(static_cast<std::size_t>(g.hypotheses.size()));
    MixtureStrategy q;
    for (int h = 0; h < g.hypotheses.size(); ++h) q.terms.push_back({h, w[static_cast<std::size_t>(h)]});
    const auto br = best_response_adversary(q, g);
    CHECK(br.value == empirical_risk(q, g.sample, g.rho, g.hypotheses, g.loss));
  }
}

TEST_CASE("best response picks the larger loss and the first of ties") {
  GameInstance g;
  g.x_domain = {1};
  g.z_domain = {3};
  g.rho = {3, {{0, 1, 2}}};
  g.target = Concept::real({0.0});
  g.dist = Distribution::uniform(1);
  g.sample.examples = {{0, 0.0}};
  g.hypotheses = HypothesisClass::real({{0.2, 0.7, 0.7}});
  g.loss = LossKind::L1;
  const auto br = best_response_adversary(MixtureStrategy::pure(0), g);
  CHECK(br.positions == std::vector<int>{1});
  CHECK(br.value == doctest::Approx(0.7));
}

TEST_CASE("size guard") {
  GameInstance g = matching_pennies(1);
  std::vector<std::vector<int>> rows(2'600'000, std::vector<int>{0, 1});
  g.hypotheses = HypothesisClass::categorical(2, rows);
  g.sample.examples.assign(2, Example{0, 0});
  CHECK_THROWS_AS(exact_game_value(g), GuardExceeded);
}

TEST_CASE("simplex on small textbook programs") {
  using namespace advgame::lp;
  // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6  ->  x = 1.6, y = 1.2
  Problem p;
  p.objective = {-1, -1};
  p.constraints = {{{1, 2}, Relation::LessEqual, 4}, {{3, 1}, Relation::LessEqual, 6}};
  auto s = minimize(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(-2.8));
  CHECK(s.x[0] == doctest::Approx(1.6));
  CHECK(s.x[1] == doctest::Approx(1.2));

  // min x + y  s.t. x + y >= 2, x - y = 0  ->  x = y = 1
  Problem q;
  q.objective = {1, 1};
  q.constraints = {{{1, 1}, Relation::GreaterEqual, 2}, {{1, -1}, Relation::Equal, 0}};
  s = minimize(q);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));

  Problem infeasible;
  infeasible.objective = {1};
  infeasible.constraints = {{{1}, Relation::LessEqual, -1}};
  CHECK(minimize(infeasible).status == Status::Infeasible);

  Problem unbounded;
  unbounded.objective = {-1};
  unbounded.constraints = {{{-1}, Relation::LessEqual, 1}};
  CHECK(minimize(unbounded).status == Status::Unbounded);
}
