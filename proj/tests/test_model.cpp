#include <algorithm>
#include <cmath>

#include "advgame/instance.hpp"
#include "advgame/random.hpp"
#include "doctest.h"

using namespace advgame;

namespace {

GameInstance small_instance() {
  GameInstance g;
  g.x_domain = {3};
  g.z_domain = {4};
  g.rho = {2, {{0, 1}, {2}, {3, 0}}};
  g.target = Concept::categorical({0, 1, 1}, 2);
  g.dist = Distribution::uniform(3);
  g.sample.examples = {{0, 0}, {2, 1}, {0, 0}};
  g.hypotheses = HypothesisClass::categorical(2, {{0, 0, 1, 1}, {1, 1, 0, 0}});
  return g;
}

bool mentions(const std::vector<std::string>& msgs, const std::string& needle) {
  return std::any_of(msgs.begin(), msgs.end(),
                     [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("draw_sample from a point mass repeats that example") {
  const auto target = Concept::categorical({0, 1, 0, 1, 0}, 2);
  const auto s = draw_sample(Distribution::point_mass(5, 3), target, 5, 42);
  REQUIRE(s.size() == 5);
  for (const auto& e : s.examples) {
    CHECK(e.x == 3);
    CHECK(e.y == 1.0);
  }
}

TEST_CASE("draw_sample frequencies under the uniform distribution") {
  const auto target = Concept::categorical({0, 1}, 2);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto s = draw_sample(Distribution::uniform(2), target, 10000, seed);
    const auto zeros = std::count_if(s.examples.begin(), s.examples.end(),
                                     [](const Example& e) { return e.x == 0; });
    CHECK(zeros >= 4500);
    CHECK(zeros <= 5500);
  }
}

TEST_CASE("draw_sample is a pure function of its inputs") {
  const auto target = Concept::real({0.1, 0.5, 0.9});
  const auto dist = Distribution::normalize({1, 2, 3});
  CHECK(draw_sample(dist, target, 50, 7) == draw_sample(dist, target, 50, 7));
  CHECK_FALSE(draw_sample(dist, target, 50, 7) == draw_sample(dist, target, 50, 8));
}

TEST_CASE("sample labels agree with the concept") {
  Rng rng(5);
  std::vector<int> labels(12);
  for (auto& y : labels) y = static_cast<int>(rng.uniform_int(0, 3));
  const auto target = Concept::categorical(labels, 4);
  const auto s = draw_sample(Distribution::uniform(12), target, 200, 3);
  for (const auto& e : s.examples) CHECK(e.y == target(e.x));
}

TEST_CASE("validate_instance accepts a well-formed instance") {
  CHECK(validate_instance(small_instance()).empty());
  CHECK_NOTHROW(require_valid(small_instance()));
}

TEST_CASE("validate_instance names an oversized corruption list") {
  auto g = small_instance();
  g.rho.lists[1] = {0, 1, 2};
  const auto msgs = validate_instance(g);
  CHECK(mentions(msgs, "rho(x=1)"));
  CHECK(mentions(msgs, "exceeds k=2"));
  CHECK_THROWS_AS(require_valid(g), std::invalid_argument);
}

TEST_CASE("validate_instance flags an unnormalized distribution") {
  auto g = small_instance();
  g.dist.weights = {0.3, 0.3, 0.3};
  CHECK(mentions(validate_instance(g), "distribution not normalized"));
}

TEST_CASE("validate_instance reports every violation at once") {
  auto g = small_instance();
  g.rho.lists[0] = {};
  g.rho.lists[2] = {9, 9};
  g.target.labels[1] = 5;
  g.sample.examples.push_back({7, 0});
  const auto msgs = validate_instance(g);
  CHECK(mentions(msgs, "rho(x=0) is empty"));
  CHECK(mentions(msgs, "outside Z"));
  CHECK(mentions(msgs, "duplicate"));
  CHECK(mentions(msgs, "concept label at x=1"));
  CHECK(msgs.size() >= 5);
}

TEST_CASE("distribution helpers") {
  CHECK(Distribution::uniform(4).is_normalized());
  CHECK(Distribution::normalize({2, 6}).weights == std::vector<double>{0.25, 0.75});
  CHECK_THROWS_AS(Distribution::normalize({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::point_mass(3, 3), std::invalid_argument);
}

TEST_CASE("real concepts are clamped to the unit interval") {
  const auto c = Concept::real({-0.5, 0.25, 1.5});
  CHECK(c.labels == std::vector<double>{0.0, 0.25, 1.0});
}

TEST_CASE("group_sample merges identical examples in first-appearance order") {
  const auto groups = group_sample(small_instance().sample);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].example == Example{0, 0});
  CHECK(groups[0].members == std::vector<int>{0, 2});
  CHECK(groups[0].weight == doctest::Approx(2.0 / 3.0));
  CHECK(groups[1].members == std::vector<int>{1});
}

TEST_CASE("rng transforms stay in range and are reproducible") {
  Rng a(123), b(123);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
  Rng r(9);
  const auto p = r.dirichlet_uniform(5);
  double total = 0;
  for (double v : p) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  auto picks = r.sample_without_replacement(10, 10);
  std::sort(picks.begin(), picks.end());
  for (int i = 0; i < 10; ++i) CHECK(picks[static_cast<std::size_t>(i)] == i);
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
}
