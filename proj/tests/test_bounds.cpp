#include <cmath>
#include <stdexcept>

#include "advgame/bounds.hpp"
#include "advgame/dims.hpp"
#include "advgame/errors.hpp"
#include "advgame/random.hpp"
#include "doctest.h"

using namespace advgame;

namespace {

BoundConfig unit_config() {
  BoundConfig cfg;
  cfg.epsilon = 1.0;
  cfg.delta = std::exp(-1.0);
  cfg.k = 1;
  cfg.vc = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("m0 arithmetic") {
  auto cfg = unit_config();
  CHECK(m0_binary(cfg) == 2);

  cfg.epsilon = 0.1;
  cfg.delta = 0.05;
  cfg.k = 3;
  cfg.vc = 4.0;
  const auto base = m0_binary(cfg);
  const double exact = (3 * std::log(3.0) * 4.0 + std::log(20.0)) / 0.01;
  CHECK(base == static_cast<std::int64_t>(std::ceil(exact)));
  cfg.epsilon = 0.05;
  CHECK(std::abs(static_cast<double>(m0_binary(cfg)) - 4.0 * exact) <= 4.0);

  cfg.epsilon = 0.1;
  cfg.vc = 0.0;
  CHECK(m0_binary(cfg) == static_cast<std::int64_t>(std::ceil(std::log(20.0) / 0.01)));
}

TEST_CASE("m0 is monotone in every argument") {
  BoundConfig cfg;
  cfg.vc = 3.0;
  const auto base = m0_binary(cfg);
  auto c = cfg;
  c.epsilon = 0.2;
  CHECK(m0_binary(c) <= base);
  c = cfg;
  c.delta = 0.2;
  CHECK(m0_binary(c) <= base);
  c = cfg;
  c.k = 4;
  CHECK(m0_binary(c) >= base);
  c = cfg;
  c.vc = 6.0;
  CHECK(m0_binary(c) >= base);
}

TEST_CASE("multiclass routes") {
  BoundConfig cfg;
  cfg.k = 2;
  cfg.vc = 3.0;
  cfg.graph_dim = 3.0;
  CHECK(m0_multiclass(cfg) == m0_binary(cfg));
  CHECK(natarajan_to_graph(2.0, 2) == doctest::Approx(4.67 * 2.0));
  CHECK(natarajan_to_graph(1.0, 8) == doctest::Approx(4.67 * 3.0));
  cfg.natarajan_dim = 1.0;
  cfg.num_labels = 2;
  CHECK(m0_multiclass_natarajan(cfg) == m0_formula(cfg, 4.67));
  cfg.graph_dim.reset();
  CHECK_THROWS_AS(m0_multiclass(cfg), std::invalid_argument);
}

TEST_CASE("zero profile reduces the Dudley bound to 4 alpha") {
  BoundConfig cfg;
  cfg.fat = FatProfile::zero();
  for (double alpha : {0.0, 0.1, 0.3}) CHECK(dudley_rademacher_bound(cfg, 100, alpha) == doctest::Approx(4 * alpha));
  CHECK(m0_regression(cfg, LossKind::L1) == m0_formula(cfg, 0.0));
}

TEST_CASE("entropy integral matches the closed form") {
  const auto profile = FatProfile::power(1.0, 2.0);
  for (double alpha : {0.01, 0.05, 0.1, 0.25, 0.5}) {
    CHECK(std::abs(entropy_integral(profile, 1.0, alpha) - hyperplane_integral_closed_form(alpha)) <= 1e-6);
  }
  CHECK(hyperplane_integral_closed_form(0.25) == doctest::Approx(1.6143518).epsilon(1e-7));
}

TEST_CASE("divergent profile at alpha = 0") {
  BoundConfig cfg;
  cfg.fat = FatProfile::power(1.0, 2.0);
  CHECK_THROWS_AS(entropy_integral(*cfg.fat, 1.0, 0.0), DivergentIntegral);
  CHECK_THROWS_AS(m0_regression(cfg, LossKind::L1), DivergentIntegral);
  CHECK_NOTHROW(dudley_rademacher_bound(cfg, 1000, 0.05));
}

TEST_CASE("convergent power profile at alpha = 0") {
  // With fat = gamma^-1/2 the integrand is integrable at zero; compare the
  // dyadic sum with a substitution gamma = u^4 that removes the singularity.
  const auto profile = FatProfile::power(1.0, 0.5);
  const double value = entropy_integral(profile, 1.0, 0.0);
  const int steps = 200000;
  double reference = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double u = (i + 0.5) / steps;
    const double g = u * u * u * u;
    reference += std::sqrt(std::pow(g, -0.5) * std::log(2.0 / g)) * 4 * u * u * u / steps;
  }
  CHECK(value == doctest::Approx(reference).epsilon(1e-5));
}

TEST_CASE("L2 uses the profile at half scale") {
  BoundConfig cfg;
  cfg.fat = FatProfile::power(1.0, 0.5);
  CHECK(regression_complexity(cfg, LossKind::L2) > regression_complexity(cfg, LossKind::L1));
  CHECK(m0_regression(cfg, LossKind::L2) >= m0_regression(cfg, LossKind::L1));
  CHECK_THROWS_AS(regression_complexity(cfg, LossKind::ZeroOne), std::invalid_argument);
}

TEST_CASE("Dudley bound is non-increasing in n") {
  BoundConfig cfg;
  cfg.fat = FatProfile::power(2.0, 1.0);
  double last = 1e300;
  for (std::int64_t n : {10, 100, 1000, 10000}) {
    const double b = dudley_rademacher_bound(cfg, n, 0.05);
    CHECK(b <= last);
    last = b;
  }
}

TEST_CASE("profile of a finite class agrees with fat_dim") {
  Rng rng(21);
  std::vector<std::vector<double>> rows(6, std::vector<double>(4));
  for (auto& r : rows)
    for (auto& v : r) v = rng.uniform();
  const auto cls = PatternClass::real(rows);
  const auto profile = FatProfile::of_class(cls);
  for (int i = 1; i <= 200; ++i) {
    const double g = i / 200.0 * 0.6;
    CHECK(profile(g) == fat_dim(cls, g).dimension);
  }
}

TEST_CASE("end-to-end regression m0 from a finite class") {
  Rng rng(22);
  std::vector<std::vector<double>> rows(6, std::vector<double>(4));
  for (auto& r : rows)
    for (auto& v : r) v = rng.uniform();
  const auto cls = PatternClass::real(rows);
  BoundConfig cfg;
  cfg.k = 2;
  cfg.fat = FatProfile::of_class(cls);

  // Midpoint rule with fat_dim evaluated directly.
  const int steps = 20000;
  double hand = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double g = (i + 0.5) / steps;
    hand += std::sqrt(fat_dim(cls, g).dimension * std::log(2.0 / g)) / steps;
  }
  const double integral = regression_complexity(cfg, LossKind::L1);
  CHECK(integral == doctest::Approx(hand).epsilon(1e-3));
  const double expected = (2 * std::log(2.0) * hand + std::log(20.0)) / 0.01;
  CHECK(std::abs(static_cast<double>(m0_regression(cfg, LossKind::L1)) - expected) <= 2.0);
}

TEST_CASE("hyperplane complexity") {
  CHECK(hyperplane_rademacher(4, 1e6) < hyperplane_rademacher(4, 1e3));
  const double ratio = hyperplane_rademacher(4, 4e4) / hyperplane_rademacher(4, 1e4);
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.65);
  CHECK(hyperplane_rademacher(8, 1e4) > hyperplane_rademacher(2, 1e4));

  const auto hc = hyperplane_complexity(0.1, 0.05, 2, 1e4);
  CHECK(hc.alpha == doctest::Approx(0.01));
  CHECK(hc.rademacher_bound == doctest::Approx(hyperplane_rademacher(2, 1e4)));
  const auto gap = [](double s) {
    return 2 * hyperplane_rademacher(2, s) + 3 * std::sqrt(std::log(2 / 0.05) / (2 * s));
  };
  CHECK(gap(static_cast<double>(hc.m0)) <= 0.1);
  CHECK(gap(static_cast<double>(hc.m0 - 1)) > 0.1);
  const double order = (2 * std::pow(std::log(2 / 0.1), 2) + std::log(20.0)) / 0.01;
  CHECK(hc.m0_order == static_cast<std::int64_t>(std::ceil(order)));
}

TEST_CASE("profile validation") {
  CHECK_THROWS(FatProfile::power(-1.0, 1.0));
  CHECK_THROWS(FatProfile::step({{0.1, 1.0}, {0.2, 2.0}}));
  const auto s = FatProfile::step({{0.1, 3.0}, {0.3, 1.0}});
  CHECK(s(0.05) == 3.0);
  CHECK(s(0.1) == 3.0);
  CHECK(s(0.2) == 1.0);
  CHECK(s(0.31) == 0.0);
}
