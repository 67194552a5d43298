#include "advgame/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "advgame/errors.hpp"
#include "advgame/simplex.hpp"

namespace advgame {

ExactSolution exact_game_value(const GameInstance& instance) {
  require_valid(instance);
  const auto& cls = instance.hypotheses;
  const std::size_t num_h = static_cast<std::size_t>(cls.size());
  std::size_t corrupted = 0;
  for (const auto& e : instance.sample.examples) corrupted += instance.rho.at(e.x).size();
  if (num_h * corrupted > kExactSizeGuard) {
    throw GuardExceeded("exact_game_value: |H| * sum |rho(x)| exceeds the dense LP guard");
  }

  // Identical sample examples share one slack variable weighted by multiplicity.
  const auto groups = group_sample(instance.sample);
  const std::size_t num_g = groups.size();
  const std::size_t num_vars = num_h + num_g;

  lp::Problem problem;
  problem.objective.assign(num_vars, 0.0);
  for (std::size_t g = 0; g < num_g; ++g) problem.objective[num_h + g] = groups[g].weight;

  struct RowKey {
    std::size_t group;
    std::size_t position;
  };
  std::vector<RowKey> keys;
  for (std::size_t g = 0; g < num_g; ++g) {
    const Example& e = groups[g].example;
    const auto& list = instance.rho.at(e.x);
    for (std::size_t j = 0; j < list.size(); ++j) {
      lp::Constraint row;
      row.coefficients.assign(num_vars, 0.0);
      for (std::size_t h = 0; h < num_h; ++h) {
        row.coefficients[h] = point_loss(cls, static_cast<int>(h), list[j], e.y, instance.loss);
      }
      row.coefficients[num_h + g] = -1.0;
      row.relation = lp::Relation::LessEqual;
      row.rhs = 0.0;
      problem.constraints.push_back(std::move(row));
      keys.push_back({g, j});
    }
  }
  lp::Constraint simplex_row;
  simplex_row.coefficients.assign(num_vars, 0.0);
  for (std::size_t h = 0; h < num_h; ++h) simplex_row.coefficients[h] = 1.0;
  simplex_row.relation = lp::Relation::Equal;
  simplex_row.rhs = 1.0;
  problem.constraints.push_back(std::move(simplex_row));

  const lp::Solution sol = lp::minimize(problem);
  if (sol.status != lp::Status::Optimal) {
    throw InternalError("exact_game_value: LP did not reach an optimum");
  }

  ExactSolution out;
  out.iterations = sol.iterations;
  double mass = 0.0;
  for (std::size_t h = 0; h < num_h; ++h) mass += sol.x[h];
  if (std::abs(mass - 1.0) > 1e-8) throw InternalError("exact_game_value: Q* off the simplex");
  for (std::size_t h = 0; h < num_h; ++h) {
    const double q = sol.x[h] / mass;
    if (q > 0.0) out.learner.terms.push_back({static_cast<int>(h), q});
  }

  out.slack.assign(static_cast<std::size_t>(instance.sample.size()), 0.0);
  for (std::size_t g = 0; g < num_g; ++g) {
    for (int member : groups[g].members) out.slack[static_cast<std::size_t>(member)] = sol.x[num_h + g];
  }
  out.value = sol.objective;

  // Adversary from the multipliers of the <= rows (lambda = -y >= 0),
  // normalized per example; an example with no binding mass plays uniformly.
  std::vector<std::vector<double>> grouped(num_g);
  for (std::size_t g = 0; g < num_g; ++g) {
    grouped[g].assign(instance.rho.at(groups[g].example.x).size(), 0.0);
  }
  for (std::size_t r = 0; r < keys.size(); ++r) {
    grouped[keys[r].group][keys[r].position] = std::max(0.0, -sol.duals[r]);
  }
  for (auto& p : grouped) {
    double total = 0.0;
    for (double v : p) total += v;
    for (auto& v : p) v = total > 0.0 ? v / total : 1.0 / static_cast<double>(p.size());
  }
  out.adversary.per_example.resize(static_cast<std::size_t>(instance.sample.size()));
  for (std::size_t g = 0; g < num_g; ++g) {
    for (int member : groups[g].members) out.adversary.per_example[static_cast<std::size_t>(member)] = grouped[g];
  }

  // Certification: the learner's mixture attains v, and the recovered
  // adversary holds every pure hypothesis to at least v.
  double mean_slack = 0.0;
  for (double t : out.slack) mean_slack += t;
  mean_slack /= static_cast<double>(out.slack.size());
  const double learner_side =
      empirical_risk(out.learner, instance.sample, instance.rho, cls, instance.loss);
  const double adversary_side = adversary_guarantee(out.adversary, instance);
  if (std::abs(mean_slack - out.value) > 1e-8 ||
      std::abs(learner_side - out.value) > kCertificationTolerance ||
      adversary_side < out.value - kCertificationTolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "exact_game_value: certification failed (v=" << out.value << ", learner=" << learner_side
       << ", adversary=" << adversary_side << ")";
    throw InternalError(os.str());
  }
  return out;
}

BestResponse best_response_adversary(const MixtureStrategy& mixture, const GameInstance& instance) {
  if (!mixture.is_valid(instance.hypotheses.size())) {
    throw std::invalid_argument("best_response_adversary: invalid mixture");
  }
  BestResponse out;
  const double unit = 1.0 / static_cast<double>(instance.sample.size());
  for (const auto& e : instance.sample.examples) {
    const auto& list = instance.rho.at(e.x);
    int best = 0;
    double best_loss = -1.0;
    for (std::size_t j = 0; j < list.size(); ++j) {
      const double l = mixture_loss(instance.hypotheses, mixture, list[j], e.y, instance.loss);
      if (l > best_loss) {
        best_loss = l;
        best = static_cast<int>(j);
      }
    }
    out.positions.push_back(best);
    out.value += unit * best_loss;
  }
  return out;
}

}  // namespace advgame
