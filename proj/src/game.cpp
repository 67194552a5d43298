#include "advgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace advgame {

AdversaryStrategy AdversaryStrategy::uniform(const GameInstance& instance) {
  AdversaryStrategy s;
  for (const auto& e : instance.sample.examples) {
    const auto size = instance.rho.at(e.x).size();
    s.per_example.emplace_back(size, 1.0 / static_cast<double>(size));
  }
  return s;
}

bool AdversaryStrategy::is_valid_for(const GameInstance& instance, double tol) const {
  if (static_cast<int>(per_example.size()) != instance.sample.size()) return false;
  for (int i = 0; i < instance.sample.size(); ++i) {
    const auto& p = per_example[static_cast<std::size_t>(i)];
    if (p.size() != instance.rho.at(instance.sample[i].x).size()) return false;
    double total = 0.0;
    for (double v : p) {
      if (v < -tol) return false;
      total += v;
    }
    if (std::abs(total - 1.0) > tol) return false;
  }
  return true;
}

std::vector<WeightedPair> dp_distribution(const AdversaryStrategy& strategy,
                                          const GameInstance& instance) {
  if (!strategy.is_valid_for(instance)) {
    throw std::invalid_argument("dp_distribution: strategy does not fit the instance");
  }
  const double unit = 1.0 / static_cast<double>(instance.sample.size());
  std::map<std::pair<int, double>, double> merged;
  for (int i = 0; i < instance.sample.size(); ++i) {
    const Example& e = instance.sample[i];
    const auto& list = instance.rho.at(e.x);
    const auto& p = strategy.per_example[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < list.size(); ++j) merged[{list[j], e.y}] += unit * p[j];
  }
  std::vector<WeightedPair> out;
  out.reserve(merged.size());
  for (const auto& [key, w] : merged) out.push_back({key.first, key.second, w});
  return out;
}

double weighted_loss(const HypothesisClass& cls, int h, std::span<const WeightedPair> pairs,
                     LossKind kind) {
  double total = 0.0;
  for (const auto& p : pairs) total += p.weight * point_loss(cls, h, p.z, p.y, kind);
  return total;
}

int erm_oracle(const HypothesisClass& cls, std::span<const WeightedPair> pairs, LossKind kind) {
  if (pairs.empty()) throw std::invalid_argument("erm_oracle: empty pair list");
  if (cls.size() < 1) throw std::invalid_argument("erm_oracle: empty hypothesis class");
  int best = 0;
  double best_loss = weighted_loss(cls, 0, pairs, kind);
  for (int h = 1; h < cls.size(); ++h) {
    const double loss = weighted_loss(cls, h, pairs, kind);
    if (loss < best_loss) {
      best = h;
      best_loss = loss;
    }
  }
  return best;
}

std::int64_t horizon_for(int n, int k, double epsilon) {
  if (n < 1 || k < 1 || !(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("horizon_for: need n >= 1, k >= 1, epsilon in (0, 1]");
  }
  if (k == 1) return 1;
  const double t = 4.0 * n * std::log(static_cast<double>(std::max(k, 2))) / (epsilon * epsilon);
  return static_cast<std::int64_t>(std::ceil(t));
}

double default_eta(int k, std::int64_t rounds) {
  if (rounds < 1) throw std::invalid_argument("default_eta: rounds must be >= 1");
  return std::min(0.5, std::sqrt(std::log(static_cast<double>(std::max(k, 2))) /
                                 static_cast<double>(rounds)));
}

MwTrainer::MwTrainer(const GameInstance& instance, double eta)
    : instance_(instance), eta_(eta), groups_(group_sample(instance.sample)) {
  require_valid(instance);
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("MwTrainer: eta must be in (0, 1]");

  std::map<std::pair<int, double>, int> pair_index;
  for (const auto& g : groups_) {
    for (int z : instance.rho.at(g.example.x)) pair_index.try_emplace({z, g.example.y}, 0);
  }
  int next = 0;
  for (auto& [key, idx] : pair_index) {
    idx = next++;
    pairs_.push_back({key.first, key.second, 0.0});
  }
  for (const auto& g : groups_) {
    std::vector<int> row;
    for (int z : instance.rho.at(g.example.x)) row.push_back(pair_index.at({z, g.example.y}));
    pair_of_.push_back(std::move(row));
    const auto size = instance.rho.at(g.example.x).size();
    log_weights_.emplace_back(size, 0.0);
    strategy_sum_.emplace_back(size, 0.0);
  }
  const auto np = pairs_.size();
  loss_table_.resize(static_cast<std::size_t>(instance.hypotheses.size()) * np);
  for (int h = 0; h < instance.hypotheses.size(); ++h) {
    for (std::size_t p = 0; p < np; ++p) {
      loss_table_[static_cast<std::size_t>(h) * np + p] =
          point_loss(instance.hypotheses, h, pairs_[p].z, pairs_[p].y, instance.loss);
    }
  }
  refresh_strategy();
}

void MwTrainer::refresh_strategy() {
  strategy_.resize(log_weights_.size());
  for (std::size_t g = 0; g < log_weights_.size(); ++g) {
    const auto& lw = log_weights_[g];
    const double top = *std::max_element(lw.begin(), lw.end());
    auto& p = strategy_[g];
    p.resize(lw.size());
    double total = 0.0;
    for (std::size_t j = 0; j < lw.size(); ++j) {
      p[j] = std::exp(lw[j] - top);
      total += p[j];
    }
    for (auto& v : p) v /= total;
  }
}

int MwTrainer::step() {
  ++round_;
  for (auto& p : pairs_) p.weight = 0.0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& p = strategy_[g];
    for (std::size_t j = 0; j < p.size(); ++j) {
      pairs_[static_cast<std::size_t>(pair_of_[g][j])].weight += groups_[g].weight * p[j];
    }
  }

  const auto np = pairs_.size();
  int best = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  for (int h = 0; h < instance_.hypotheses.size(); ++h) {
    const double* row = loss_table_.data() + static_cast<std::size_t>(h) * np;
    double total = 0.0;
    for (std::size_t p = 0; p < np; ++p) total += pairs_[p].weight * row[p];
    if (total < best_loss) {
      best = h;
      best_loss = total;
    }
  }

  const double* row = loss_table_.data() + static_cast<std::size_t>(best) * np;
  double mass = 0.0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    auto& lw = log_weights_[g];
    for (std::size_t j = 0; j < lw.size(); ++j) {
      strategy_sum_[g][j] += strategy_[g][j];
      lw[j] += std::log1p(eta_ * row[pair_of_[g][j]]);
    }
    const double top = *std::max_element(lw.begin(), lw.end());
    double total = 0.0;
    for (double v : lw) total += std::exp(v - top);
    mass += top + std::log(total);
  }
  refresh_strategy();
  diagnostics_.push_back({round_, best, best_loss, mass});
  return best;
}

AdversaryStrategy MwTrainer::expand(const std::vector<std::vector<double>>& grouped) const {
  AdversaryStrategy s;
  s.per_example.resize(static_cast<std::size_t>(instance_.sample.size()));
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (int member : groups_[g].members) s.per_example[static_cast<std::size_t>(member)] = grouped[g];
  }
  return s;
}

AdversaryStrategy MwTrainer::current_strategy() const { return expand(strategy_); }

std::vector<std::vector<double>> MwTrainer::weights() const {
  auto raw = log_weights_;
  for (auto& row : raw) {
    for (auto& v : row) v = std::exp(v);
  }
  return expand(raw).per_example;
}

AdversaryStrategy MwTrainer::average_strategy() const {
  if (round_ == 0) return current_strategy();
  auto avg = strategy_sum_;
  for (auto& row : avg) {
    double total = 0.0;
    for (auto& v : row) {
      v /= static_cast<double>(round_);
      total += v;
    }
    // Remove accumulated rounding so the average is exactly on the simplex.
    for (auto& v : row) v /= total;
  }
  return expand(avg);
}

TrainOutput mw_train(const GameInstance& instance, std::int64_t rounds, double eta) {
  if (rounds < 1) throw std::invalid_argument("mw_train: T must be >= 1");
  MwTrainer trainer(instance, eta);
  TrainOutput out;
  out.eta = eta;
  out.hypotheses.reserve(static_cast<std::size_t>(rounds));
  for (std::int64_t t = 0; t < rounds; ++t) out.hypotheses.push_back(trainer.step());
  out.average_adversary = trainer.average_strategy();
  out.rounds = trainer.diagnostics();
  return out;
}

double learner_guarantee(const TrainOutput& output, const GameInstance& instance) {
  const auto mixture = MixtureStrategy::uniform(output.hypotheses);
  return empirical_risk(mixture, instance.sample, instance.rho, instance.hypotheses, instance.loss);
}

double adversary_guarantee(const AdversaryStrategy& strategy, const GameInstance& instance) {
  const auto pairs = dp_distribution(strategy, instance);
  double best = std::numeric_limits<double>::infinity();
  for (int h = 0; h < instance.hypotheses.size(); ++h) {
    best = std::min(best, weighted_loss(instance.hypotheses, h, pairs, instance.loss));
  }
  return best;
}

}  // namespace advgame
