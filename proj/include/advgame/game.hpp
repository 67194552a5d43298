#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "advgame/instance.hpp"

namespace advgame {

// Adversary's mixed strategy: for each sample example (in sample order) a
// distribution over the positions of rho(x).
struct AdversaryStrategy {
  std::vector<std::vector<double>> per_example;

  static AdversaryStrategy uniform(const GameInstance& instance);
  bool is_valid_for(const GameInstance& instance, double tol = kSimplexTolerance) const;
};

// One atom of the induced distribution over corrupted (z, y) pairs.
struct WeightedPair {
  int z = 0;
  double y = 0.0;
  double weight = 0.0;
};

// D^P with D the empirical distribution of the sample. Identical (z, y)
// pairs are merged; the result is sorted by (z, y).
std::vector<WeightedPair> dp_distribution(const AdversaryStrategy& strategy,
                                          const GameInstance& instance);

double weighted_loss(const HypothesisClass& cls, int h, std::span<const WeightedPair> pairs,
                     LossKind kind);

// argmin_h of the weighted loss; ties go to the smallest index.
int erm_oracle(const HypothesisClass& cls, std::span<const WeightedPair> pairs, LossKind kind);

// Rounds sufficient for epsilon-optimal strategies: ceil(4 n ln(max(k,2)) / eps^2),
// and 1 when k = 1.
std::int64_t horizon_for(int n, int k, double epsilon);

// min(1/2, sqrt(ln(max(k,2)) / T)).
double default_eta(int k, std::int64_t rounds);

struct RoundDiagnostics {
  std::int64_t round = 0;
  int hypothesis = 0;
  double erm_loss = 0.0;         // D^{P^t}-weighted loss of h_t
  double log_weight_mass = 0.0;  // sum over examples of log(sum of weights)
};

struct TrainOutput {
  std::vector<int> hypotheses;  // h_1 .. h_T
  AdversaryStrategy average_adversary;
  std::vector<RoundDiagnostics> rounds;
  double eta = 0.0;
};

// Incremental form of the multiplicative-weights game. Weights start at 1
// and are multiplied by (1 + eta * loss) each round. They are held as
// logarithms so they never overflow, and identical sample examples share one
// weight vector (their trajectories coincide).
class MwTrainer {
 public:
  MwTrainer(const GameInstance& instance, double eta);

  // Plays one round and returns h_t.
  int step();

  std::int64_t rounds_played() const { return round_; }
  // The strategy P^t the next round will respond to.
  AdversaryStrategy current_strategy() const;
  // Raw (unnormalized) weights w_t per sample example.
  std::vector<std::vector<double>> weights() const;
  // (1/t) sum of the strategies played so far.
  AdversaryStrategy average_strategy() const;
  const std::vector<RoundDiagnostics>& diagnostics() const { return diagnostics_; }

 private:
  AdversaryStrategy expand(const std::vector<std::vector<double>>& grouped) const;
  void refresh_strategy();

  const GameInstance& instance_;
  double eta_;
  std::vector<ExampleGroup> groups_;
  std::vector<WeightedPair> pairs_;
  std::vector<std::vector<int>> pair_of_;      // group -> position -> pair index
  std::vector<double> loss_table_;             // h * pairs + pair
  std::vector<std::vector<double>> log_weights_;
  std::vector<std::vector<double>> strategy_;
  std::vector<std::vector<double>> strategy_sum_;
  std::vector<RoundDiagnostics> diagnostics_;
  std::int64_t round_ = 0;
};

// Runs T rounds. Deterministic in its arguments.
TrainOutput mw_train(const GameInstance& instance, std::int64_t rounds, double eta);

// Worst-case empirical risk of the uniform mixture over h_1 .. h_T.
double learner_guarantee(const TrainOutput& output, const GameInstance& instance);

// min_h of the D^P-weighted loss: what P guarantees the adversary.
double adversary_guarantee(const AdversaryStrategy& strategy, const GameInstance& instance);

}  // namespace advgame
