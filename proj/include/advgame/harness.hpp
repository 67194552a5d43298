#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advgame/instance.hpp"

namespace advgame {

enum class Scenario { RandomBinary, RandomMulticlass, RandomRegression, Thresholds, MatchingPennies };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

struct ExperimentConfig {
  Scenario scenario = Scenario::RandomBinary;
  int x_size = 8;
  int z_size = 8;
  int num_hypotheses = 6;
  int k = 2;
  int num_labels = 2;
  LossKind loss = LossKind::ZeroOne;  // only l1 / l2 matter, for regression
  double epsilon = 0.1;
  double delta = 0.05;
  std::vector<int> sample_sizes{20};
  int trials = 10;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> rounds;  // overrides horizon_for; rows then skip the eps check
  int threads = 0;                     // 0: hardware concurrency
  std::string output;                  // CSV path; summary goes next to it

  void check() const;
};

// Seed of everything drawn for one trial.
std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial);

// The trial's population (domains, rho, target, distribution, class) depends
// only on (seed, trial); the sample of size m is drawn from its own stream.
GameInstance generate_instance(const ExperimentConfig& cfg, int trial, int m);
GameInstance generate_instance(const ExperimentConfig& cfg, int trial);

// Two corruptions of a single point, two hypotheses each wrong on one of
// them: value 1/2.
GameInstance matching_pennies(int m = 1);

struct ExperimentRow {
  int trial = 0;
  int m = 0;
  double value = 0.0;
  double learner = 0.0;
  double adversary = 0.0;
  double true_risk = 0.0;
  double empirical_risk = 0.0;
  double gap = 0.0;  // |true_risk - empirical_risk| of the trained mixture
  std::int64_t rounds = 0;
  bool eps_checked = false;
  double wall_ms = 0.0;
  std::string error;

  bool eps_ok(double epsilon) const;
  bool ordering_ok(double tol = 1e-6) const;
};

struct MedianGap {
  int m = 0;
  double median = 0.0;
};

struct ExperimentSummary {
  int rows = 0;
  int errors = 0;
  int eps_checks = 0;
  int eps_passes = 0;
  int ordering_violations = 0;
  std::vector<MedianGap> median_gaps;
  std::optional<double> decay_slope;  // least squares of log median gap on log m

  double eps_pass_rate() const;
  bool ok() const;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // trial-major, then by m in config order
  ExperimentSummary summary;
};

ExperimentRow run_trial(const ExperimentConfig& cfg, int trial, int m);
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentSummary summarize(const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows);

// Least-squares slope of y on x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

// CSV persistence. Columns:
//   trial,m,value,learner_guarantee,adversary_guarantee,true_risk,
//   empirical_risk,gap,rounds,eps_checked,wall_ms,error
std::string csv_header();
std::string to_csv(const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> from_csv(const std::string& text);

}  // namespace advgame
