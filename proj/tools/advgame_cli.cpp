#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "advgame/bounds.hpp"
#include "advgame/dims.hpp"
#include "advgame/errors.hpp"
#include "advgame/exact.hpp"
#include "advgame/game.hpp"
#include "advgame/harness.hpp"
#include "advgame/json_io.hpp"
#include "advgame/rademacher.hpp"

using namespace advgame;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out, j);
}

struct TrainArgs {
  std::string instance, out;
  double epsilon = 0.1;
  std::optional<std::int64_t> rounds;
  std::optional<double> eta;
  bool check = false;
  bool no_rounds = false;
};

int run_train(const TrainArgs& a) {
  const GameInstance g = instance_from_json(read_json_file(a.instance));
  require_valid(g);
  const std::int64_t horizon = horizon_for(g.sample.size(), g.budget(), a.epsilon);
  const std::int64_t T = a.rounds.value_or(horizon);
  const double eta = a.eta.value_or(default_eta(g.budget(), T));
  const TrainOutput out = mw_train(g, T, eta);
  Json j = to_json(out, g, !a.no_rounds);
  j["epsilon"] = a.epsilon;
  j["horizon"] = horizon;
  int code = kOk;
  if (a.check) {
    const double v = exact_game_value(g).value;
    const bool ok = j["learner_guarantee"].get<double>() - v <= a.epsilon &&
                    v - j["adversary_guarantee"].get<double>() <= a.epsilon;
    j["value"] = v;
    j["eps_optimal"] = ok;
    if (!ok) code = kCheckFailed;
  }
  emit(j, a.out);
  return code;
}

int run_exact(const std::string& instance, const std::string& out) {
  const GameInstance g = instance_from_json(read_json_file(instance));
  require_valid(g);
  emit(to_json(exact_game_value(g), g.hypotheses.size()), out);
  return kOk;
}

int run_dims(const std::string& path, const std::string& measure_name, double gamma,
             const std::string& out) {
  const PatternClass cls = pattern_class_from_json(read_json_file(path));
  Measure measure;
  DimensionReport report;
  if (measure_name == "vc") {
    measure = Measure::VC;
    report = vc_dim(cls);
  } else if (measure_name == "graph") {
    measure = Measure::Graph;
    report = graph_dim(cls);
  } else if (measure_name == "natarajan") {
    measure = Measure::Natarajan;
    report = natarajan_dim(cls);
  } else if (measure_name == "fat") {
    measure = Measure::Fat;
    report = fat_dim(cls, gamma);
  } else {
    measure = Measure::FatZero;
    report = fat_zero_dim(cls, gamma);
  }
  const bool verified = verify_witness(cls, report, measure, gamma);
  Json j = to_json(report);
  j["measure"] = measure_name;
  if (measure == Measure::Fat || measure == Measure::FatZero) j["gamma"] = gamma;
  j["verified"] = verified;
  emit(j, out);
  return verified ? kOk : kCheckFailed;
}

int run_rademacher(const std::string& path, bool exact, std::optional<std::uint64_t> mc,
                   std::uint64_t seed, const std::string& out) {
  const PatternClass cls = pattern_class_from_json(read_json_file(path));
  const RademacherEstimate est =
      mc && !exact ? rademacher_mc(cls, *mc, seed) : rademacher_exact(cls);
  Json j = to_json(est);
  if (cls.kind() == PatternKind::Binary) j["note"] = "binary cells read as -1/+1";
  emit(j, out);
  return kOk;
}

int run_bounds(const std::string& path, const std::string& out) {
  const Json raw = read_json_file(path);
  const BoundConfig cfg = bound_config_from_json(raw);
  Json j = Json::object();
  if (cfg.vc) j["m0_binary"] = m0_binary(cfg);
  if (cfg.graph_dim) j["m0_multiclass"] = m0_multiclass(cfg);
  if (cfg.natarajan_dim) {
    j["graph_from_natarajan"] = natarajan_to_graph(*cfg.natarajan_dim, cfg.num_labels);
    j["m0_multiclass_natarajan"] = m0_multiclass_natarajan(cfg);
  }
  if (cfg.fat) {
    j["fat_profile"] = to_json(*cfg.fat);
    if (raw.contains("n")) {
      const double alpha = raw.value("alpha", 0.0);
      j["dudley_bound"] = dudley_rademacher_bound(cfg, raw.at("n").get<std::int64_t>(), alpha);
      j["dudley_alpha"] = alpha;
    }
    for (LossKind loss : {LossKind::L1, LossKind::L2}) {
      const std::string key = "m0_regression_" + to_string(loss);
      try {
        j[key] = m0_regression(cfg, loss);
      } catch (const DivergentIntegral& e) {
        j[key] = nullptr;
        j[key + "_error"] = e.what();
      }
    }
  }
  if (raw.contains("sample_size")) {
    const auto h = hyperplane_complexity(cfg.epsilon, cfg.delta, cfg.k,
                                         raw.at("sample_size").get<double>(), cfg.c_prime);
    j["hyperplane"] = {{"rademacher_bound", h.rademacher_bound},
                       {"alpha", h.alpha},
                       {"m0", h.m0},
                       {"m0_order", h.m0_order}};
  }
  emit(j, out);
  return kOk;
}

int run_experiment_cmd(const std::string& path, const std::string& out_override) {
  ExperimentConfig cfg = experiment_config_from_json(read_json_file(path));
  if (!out_override.empty()) cfg.output = out_override;
  const ExperimentResult result = run_experiment(cfg);
  const Json summary = to_json(result.summary, cfg);
  if (cfg.output.empty()) {
    std::cout << to_csv(result.rows);
    std::cerr << summary.dump(2) << "\n";
  } else {
    write_text_file(cfg.output, to_csv(result.rows));
    write_json_file(cfg.output + ".summary.json", summary);
    std::cout << summary.dump(2) << "\n";
  }
  return result.summary.ok() ? kOk : kCheckFailed;
}

int run_validate(const std::string& instance, const std::string& cls, const std::string& config) {
  std::vector<std::string> problems;
  if (!instance.empty()) {
    for (const auto& p : validate_instance(instance_from_json(read_json_file(instance))))
      problems.push_back("instance: " + p);
  }
  if (!cls.empty()) {
    try {
      pattern_class_from_json(read_json_file(cls));
    } catch (const std::invalid_argument& e) {
      problems.push_back(std::string("class: ") + e.what());
    }
  }
  if (!config.empty()) {
    try {
      experiment_config_from_json(read_json_file(config));
    } catch (const std::invalid_argument& e) {
      problems.push_back(std::string("config: ") + e.what());
    }
  }
  for (const auto& p : problems) std::cout << p << "\n";
  if (problems.empty()) std::cout << "ok\n";
  return problems.empty() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarially robust learning games: training, exact values, dimensions, "
               "Rademacher complexity and sample-complexity bounds"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Run multiplicative weights against the ERM oracle");
  train_cmd->add_option("--instance", train.instance, "Instance JSON")->required();
  train_cmd->add_option("--epsilon", train.epsilon, "Target accuracy; sets T by default")
      ->check(CLI::Range(1e-9, 1.0));
  train_cmd->add_option("--T", train.rounds, "Number of rounds (overrides the horizon)")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--eta", train.eta, "Learning rate in (0, 1]");
  train_cmd->add_flag("--check", train.check, "Solve exactly and exit 1 unless eps-optimal");
  train_cmd->add_flag("--no-rounds", train.no_rounds, "Omit per-round diagnostics");
  train_cmd->add_option("--out", train.out, "Output JSON (stdout if omitted)");

  std::string exact_instance, exact_out;
  auto* exact_cmd = app.add_subcommand("exact", "Solve the empirical game by linear programming");
  exact_cmd->add_option("--instance", exact_instance, "Instance JSON")->required();
  exact_cmd->add_option("--out", exact_out, "Output JSON (stdout if omitted)");

  std::string dims_class, dims_measure = "vc", dims_out;
  double dims_gamma = 0.0;
  auto* dims_cmd = app.add_subcommand("dims", "Exhaustive shattering dimensions of a pattern class");
  dims_cmd->add_option("--class", dims_class, "Pattern class JSON")->required();
  dims_cmd->add_option("--measure", dims_measure, "Dimension to compute")
      ->check(CLI::IsMember({"vc", "graph", "natarajan", "fat", "fat-zero"}));
  dims_cmd->add_option("--gamma", dims_gamma, "Margin for fat and fat-zero");
  dims_cmd->add_option("--out", dims_out, "Output JSON (stdout if omitted)");

  std::string rad_class, rad_out;
  bool rad_exact = false;
  std::optional<std::uint64_t> rad_mc;
  std::uint64_t rad_seed = 0;
  auto* rad_cmd = app.add_subcommand("rademacher", "Empirical Rademacher complexity of a class");
  rad_cmd->add_option("--class", rad_class, "Pattern class JSON")->required();
  auto* exact_flag = rad_cmd->add_flag("--exact", rad_exact, "Enumerate all sign vectors (default)");
  rad_cmd->add_option("--mc", rad_mc, "Monte Carlo with this many sign vectors")
      ->check(CLI::PositiveNumber)
      ->excludes(exact_flag);
  rad_cmd->add_option("--seed", rad_seed, "Seed for Monte Carlo");
  rad_cmd->add_option("--out", rad_out, "Output JSON (stdout if omitted)");

  std::string bounds_config, bounds_out;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate sample-complexity bounds");
  bounds_cmd->add_option("--config", bounds_config, "Bounds config JSON")->required();
  bounds_cmd->add_option("--out", bounds_out, "Output JSON (stdout if omitted)");

  std::string exp_config, exp_out;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a seeded end-to-end experiment");
  exp_cmd->add_option("--config", exp_config, "Experiment config JSON")->required();
  exp_cmd->add_option("--out", exp_out, "CSV path (overrides the config's output)");

  std::string val_instance, val_class, val_config;
  auto* val_cmd = app.add_subcommand("validate", "Check an instance, class or experiment config");
  val_cmd->add_option("--instance", val_instance, "Instance JSON");
  val_cmd->add_option("--class", val_class, "Pattern class JSON");
  val_cmd->add_option("--config", val_config, "Experiment config JSON");
  val_cmd->require_option(1, 3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*train_cmd) return run_train(train);
    if (*exact_cmd) return run_exact(exact_instance, exact_out);
    if (*dims_cmd) {
      if ((dims_measure == "fat" || dims_measure == "fat-zero") && !(dims_gamma > 0)) {
        std::cerr << "error: --gamma > 0 is required for " << dims_measure << "\n";
        return kUsage;
      }
      return run_dims(dims_class, dims_measure, dims_gamma, dims_out);
    }
    if (*rad_cmd) return run_rademacher(rad_class, rad_exact, rad_mc, rad_seed, rad_out);
    if (*bounds_cmd) return run_bounds(bounds_config, bounds_out);
    if (*exp_cmd) return run_experiment_cmd(exp_config, exp_out);
    if (*val_cmd) return run_validate(val_instance, val_class, val_config);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
