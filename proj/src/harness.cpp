#include "advgame/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "advgame/exact.hpp"
#include "advgame/game.hpp"
#include "advgame/random.hpp"

namespace advgame {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::RandomBinary: return "random-binary";
    case Scenario::RandomMulticlass: return "random-multiclass";
    case Scenario::RandomRegression: return "random-regression";
    case Scenario::Thresholds: return "thresholds";
    case Scenario::MatchingPennies: return "matching-pennies";
  }
  return "random-binary";
}

Scenario scenario_from_string(const std::string& name) {
  for (auto s : {Scenario::RandomBinary, Scenario::RandomMulticlass, Scenario::RandomRegression,
                 Scenario::Thresholds, Scenario::MatchingPennies})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

void ExperimentConfig::check() const {
  if (x_size < 1 || z_size < 1 || num_hypotheses < 1 || k < 1 || num_labels < 2)
    throw std::invalid_argument("sizes must be >= 1 and num_labels >= 2");
  if (k > z_size) throw std::invalid_argument("k exceeds |Z|");
  if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("epsilon must be in (0,1]");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
  if (sample_sizes.empty()) throw std::invalid_argument("no sample sizes");
  for (int m : sample_sizes)
    if (m < 1) throw std::invalid_argument("sample sizes must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (rounds && *rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (scenario == Scenario::RandomRegression && loss == LossKind::ZeroOne)
    throw std::invalid_argument("regression scenario needs l1 or l2 loss");
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial) {
  return cfg.seed ^ static_cast<std::uint64_t>(trial);
}

GameInstance matching_pennies(int m) {
  GameInstance g;
  g.x_domain = {1};
  g.z_domain = {2};
  g.rho = {2, {{0, 1}}};
  g.target = Concept::categorical({0}, 2);
  g.dist = Distribution::uniform(1);
  g.sample.examples.assign(static_cast<std::size_t>(m), Example{0, 0.0});
  g.hypotheses = HypothesisClass::categorical(2, {{0, 1}, {1, 0}});
  g.loss = LossKind::ZeroOne;
  return g;
}

namespace {

CorruptionMap random_rho(Rng& rng, int x_size, int z_size, int k) {
  CorruptionMap rho{k, {}};
  for (int x = 0; x < x_size; ++x) {
    const int size = static_cast<int>(rng.uniform_int(1, k));
    rho.lists.push_back(rng.sample_without_replacement(z_size, size));
  }
  return rho;
}

// x, x+1, x-1, x+2, ... clipped to the domain, at most k entries.
CorruptionMap window_rho(int size, int k) {
  CorruptionMap rho{k, {}};
  for (int x = 0; x < size; ++x) {
    std::vector<int> list{x};
    for (int r = 1; static_cast<int>(list.size()) < k && r < size; ++r) {
      if (x + r < size) list.push_back(x + r);
      if (static_cast<int>(list.size()) < k && x - r >= 0) list.push_back(x - r);
    }
    rho.lists.push_back(std::move(list));
  }
  return rho;
}

std::vector<std::vector<int>> random_table(Rng& rng, int rows, int cols, int labels) {
  std::vector<std::vector<int>> t(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(cols)));
  for (auto& r : t)
    for (auto& v : r) v = static_cast<int>(rng.uniform_int(0, labels - 1));
  return t;
}

}  // namespace

GameInstance generate_instance(const ExperimentConfig& cfg, int trial, int m) {
  cfg.check();
  if (m < 1) throw std::invalid_argument("sample size must be >= 1");
  if (cfg.scenario == Scenario::MatchingPennies) return matching_pennies(m);

  const std::uint64_t seed = trial_seed(cfg, trial);
  Rng rng(seed);
  GameInstance g;
  g.loss = LossKind::ZeroOne;
  switch (cfg.scenario) {
    case Scenario::RandomBinary:
    case Scenario::RandomMulticlass: {
      const int labels = cfg.scenario == Scenario::RandomBinary ? 2 : cfg.num_labels;
      g.x_domain = {cfg.x_size};
      g.z_domain = {cfg.z_size};
      g.rho = random_rho(rng, cfg.x_size, cfg.z_size, cfg.k);
      g.target = Concept::categorical(random_table(rng, 1, cfg.x_size, labels).front(), labels);
      g.hypotheses =
          HypothesisClass::categorical(labels, random_table(rng, cfg.num_hypotheses, cfg.z_size, labels));
      break;
    }
    case Scenario::RandomRegression: {
      g.x_domain = {cfg.x_size};
      g.z_domain = {cfg.z_size};
      g.rho = random_rho(rng, cfg.x_size, cfg.z_size, cfg.k);
      std::vector<double> labels(static_cast<std::size_t>(cfg.x_size));
      for (auto& y : labels) y = rng.uniform();
      g.target = Concept::real(std::move(labels));
      std::vector<std::vector<double>> rows(static_cast<std::size_t>(cfg.num_hypotheses),
                                            std::vector<double>(static_cast<std::size_t>(cfg.z_size)));
      for (auto& r : rows)
        for (auto& v : r) v = rng.uniform();
      g.hypotheses = HypothesisClass::real(rows);
      g.loss = cfg.loss;
      break;
    }
    case Scenario::Thresholds: {
      const int n = cfg.x_size;
      g.x_domain = {n};
      g.z_domain = {n};
      g.rho = window_rho(n, cfg.k);
      std::vector<std::vector<int>> rows;
      for (int t = 0; t <= n; ++t) {
        std::vector<int> r(static_cast<std::size_t>(n));
        for (int z = 0; z < n; ++z) r[static_cast<std::size_t>(z)] = z >= t ? 1 : 0;
        rows.push_back(std::move(r));
      }
      const auto cut = static_cast<std::size_t>(rng.uniform_int(0, n));
      g.target = Concept::categorical(rows[cut], 2);
      g.hypotheses = HypothesisClass::categorical(2, rows);
      break;
    }
    case Scenario::MatchingPennies: break;
  }
  g.dist.weights = rng.dirichlet_uniform(static_cast<std::size_t>(g.x_domain.size));
  g.sample = draw_sample(g.dist, g.target, m, mix_seed(seed, static_cast<std::uint64_t>(m)));
  require_valid(g);
  return g;
}

GameInstance generate_instance(const ExperimentConfig& cfg, int trial) {
  return generate_instance(cfg, trial, cfg.sample_sizes.front());
}

bool ExperimentRow::eps_ok(double epsilon) const {
  return error.empty() && learner - value <= epsilon && value - adversary <= epsilon;
}

bool ExperimentRow::ordering_ok(double tol) const {
  return error.empty() && adversary - tol <= value && value <= learner + tol;
}

ExperimentRow run_trial(const ExperimentConfig& cfg, int trial, int m) {
  ExperimentRow row;
  row.trial = trial;
  row.m = m;
  const auto start = std::chrono::steady_clock::now();
  try {
    const GameInstance g = generate_instance(cfg, trial, m);
    const std::int64_t horizon = horizon_for(m, g.budget(), cfg.epsilon);
    row.rounds = cfg.rounds.value_or(horizon);
    row.eps_checked = row.rounds >= horizon;
    const TrainOutput out = mw_train(g, row.rounds, default_eta(g.budget(), row.rounds));
    row.learner = learner_guarantee(out, g);
    row.adversary = adversary_guarantee(out.average_adversary, g);
    row.value = exact_game_value(g).value;
    const auto mixture = MixtureStrategy::uniform(out.hypotheses);
    row.true_risk = true_risk(mixture, g.dist, g.target, g.rho, g.hypotheses, g.loss);
    row.empirical_risk = empirical_risk(mixture, g.sample, g.rho, g.hypotheses, g.loss);
    row.gap = std::abs(row.true_risk - row.empirical_risk);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.eps_checked = false;
  }
  row.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.check();
  const std::size_t sizes = cfg.sample_sizes.size();
  const std::size_t jobs = static_cast<std::size_t>(cfg.trials) * sizes;
  ExperimentResult result;
  result.rows.resize(jobs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++)
      result.rows[j] = run_trial(cfg, static_cast<int>(j / sizes), cfg.sample_sizes[j % sizes]);
  };
  unsigned count = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, jobs));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  result.summary = summarize(cfg, result.rows);
  return result;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) throw std::invalid_argument("x values are all equal");
  return sxy / sxx;
}

double ExperimentSummary::eps_pass_rate() const {
  return eps_checks == 0 ? 1.0 : static_cast<double>(eps_passes) / eps_checks;
}

bool ExperimentSummary::ok() const { return eps_passes == eps_checks && ordering_violations == 0; }

ExperimentSummary summarize(const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows) {
  ExperimentSummary s;
  s.rows = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++s.errors;
      continue;
    }
    if (!r.ordering_ok()) ++s.ordering_violations;
    if (r.eps_checked) {
      ++s.eps_checks;
      if (r.eps_ok(cfg.epsilon)) ++s.eps_passes;
    }
  }
  std::vector<double> log_m, log_gap;
  bool positive = true;
  for (int m : cfg.sample_sizes) {
    std::vector<double> gaps;
    for (const auto& r : rows)
      if (r.m == m && r.error.empty()) gaps.push_back(r.gap);
    if (gaps.empty()) continue;
    std::sort(gaps.begin(), gaps.end());
    const std::size_t h = gaps.size() / 2;
    const double median = gaps.size() % 2 ? gaps[h] : 0.5 * (gaps[h - 1] + gaps[h]);
    s.median_gaps.push_back({m, median});
    positive = positive && median > 0;
    log_m.push_back(std::log(static_cast<double>(m)));
    log_gap.push_back(median > 0 ? std::log(median) : 0.0);
  }
  std::vector<double> distinct_m = log_m;
  std::sort(distinct_m.begin(), distinct_m.end());
  const bool spread = std::adjacent_find(distinct_m.begin(), distinct_m.end()) == distinct_m.end();
  if (positive && spread && log_m.size() >= 2) s.decay_slope = regression_slope(log_m, log_gap);
  return s;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          fields.back() += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c == '\n') {
      return fields;
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  return fields;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "' in CSV");
  return v;
}

long long parse_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "' in CSV");
  return v;
}

}  // namespace

std::string csv_header() {
  return "trial,m,value,learner_guarantee,adversary_guarantee,true_risk,empirical_risk,gap,"
         "rounds,eps_checked,wall_ms,error";
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.trial << ',' << r.m << ',' << fmt_double(r.value) << ',' << fmt_double(r.learner)
        << ',' << fmt_double(r.adversary) << ',' << fmt_double(r.true_risk) << ','
        << fmt_double(r.empirical_risk) << ',' << fmt_double(r.gap) << ',' << r.rounds << ','
        << (r.eps_checked ? 1 : 0) << ',' << fmt_double(r.wall_ms) << ',' << quote(r.error)
        << '\n';
  }
  return out.str();
}

std::vector<ExperimentRow> from_csv(const std::string& text) {
  std::size_t pos = 0;
  std::vector<std::string> header = split_record(text, pos);
  std::string joined;
  for (std::size_t i = 0; i < header.size(); ++i) joined += (i ? "," : "") + header[i];
  if (joined != csv_header()) throw std::invalid_argument("unexpected CSV header");
  std::vector<ExperimentRow> rows;
  while (pos < text.size()) {
    const auto f = split_record(text, pos);
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 12) throw std::invalid_argument("CSV row has wrong number of fields");
    ExperimentRow r;
    r.trial = static_cast<int>(parse_int(f[0]));
    r.m = static_cast<int>(parse_int(f[1]));
    r.value = parse_double(f[2]);
    r.learner = parse_double(f[3]);
    r.adversary = parse_double(f[4]);
    r.true_risk = parse_double(f[5]);
    r.empirical_risk = parse_double(f[6]);
    r.gap = parse_double(f[7]);
    r.rounds = parse_int(f[8]);
    r.eps_checked = parse_int(f[9]) != 0;
    r.wall_ms = parse_double(f[10]);
    r.error = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace advgame
