#include "advgame/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "advgame/errors.hpp"

namespace advgame {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
  std::set<std::string> known;
  for (const char* k : required) {
    if (!j.contains(k)) throw std::invalid_argument(std::string(what) + " is missing \"" + k + "\"");
    known.insert(k);
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw std::invalid_argument(std::string(what) + " has unknown key \"" + item.key() + "\"");
}

int as_index(double v, const char* what) {
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw std::invalid_argument(std::string(what) + " must be an integer");
  return static_cast<int>(v);
}

std::vector<int> int_list(const Json& j, const char* what) {
  std::vector<int> out;
  for (const auto& v : j) out.push_back(as_index(v.get<double>(), what));
  return out;
}

Json label_list(const std::vector<double>& labels, bool categorical) {
  Json out = Json::array();
  for (double y : labels) {
    if (categorical)
      out.push_back(static_cast<int>(y));
    else
      out.push_back(y);
  }
  return out;
}

}  // namespace

Json to_json(const GameInstance& g) {
  const bool cat = g.target.kind == LabelKind::Categorical;
  Json sample = Json::array();
  for (const auto& e : g.sample.examples) {
    if (cat)
      sample.push_back({e.x, static_cast<int>(e.y)});
    else
      sample.push_back({e.x, e.y});
  }
  const bool hcat = g.hypotheses.kind() == LabelKind::Categorical;
  Json table = Json::array();
  for (int h = 0; h < g.hypotheses.size(); ++h) {
    const auto row = g.hypotheses.row(h);
    table.push_back(label_list({row.begin(), row.end()}, hcat));
  }
  return {
      {"X", g.x_domain.size},
      {"Z", g.z_domain.size},
      {"k", g.rho.budget},
      {"rho", g.rho.lists},
      {"concept",
       {{"kind", cat ? "categorical" : "real"},
        {"num_labels", g.target.num_labels},
        {"labels", label_list(g.target.labels, cat)}}},
      {"dist", g.dist.weights},
      {"hypotheses",
       {{"kind", hcat ? "categorical" : "real"},
        {"num_labels", g.hypotheses.num_labels()},
        {"table", table}}},
      {"loss", to_string(g.loss)},
      {"sample", sample},
  };
}

GameInstance instance_from_json(const Json& j) {
  require_keys(j, {"X", "Z", "k", "rho", "concept", "dist", "hypotheses", "loss", "sample"}, {},
               "instance");
  GameInstance g;
  g.x_domain = {j.at("X").get<int>()};
  g.z_domain = {j.at("Z").get<int>()};
  g.rho.budget = j.at("k").get<int>();
  for (const auto& list : j.at("rho")) g.rho.lists.push_back(int_list(list, "rho entry"));

  const Json& c = j.at("concept");
  require_keys(c, {"kind", "labels"}, {"num_labels"}, "concept");
  const std::string ckind = c.at("kind").get<std::string>();
  if (ckind == "categorical") {
    g.target = Concept::categorical(int_list(c.at("labels"), "categorical label"),
                                    c.value("num_labels", 2));
  } else if (ckind == "real") {
    g.target = Concept::real(c.at("labels").get<std::vector<double>>());
  } else {
    throw std::invalid_argument("concept kind must be categorical or real");
  }

  g.dist.weights = j.at("dist").get<std::vector<double>>();

  const Json& h = j.at("hypotheses");
  require_keys(h, {"kind", "table"}, {"num_labels"}, "hypotheses");
  const std::string hkind = h.at("kind").get<std::string>();
  if (hkind == "categorical") {
    std::vector<std::vector<int>> rows;
    for (const auto& r : h.at("table")) rows.push_back(int_list(r, "categorical prediction"));
    g.hypotheses = HypothesisClass::categorical(h.value("num_labels", 2), rows);
  } else if (hkind == "real") {
    g.hypotheses = HypothesisClass::real(h.at("table").get<std::vector<std::vector<double>>>());
  } else {
    throw std::invalid_argument("hypotheses kind must be categorical or real");
  }

  g.loss = loss_kind_from_string(j.at("loss").get<std::string>());
  for (const auto& e : j.at("sample")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("sample entries are [x, y]");
    g.sample.examples.push_back({as_index(e[0].get<double>(), "sample x"), e[1].get<double>()});
  }
  return g;
}

Json to_json(const PatternClass& cls) {
  Json patterns = Json::array();
  for (const auto& p : cls.patterns()) {
    Json row = Json::array();
    for (double v : p) {
      switch (cls.kind()) {
        case PatternKind::Binary:
        case PatternKind::Categorical: row.push_back(static_cast<int>(v)); break;
        case PatternKind::Ternary: row.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0)); break;
        case PatternKind::Real: row.push_back(v); break;
      }
    }
    patterns.push_back(row);
  }
  Json out = {{"kind", to_string(cls.kind())}, {"num_points", cls.num_points()}, {"patterns", patterns}};
  if (cls.kind() == PatternKind::Ternary) out["gamma"] = cls.gamma();
  return out;
}

PatternClass pattern_class_from_json(const Json& j) {
  require_keys(j, {"kind", "patterns"}, {"num_points", "gamma"}, "class");
  const PatternKind kind = pattern_kind_from_string(j.at("kind").get<std::string>());
  const auto rows = j.at("patterns").get<std::vector<std::vector<double>>>();
  const int m = j.contains("num_points") ? j.at("num_points").get<int>()
                                         : (rows.empty() ? 0 : static_cast<int>(rows.front().size()));
  if (kind == PatternKind::Ternary) {
    if (!j.contains("gamma")) throw std::invalid_argument("ternary class needs \"gamma\"");
    const double gamma = j.at("gamma").get<double>();
    std::vector<std::vector<double>> cells;
    for (const auto& r : rows) {
      std::vector<double> row;
      for (double c : r) {
        if (c != -1 && c != 0 && c != 1) throw std::invalid_argument("ternary codes are -1, 0, 1");
        row.push_back(c * gamma);
      }
      cells.push_back(std::move(row));
    }
    return {kind, m, std::move(cells), gamma};
  }
  return {kind, m, rows};
}

Json to_json(const MixtureStrategy& mixture, int class_size) {
  std::vector<double> w(static_cast<std::size_t>(class_size), 0.0);
  for (const auto& t : mixture.terms) w.at(static_cast<std::size_t>(t.hypothesis)) += t.weight;
  return w;
}

Json to_json(const AdversaryStrategy& strategy) { return strategy.per_example; }

Json to_json(const TrainOutput& out, const GameInstance& g, bool with_rounds) {
  Json j = {
      {"T", out.hypotheses.size()},
      {"eta", out.eta},
      {"hypotheses", out.hypotheses},
      {"mixture", to_json(MixtureStrategy::uniform(out.hypotheses), g.hypotheses.size())},
      {"average_adversary", to_json(out.average_adversary)},
      {"learner_guarantee", learner_guarantee(out, g)},
      {"adversary_guarantee", adversary_guarantee(out.average_adversary, g)},
  };
  if (with_rounds) {
    Json rounds = Json::array();
    for (const auto& r : out.rounds)
      rounds.push_back({{"round", r.round},
                        {"hypothesis", r.hypothesis},
                        {"erm_loss", r.erm_loss},
                        {"log_weight_mass", r.log_weight_mass}});
    j["rounds"] = rounds;
  }
  return j;
}

Json to_json(const ExactSolution& sol, int class_size) {
  return {{"value", sol.value},
          {"learner", to_json(sol.learner, class_size)},
          {"slack", sol.slack},
          {"adversary", to_json(sol.adversary)},
          {"iterations", sol.iterations}};
}

Json to_json(const DimensionReport& report) {
  Json j = {{"dimension", report.dimension}, {"witness", report.witness}};
  if (!report.shift.empty()) j["shift"] = report.shift;
  if (!report.labels.empty()) j["labels"] = report.labels;
  if (!report.alt_labels.empty()) j["alt_labels"] = report.alt_labels;
  return j;
}

Json to_json(const RademacherEstimate& est) {
  Json j = {{"value", est.value}, {"mode", to_string(est.mode)}, {"trials", est.trials}};
  if (est.mode == RademacherMode::MonteCarlo) j["standard_error"] = est.standard_error;
  return j;
}

Json to_json(const MaxConvReport& r) {
  return {{"max_class_value", r.max_class_value}, {"augmented_value", r.augmented_value},
          {"max_excess", r.max_excess},           {"violations", r.violations},
          {"samples", r.samples},                 {"passed", r.passed}};
}

Json to_json(const FatProfile& p) {
  Json j = {{"kind", to_string(p.kind)}};
  if (p.kind == FatProfile::Kind::Power) {
    j["scale"] = p.scale;
    j["exponent"] = p.exponent;
  } else if (p.kind == FatProfile::Kind::Step) {
    Json steps = Json::array();
    for (const auto& s : p.steps) steps.push_back({s.threshold, s.value});
    j["steps"] = steps;
  }
  return j;
}

FatProfile fat_profile_from_json(const Json& j) {
  require_keys(j, {"kind"}, {"scale", "exponent", "steps", "class"}, "fat profile");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "class") {
    if (!j.contains("class")) throw std::invalid_argument("class profile needs \"class\"");
    return FatProfile::of_class(pattern_class_from_json(j.at("class")));
  }
  switch (fat_profile_kind_from_string(kind)) {
    case FatProfile::Kind::Zero: return FatProfile::zero();
    case FatProfile::Kind::Power:
      return FatProfile::power(j.value("scale", 1.0), j.value("exponent", 0.0));
    case FatProfile::Kind::Step: {
      std::vector<FatStep> steps;
      for (const auto& s : j.at("steps")) {
        if (!s.is_array() || s.size() != 2) throw std::invalid_argument("steps are [threshold, value]");
        steps.push_back({s[0].get<double>(), s[1].get<double>()});
      }
      return FatProfile::step(std::move(steps));
    }
  }
  return FatProfile::zero();
}

BoundConfig bound_config_from_json(const Json& j) {
  require_keys(j, {"epsilon", "delta", "k"},
               {"vc", "graph_dim", "natarajan_dim", "num_labels", "fat", "c", "c1", "c2",
                "c_prime", "k_tilde", "n", "alpha", "sample_size"},
               "bounds config");
  BoundConfig cfg;
  cfg.epsilon = j.at("epsilon").get<double>();
  cfg.delta = j.at("delta").get<double>();
  cfg.k = j.at("k").get<int>();
  if (j.contains("vc")) cfg.vc = j.at("vc").get<double>();
  if (j.contains("graph_dim")) cfg.graph_dim = j.at("graph_dim").get<double>();
  if (j.contains("natarajan_dim")) cfg.natarajan_dim = j.at("natarajan_dim").get<double>();
  cfg.num_labels = j.value("num_labels", 2);
  if (j.contains("fat")) cfg.fat = fat_profile_from_json(j.at("fat"));
  cfg.c = j.value("c", 1.0);
  cfg.c1 = j.value("c1", 1.0);
  cfg.c2 = j.value("c2", 1.0);
  cfg.c_prime = j.value("c_prime", 1.0);
  cfg.k_tilde = j.value("k_tilde", 1.0);
  cfg.check();
  return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
  Json j = {{"scenario", to_string(cfg.scenario)},
            {"x_size", cfg.x_size},
            {"z_size", cfg.z_size},
            {"num_hypotheses", cfg.num_hypotheses},
            {"k", cfg.k},
            {"num_labels", cfg.num_labels},
            {"loss", to_string(cfg.loss)},
            {"epsilon", cfg.epsilon},
            {"delta", cfg.delta},
            {"sample_sizes", cfg.sample_sizes},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"threads", cfg.threads},
            {"output", cfg.output}};
  if (cfg.rounds) j["rounds"] = *cfg.rounds;
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  require_keys(j, {"scenario", "seed"},
               {"x_size", "z_size", "num_hypotheses", "k", "num_labels", "loss", "epsilon",
                "delta", "sample_sizes", "trials", "rounds", "threads", "output"},
               "experiment config");
  ExperimentConfig cfg;
  cfg.scenario = scenario_from_string(j.at("scenario").get<std::string>());
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.x_size = j.value("x_size", cfg.x_size);
  cfg.z_size = j.value("z_size", cfg.z_size);
  cfg.num_hypotheses = j.value("num_hypotheses", cfg.num_hypotheses);
  cfg.k = j.value("k", cfg.k);
  cfg.num_labels = j.value("num_labels", cfg.num_labels);
  if (j.contains("loss")) cfg.loss = loss_kind_from_string(j.at("loss").get<std::string>());
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  cfg.delta = j.value("delta", cfg.delta);
  if (j.contains("sample_sizes")) cfg.sample_sizes = j.at("sample_sizes").get<std::vector<int>>();
  cfg.trials = j.value("trials", cfg.trials);
  if (j.contains("rounds")) cfg.rounds = j.at("rounds").get<std::int64_t>();
  cfg.threads = j.value("threads", cfg.threads);
  cfg.output = j.value("output", std::string{});
  cfg.check();
  return cfg;
}

Json to_json(const ExperimentSummary& s, const ExperimentConfig& cfg) {
  Json gaps = Json::array();
  for (const auto& g : s.median_gaps) gaps.push_back({{"m", g.m}, {"median_gap", g.median}});
  Json j = {{"config", to_json(cfg)},
            {"rows", s.rows},
            {"errors", s.errors},
            {"eps_checks", s.eps_checks},
            {"eps_passes", s.eps_passes},
            {"eps_pass_rate", s.eps_pass_rate()},
            {"ordering_violations", s.ordering_violations},
            {"median_gaps", gaps},
            {"decay_slope", s.decay_slope ? Json(*s.decay_slope) : Json(nullptr)},
            {"ok", s.ok()}};
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw IoError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace advgame
