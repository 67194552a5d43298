#pragma once

#include <string>

#include "advgame/bounds.hpp"
#include "advgame/dims.hpp"
#include "advgame/exact.hpp"
#include "advgame/game.hpp"
#include "advgame/harness.hpp"
#include "advgame/instance.hpp"
#include "advgame/rademacher.hpp"
#include "json.hpp"

namespace advgame {

using Json = nlohmann::json;

// Instance document:
//   {"X": n, "Z": n', "k": k, "rho": [[z, ...], ...],
//    "concept": {"kind": "categorical"|"real", "labels": [...], "num_labels": l},
//    "dist": [...], "hypotheses": {"kind": ..., "num_labels": l, "table": [[...], ...]},
//    "loss": "zero-one"|"l1"|"l2", "sample": [[x, y], ...]}
Json to_json(const GameInstance& g);
GameInstance instance_from_json(const Json& j);

// {"kind": ..., "num_points": m, "patterns": [[...], ...]}; ternary classes
// add "gamma" and store codes -1 / 0 / +1.
Json to_json(const PatternClass& cls);
PatternClass pattern_class_from_json(const Json& j);

// Weight list indexed by hypothesis.
Json to_json(const MixtureStrategy& mixture, int class_size);
Json to_json(const AdversaryStrategy& strategy);

Json to_json(const TrainOutput& out, const GameInstance& g, bool with_rounds = true);
Json to_json(const ExactSolution& sol, int class_size);
Json to_json(const DimensionReport& report);
Json to_json(const RademacherEstimate& est);
Json to_json(const MaxConvReport& report);
Json to_json(const FatProfile& profile);
FatProfile fat_profile_from_json(const Json& j);
BoundConfig bound_config_from_json(const Json& j);
Json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const Json& j);
Json to_json(const ExperimentSummary& summary, const ExperimentConfig& cfg);

// Throws IoError on unreadable files or malformed JSON.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace advgame
