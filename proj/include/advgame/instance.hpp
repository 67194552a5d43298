#pragma once

#include <string>
#include <vector>

#include "advgame/hypothesis.hpp"
#include "advgame/model.hpp"

namespace advgame {

// One playable game: domains, corruption relation, target, the training
// sample and the hypothesis class with its loss.
struct GameInstance {
  FiniteDomain x_domain;
  FiniteDomain z_domain;
  CorruptionMap rho;
  Concept target;
  Distribution dist;
  LabeledSample sample;
  HypothesisClass hypotheses;
  LossKind loss = LossKind::ZeroOne;

  int budget() const { return rho.budget; }
};

// Every invariant violation, as human-readable messages. Empty means ok.
std::vector<std::string> validate_instance(const GameInstance& instance);

// Throws std::invalid_argument carrying all violations.
void require_valid(const GameInstance& instance);

// Distinct sample examples with their multiplicity weight (count / n), in
// order of first appearance. Identical (x, y) examples are interchangeable in
// every quantity the game computes.
struct ExampleGroup {
  Example example;
  double weight = 0.0;
  std::vector<int> members;  // positions in the sample
};
std::vector<ExampleGroup> group_sample(const LabeledSample& sample);

}  // namespace advgame
