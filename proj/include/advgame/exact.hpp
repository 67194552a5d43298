#pragma once

#include <cstddef>
#include <vector>

#include "advgame/game.hpp"

namespace advgame {

// Dense LP size guard: |H| * sum over sample examples of |rho(x)|.
inline constexpr std::size_t kExactSizeGuard = 10'000'000;
inline constexpr double kCertificationTolerance = 1e-6;

struct ExactSolution {
  double value = 0.0;
  MixtureStrategy learner;       // an optimal Q*
  std::vector<double> slack;     // t_i per sample example; value = mean of slack
  AdversaryStrategy adversary;   // recovered from the multipliers of the binding rows
  long iterations = 0;
};

// Value of the empirical game, by linear programming:
//   minimize (1/n) sum_i t_i  s.t.  t_i >= sum_h Q_h loss(h, z, y_i)  for z in rho(x_i),
//   Q on the simplex.
// The result is certified against both players' guarantees before returning;
// a failed certification throws InternalError.
ExactSolution exact_game_value(const GameInstance& instance);

struct BestResponse {
  std::vector<int> positions;  // chosen position in rho(x) per sample example
  double value = 0.0;
};

// Pointwise worst corruption against a fixed learner mixture. Ties go to the
// smallest list position.
BestResponse best_response_adversary(const MixtureStrategy& mixture, const GameInstance& instance);

}  // namespace advgame
