#pragma once

#include <vector>

namespace advgame::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

// minimize objective . x  subject to constraints and x >= 0.
struct Problem {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  // One multiplier per constraint, in the sign convention of the minimization
  // Lagrangian: <= rows get y <= 0, >= rows y >= 0, = rows are free.
  std::vector<double> duals;
  long iterations = 0;
};

struct Options {
  double pivot_tolerance = 1e-9;
  // Tableau entries below this magnitude after a pivot are set to zero.
  double drop_tolerance = 1e-13;
  double feasibility_tolerance = 1e-9;
  long max_iterations = 5'000'000;
};

// Dense two-phase tableau simplex with Bland's smallest-index rule, which
// cannot cycle on degenerate vertices.
Solution minimize(const Problem& problem, const Options& options = {});

}  // namespace advgame::lp
