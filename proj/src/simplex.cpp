#include "advgame/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace advgame::lp {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double& objective_rhs() { return at(rows_, cols_); }

  void pivot(std::size_t pr, std::size_t pc, double drop) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        double& v = at(r, c);
        v -= f * at(pr, c);
        if (std::abs(v) < drop) v = 0.0;
      }
      at(r, pc) = 0.0;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct Layout {
  std::size_t num_vars = 0;
  std::size_t cols = 0;
  std::vector<double> sign;           // row multiplier making rhs >= 0
  std::vector<std::size_t> unit_col;  // slack or artificial forming the initial basis
  std::vector<bool> artificial;       // per column
};

enum class Outcome { Optimal, Unbounded, IterationLimit };

constexpr long kRefactorInterval = 50;

void load_costs(Tableau& t, const std::vector<std::size_t>& basis, const std::vector<double>& c);

// Rebuilds the tableau for the current basis from the original rows by
// Gauss-Jordan elimination with partial pivoting. Basic columns may move
// between rows. Returns false, leaving `t` untouched, if the basis is
// numerically singular.
bool reinvert(Tableau& t, std::vector<std::size_t>& basis, const Tableau& original,
              double drop) {
  Tableau fresh = original;
  std::vector<bool> used(t.rows(), false);
  std::vector<std::size_t> assigned(t.rows(), t.cols());
  for (std::size_t j : basis) {
    std::size_t pick = t.rows();
    double best = 1e-11;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (!used[r] && std::abs(fresh.at(r, j)) > best) {
        best = std::abs(fresh.at(r, j));
        pick = r;
      }
    }
    if (pick == t.rows()) return false;
    fresh.pivot(pick, j, drop);
    used[pick] = true;
    assigned[pick] = j;
  }
  t = std::move(fresh);
  basis = std::move(assigned);
  return true;
}

// Bland's rule: lowest-index improving column, ratio ties broken by the
// lowest-index basic variable. The tableau is rebuilt from `original` at
// regular intervals and before optimality is declared.
Outcome run(Tableau& t, std::vector<std::size_t>& basis, const std::vector<bool>& banned,
            const std::vector<double>& costs, const Tableau& original, const Options& opt,
            long& iterations) {
  long since_refactor = 0;
  bool fresh = false;
  for (;;) {
    if (since_refactor >= kRefactorInterval) {
      if (reinvert(t, basis, original, opt.drop_tolerance)) load_costs(t, basis, costs);
      since_refactor = 0;
      fresh = true;
    }
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (!banned[c] && t.cost(c) < -opt.pivot_tolerance) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) {
      if (fresh) return Outcome::Optimal;
      since_refactor = kRefactorInterval;
      continue;
    }
    if (iterations >= opt.max_iterations) return Outcome::IterationLimit;

    std::size_t leave = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = std::max(0.0, t.rhs(r)) / a;
      if (leave == t.rows() || ratio < best_ratio - 1e-12) {
        leave = r;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-12 && basis[r] < basis[leave]) {
        leave = r;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leave == t.rows()) return Outcome::Unbounded;
    t.pivot(leave, enter, opt.drop_tolerance);
    basis[leave] = enter;
    ++iterations;
    ++since_refactor;
    fresh = false;
  }
}

void load_costs(Tableau& t, const std::vector<std::size_t>& basis, const std::vector<double>& c) {
  for (std::size_t j = 0; j <= t.cols(); ++j) t.at(t.rows(), j) = j < t.cols() ? c[j] : 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const double cb = c[basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= t.cols(); ++j) t.at(t.rows(), j) -= cb * t.at(r, j);
  }
}

}  // namespace

Solution minimize(const Problem& problem, const Options& opt) {
  const std::size_t m = problem.constraints.size();
  const std::size_t n = problem.objective.size();
  for (const auto& row : problem.constraints) {
    if (row.coefficients.size() != n) throw std::invalid_argument("lp::minimize: ragged row");
  }

  Layout lay;
  lay.num_vars = n;
  lay.sign.resize(m);
  std::vector<Relation> rel(m);
  std::size_t extra = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = problem.constraints[r];
    lay.sign[r] = row.rhs < 0.0 ? -1.0 : 1.0;
    rel[r] = row.relation;
    if (lay.sign[r] < 0.0 && rel[r] != Relation::Equal) {
      rel[r] = rel[r] == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    }
    extra += rel[r] == Relation::GreaterEqual ? 2 : 1;
  }
  lay.cols = n + extra;
  lay.artificial.assign(lay.cols, false);
  lay.unit_col.resize(m);

  Tableau t(m, lay.cols);
  std::vector<std::size_t> basis(m);
  std::size_t next = n;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = problem.constraints[r];
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = lay.sign[r] * row.coefficients[j];
    t.rhs(r) = lay.sign[r] * row.rhs;
    switch (rel[r]) {
      case Relation::LessEqual:
        t.at(r, next) = 1.0;
        lay.unit_col[r] = next++;
        break;
      case Relation::GreaterEqual:
        t.at(r, next++) = -1.0;
        t.at(r, next) = 1.0;
        lay.artificial[next] = true;
        lay.unit_col[r] = next++;
        break;
      case Relation::Equal:
        t.at(r, next) = 1.0;
        lay.artificial[next] = true;
        lay.unit_col[r] = next++;
        break;
    }
    basis[r] = lay.unit_col[r];
  }

  const Tableau original = t;
  Solution sol;
  std::vector<bool> banned(lay.cols, false);

  // Phase 1: minimize the sum of artificials.
  bool any_artificial = false;
  std::vector<double> phase1(lay.cols, 0.0);
  for (std::size_t j = 0; j < lay.cols; ++j) {
    if (lay.artificial[j]) {
      phase1[j] = 1.0;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    load_costs(t, basis, phase1);
    const Outcome o = run(t, basis, banned, phase1, original, opt, sol.iterations);
    if (o == Outcome::IterationLimit) {
      sol.status = Status::IterationLimit;
      return sol;
    }
    if (-t.objective_rhs() > opt.feasibility_tolerance) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Pivot zero-level artificials out of the basis where a structural
    // column allows it; rows where none does are redundant and stay inert.
    for (std::size_t r = 0; r < m; ++r) {
      if (!lay.artificial[basis[r]]) continue;
      for (std::size_t j = 0; j < lay.cols; ++j) {
        if (!lay.artificial[j] && std::abs(t.at(r, j)) > opt.pivot_tolerance) {
          t.pivot(r, j, opt.drop_tolerance);
          basis[r] = j;
          break;
        }
      }
    }
    for (std::size_t j = 0; j < lay.cols; ++j) banned[j] = lay.artificial[j];
  }

  // Phase 2.
  std::vector<double> costs(lay.cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) costs[j] = problem.objective[j];
  load_costs(t, basis, costs);
  const Outcome o = run(t, basis, banned, costs, original, opt, sol.iterations);
  if (o == Outcome::IterationLimit) {
    sol.status = Status::IterationLimit;
    return sol;
  }
  if (o == Outcome::Unbounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  sol.status = Status::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) sol.x[basis[r]] = std::max(0.0, t.rhs(r));
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
  sol.duals.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    // The unit column's reduced cost is 0 - y_r.
    sol.duals[r] = -lay.sign[r] * t.cost(lay.unit_col[r]);
  }
  return sol;
}

}  // namespace advgame::lp
