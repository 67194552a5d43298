#include "advgame/dims.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "advgame/errors.hpp"

namespace advgame {

namespace {

using Code = std::vector<std::int8_t>;  // per pattern: +1 above, -1 below, 0 undecided

// One admissible way of reading a point: a code per pattern plus what to
// report for it (a shift, a label or a label pair).
struct Choice {
  Code code;
  double first = 0.0;
  double second = 0.0;
};

using PointChoices = std::vector<std::vector<Choice>>;

void check_guard(const PatternClass& cls, int guard, const char* what) {
  if (cls.num_points() > guard)
    throw GuardExceeded(std::string(what) + ": " + std::to_string(cls.num_points()) +
                        " points exceeds the exhaustive-search limit of " +
                        std::to_string(guard));
}

bool has_both_sides(const Code& c) {
  bool up = false, down = false;
  for (auto v : c) {
    up |= v > 0;
    down |= v < 0;
  }
  return up && down;
}

// DFS over choices for the points of `set`, checking after every step that
// the assigned prefix is shattered.
class ShatterTester {
 public:
  ShatterTester(const PointChoices& choices, int num_patterns)
      : choices_(choices), n_(num_patterns) {}

  bool test(const std::vector<int>& set, std::vector<int>* picked) {
    const std::size_t d = set.size();
    keys_.assign(d + 1, std::vector<std::uint32_t>(static_cast<std::size_t>(n_), 0));
    alive_.assign(d + 1, std::vector<char>(static_cast<std::size_t>(n_), 1));
    seen_.assign(std::size_t{1} << d, 0);
    stamp_ = 0;
    chosen_.assign(d, 0);
    const bool ok = dfs(set, 0);
    if (ok && picked) *picked = chosen_;
    return ok;
  }

 private:
  bool dfs(const std::vector<int>& set, std::size_t depth) {
    if (depth == set.size()) return true;
    const auto& options = choices_[static_cast<std::size_t>(set[depth])];
    const std::uint32_t target = std::uint32_t{1} << (depth + 1);
    for (std::size_t c = 0; c < options.size(); ++c) {
      const Code& code = options[c].code;
      auto& key = keys_[depth + 1];
      auto& alive = alive_[depth + 1];
      ++stamp_;
      std::uint32_t distinct = 0;
      for (int p = 0; p < n_; ++p) {
        const auto up = static_cast<std::size_t>(p);
        alive[up] = alive_[depth][up] && code[up] != 0;
        if (!alive[up]) continue;
        key[up] = keys_[depth][up] | (code[up] > 0 ? (std::uint32_t{1} << depth) : 0u);
        if (seen_[key[up]] != stamp_) {
          seen_[key[up]] = stamp_;
          ++distinct;
        }
      }
      if (distinct < target) continue;
      chosen_[depth] = static_cast<int>(c);
      if (dfs(set, depth + 1)) return true;
    }
    return false;
  }

  const PointChoices& choices_;
  int n_;
  std::vector<std::vector<std::uint32_t>> keys_;
  std::vector<std::vector<char>> alive_;
  std::vector<std::uint64_t> seen_;
  std::uint64_t stamp_ = 0;
  std::vector<int> chosen_;
};

std::uint64_t mask_of(const std::vector<int>& set) {
  std::uint64_t m = 0;
  for (int i : set) m |= std::uint64_t{1} << i;
  return m;
}

// Level-wise search for the largest shattered set. Shattering is hereditary,
// so a candidate is tested only if all its one-smaller subsets passed.
// Candidates are generated in lexicographic order, so the first set of the
// last non-empty level is the lexicographically smallest largest set.
DimensionReport search(const PointChoices& choices, int num_patterns, Measure measure) {
  const int m = static_cast<int>(choices.size());
  ShatterTester tester(choices, num_patterns);
  const int max_size =
      num_patterns <= 1 ? 0 : std::bit_width(static_cast<unsigned>(num_patterns)) - 1;

  std::vector<std::vector<int>> level{{}};
  std::unordered_set<std::uint64_t> present{0};
  for (int size = 1; size <= std::min(max_size, m); ++size) {
    std::vector<std::vector<int>> next;
    std::unordered_set<std::uint64_t> next_present;
    for (const auto& base : level) {
      const int start = base.empty() ? 0 : base.back() + 1;
      for (int j = start; j < m; ++j) {
        std::vector<int> cand = base;
        cand.push_back(j);
        const std::uint64_t cmask = mask_of(cand);
        bool subsets_ok = true;
        for (std::size_t t = 0; t + 1 < cand.size() && subsets_ok; ++t)
          subsets_ok = present.count(cmask & ~(std::uint64_t{1} << cand[t])) > 0;
        if (!subsets_ok || !tester.test(cand, nullptr)) continue;
        next_present.insert(cmask);
        next.push_back(std::move(cand));
      }
    }
    if (next.empty()) break;
    level = std::move(next);
    present = std::move(next_present);
  }

  DimensionReport report;
  report.witness = level.front();
  report.dimension = static_cast<int>(report.witness.size());
  std::vector<int> picked;
  if (!tester.test(report.witness, &picked)) throw InternalError("witness failed to re-test");
  for (std::size_t t = 0; t < report.witness.size(); ++t) {
    const Choice& c = choices[static_cast<std::size_t>(report.witness[t])]
                             [static_cast<std::size_t>(picked[t])];
    switch (measure) {
      case Measure::Fat:
      case Measure::FatZero: report.shift.push_back(c.first); break;
      case Measure::Graph: report.labels.push_back(c.first); break;
      case Measure::Natarajan:
        report.labels.push_back(c.first);
        report.alt_labels.push_back(c.second);
        break;
      case Measure::VC: break;
    }
  }
  return report;
}

std::vector<double> column(const PatternClass& cls, int point) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cls.size()));
  for (const auto& p : cls.patterns()) out.push_back(p[static_cast<std::size_t>(point)]);
  return out;
}

std::vector<double> attained(const PatternClass& cls, int point) {
  auto vals = column(cls, point);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

bool above(double v, double r, double gamma) { return v - r >= gamma - kMarginTolerance; }
bool below(double v, double r, double gamma) { return r - v >= gamma - kMarginTolerance; }

Code margin_code(const std::vector<double>& col, double r, double gamma) {
  Code code(col.size(), 0);
  for (std::size_t p = 0; p < col.size(); ++p)
    code[p] = above(col[p], r, gamma) ? 1 : (below(col[p], r, gamma) ? -1 : 0);
  return code;
}

bool dominated_by(const Code& a, const Code& b) {
  for (std::size_t p = 0; p < a.size(); ++p)
    if (a[p] != 0 && a[p] != b[p]) return false;
  return true;
}

// Distinct margin signatures at a point over the candidate shifts, keeping
// only maximal ones. The smallest shift producing a signature represents it.
std::vector<Choice> maximal_shift_choices(const PatternClass& cls, int point, double gamma,
                                          bool require_both_sides) {
  const auto col = column(cls, point);
  std::vector<Choice> distinct;
  for (double r : shift_candidates(cls, point, gamma)) {
    Code code = margin_code(col, r, gamma);
    if (require_both_sides && !has_both_sides(code)) continue;
    const bool known = std::any_of(distinct.begin(), distinct.end(),
                                   [&](const Choice& c) { return c.code == code; });
    if (!known) distinct.push_back({std::move(code), r, 0.0});
  }
  std::vector<Choice> out;
  for (std::size_t a = 0; a < distinct.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < distinct.size() && !dominated; ++b)
      dominated = b != a && dominated_by(distinct[a].code, distinct[b].code);
    if (!dominated) out.push_back(distinct[a]);
  }
  return out;
}

PointChoices sign_choices(const PatternClass& cls) {
  PointChoices choices(static_cast<std::size_t>(cls.num_points()));
  for (int i = 0; i < cls.num_points(); ++i) {
    Code code;
    for (const auto& p : cls.patterns()) {
      const double v = p[static_cast<std::size_t>(i)];
      code.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
    }
    if (has_both_sides(code)) choices[static_cast<std::size_t>(i)].push_back({code, 0.0, 0.0});
  }
  return choices;
}

void require_kind(const PatternClass& cls, std::initializer_list<PatternKind> kinds,
                  const char* what) {
  if (std::find(kinds.begin(), kinds.end(), cls.kind()) == kinds.end())
    throw std::invalid_argument(std::string(what) + " does not accept a " +
                                to_string(cls.kind()) + " class");
}

void require_gamma(double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be > 0");
}

}  // namespace

DimensionReport vc_dim(const PatternClass& cls) {
  require_kind(cls, {PatternKind::Binary, PatternKind::Ternary}, "vc_dim");
  check_guard(cls, kVcGuard, "vc_dim");
  return search(sign_choices(cls), cls.size(), Measure::VC);
}

std::uint64_t growth_function(const PatternClass& cls, int m) {
  require_kind(cls, {PatternKind::Binary}, "growth_function");
  check_guard(cls, kVcGuard, "growth_function");
  if (m < 0 || m > cls.num_points()) throw std::invalid_argument("m out of range");
  const std::uint64_t cap = std::min<std::uint64_t>(std::uint64_t{1} << m,
                                                    static_cast<std::uint64_t>(cls.size()));
  std::vector<std::uint32_t> masks;
  for (const auto& p : cls.patterns()) {
    std::uint32_t b = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0) b |= std::uint32_t{1} << i;
    masks.push_back(b);
  }
  std::uint64_t best = 0;
  std::vector<bool> pick(static_cast<std::size_t>(cls.num_points()), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    std::uint32_t sel = 0;
    for (std::size_t i = 0; i < pick.size(); ++i)
      if (pick[i]) sel |= std::uint32_t{1} << i;
    std::set<std::uint32_t> seen;
    for (auto b : masks) seen.insert(b & sel);
    best = std::max<std::uint64_t>(best, seen.size());
  } while (best < cap && std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

DimensionReport graph_dim(const PatternClass& cls) {
  require_kind(cls, {PatternKind::Categorical, PatternKind::Binary}, "graph_dim");
  check_guard(cls, kGraphGuard, "graph_dim");
  PointChoices choices(static_cast<std::size_t>(cls.num_points()));
  for (int i = 0; i < cls.num_points(); ++i) {
    const auto col = column(cls, i);
    for (double a : attained(cls, i)) {
      Code code;
      for (double v : col) code.push_back(v == a ? 1 : -1);
      if (has_both_sides(code)) choices[static_cast<std::size_t>(i)].push_back({code, a, 0.0});
    }
  }
  return search(choices, cls.size(), Measure::Graph);
}

DimensionReport natarajan_dim(const PatternClass& cls) {
  require_kind(cls, {PatternKind::Categorical, PatternKind::Binary}, "natarajan_dim");
  check_guard(cls, kGraphGuard, "natarajan_dim");
  PointChoices choices(static_cast<std::size_t>(cls.num_points()));
  for (int i = 0; i < cls.num_points(); ++i) {
    const auto col = column(cls, i);
    const auto vals = attained(cls, i);
    for (std::size_t a = 0; a < vals.size(); ++a) {
      for (std::size_t b = a + 1; b < vals.size(); ++b) {
        Code code;
        for (double v : col) code.push_back(v == vals[a] ? 1 : (v == vals[b] ? -1 : 0));
        choices[static_cast<std::size_t>(i)].push_back({code, vals[a], vals[b]});
      }
    }
  }
  return search(choices, cls.size(), Measure::Natarajan);
}

std::vector<double> shift_candidates(const PatternClass& cls, int point, double gamma) {
  std::vector<double> critical;
  for (double v : attained(cls, point)) {
    critical.push_back(v - gamma);
    critical.push_back(v + gamma);
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  if (critical.empty()) return {};
  std::vector<double> out{critical.front() - 1.0};
  for (std::size_t t = 0; t < critical.size(); ++t) {
    out.push_back(critical[t]);
    if (t + 1 < critical.size()) out.push_back(0.5 * (critical[t] + critical[t + 1]));
  }
  out.push_back(critical.back() + 1.0);
  return out;
}

DimensionReport fat_dim(const PatternClass& cls, double gamma) {
  require_kind(cls, {PatternKind::Real}, "fat_dim");
  require_gamma(gamma);
  check_guard(cls, kFatGuard, "fat_dim");
  PointChoices choices(static_cast<std::size_t>(cls.num_points()));
  for (int i = 0; i < cls.num_points(); ++i)
    choices[static_cast<std::size_t>(i)] = maximal_shift_choices(cls, i, gamma, true);
  return search(choices, cls.size(), Measure::Fat);
}

DimensionReport fat_zero_dim(const PatternClass& cls, double gamma) {
  require_kind(cls, {PatternKind::Real}, "fat_zero_dim");
  require_gamma(gamma);
  check_guard(cls, kFatGuard, "fat_zero_dim");
  PointChoices choices(static_cast<std::size_t>(cls.num_points()));
  for (int i = 0; i < cls.num_points(); ++i) {
    Code code = margin_code(column(cls, i), 0.0, gamma);
    if (has_both_sides(code)) choices[static_cast<std::size_t>(i)].push_back({code, 0.0, 0.0});
  }
  return search(choices, cls.size(), Measure::FatZero);
}

namespace {

// Global shift vectors r' built as grid values on an index set S and zero
// elsewhere. Sets are tried by size, and a set's shifts are extended one
// point at a time while the decided points stay shattered at zero.
struct ShiftSearch {
  const PatternClass& cls;
  double gamma;
  std::vector<std::vector<double>> grids;
  std::vector<int> set;
  std::vector<double> shift;
  DimensionReport best;

  bool prefix_shattered(std::size_t count) const {
    std::vector<bool> seen(std::size_t{1} << count, false);
    std::size_t distinct = 0;
    for (const auto& p : cls.patterns()) {
      std::size_t key = 0;
      bool decided = true;
      for (std::size_t t = 0; t < count && decided; ++t) {
        const auto i = static_cast<std::size_t>(set[t]);
        const double d = p[i] - shift[i];
        if (d >= gamma - kMarginTolerance) key |= std::size_t{1} << t;
        else if (d > -gamma + kMarginTolerance) decided = false;
      }
      if (decided && !seen[key]) {
        seen[key] = true;
        ++distinct;
      }
    }
    return distinct == seen.size();
  }

  bool extend(std::size_t pos) {
    if (pos == set.size()) {
      auto report = fat_zero_dim(shift_class(cls, shift), gamma);
      if (report.dimension < static_cast<int>(set.size())) return false;
      report.shift.clear();
      for (int i : report.witness) report.shift.push_back(shift[static_cast<std::size_t>(i)]);
      best = std::move(report);
      return true;
    }
    const auto i = static_cast<std::size_t>(set[pos]);
    for (double r : grids[i]) {
      shift[i] = r;
      if (prefix_shattered(pos + 1) && extend(pos + 1)) return true;
    }
    shift[i] = 0.0;
    return false;
  }

  bool any_set_of_size(int size) {
    const int m = cls.num_points();
    set.resize(static_cast<std::size_t>(size));
    for (int t = 0; t < size; ++t) set[static_cast<std::size_t>(t)] = t;
    for (;;) {
      if (extend(0)) return true;
      int t = size - 1;
      while (t >= 0 && set[static_cast<std::size_t>(t)] == m - size + t) --t;
      if (t < 0) return false;
      ++set[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < size; ++u)
        set[static_cast<std::size_t>(u)] = set[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
};

}  // namespace

DimensionReport max_fat_zero_over_shifts(const PatternClass& cls, double gamma) {
  require_kind(cls, {PatternKind::Real}, "max_fat_zero_over_shifts");
  require_gamma(gamma);
  check_guard(cls, kFatGuard, "max_fat_zero_over_shifts");
  const int m = cls.num_points();
  ShiftSearch s{cls, gamma, {}, {}, std::vector<double>(static_cast<std::size_t>(m), 0.0), {}};
  for (int i = 0; i < m; ++i) {
    std::vector<double> grid;
    for (const auto& c : maximal_shift_choices(cls, i, gamma, true)) grid.push_back(c.first);
    s.grids.push_back(std::move(grid));
  }
  s.best = fat_zero_dim(cls, gamma);
  int cap = cls.size() <= 1 ? 0 : std::bit_width(static_cast<unsigned>(cls.size())) - 1;
  cap = std::min(cap, m);
  for (int size = s.best.dimension + 1; size <= cap; size = s.best.dimension + 1) {
    std::fill(s.shift.begin(), s.shift.end(), 0.0);
    if (!s.any_set_of_size(size)) break;
  }
  return s.best;
}

PatternClass disambiguate(const PatternClass& cls) {
  require_kind(cls, {PatternKind::Ternary}, "disambiguate");
  check_guard(cls, kFatGuard, "disambiguate");
  const double g = cls.gamma();
  std::vector<std::vector<int>> codes;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (const auto& p : cls.patterns()) {
    std::vector<int> row;
    for (double v : p) {
      if (v == 0) cells.emplace_back(codes.size(), row.size());
      row.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
    }
    codes.push_back(std::move(row));
  }
  const int current = vc_dim(cls).dimension;

  // Cells in row-major order, +1 before -1. Resolving a cell never lowers
  // the VC dimension, so a prefix that exceeds `current` is abandoned.
  std::int64_t evaluations = 0;
  std::vector<int> tried(cells.size(), 0);
  std::size_t depth = 0;
  while (depth < cells.size()) {
    auto& cell = codes[cells[depth].first][cells[depth].second];
    if (tried[depth] == 2) {
      tried[depth] = 0;
      cell = 0;
      if (depth == 0) throw InternalError("no resolution of the ambiguous cells preserves VC");
      --depth;
      continue;
    }
    cell = tried[depth]++ == 0 ? 1 : -1;
    if (++evaluations > kDisambiguateBudget)
      throw GuardExceeded("disambiguate: search budget exhausted");
    if (vc_dim(PatternClass::ternary(g, codes)).dimension <= current) ++depth;
  }
  return PatternClass::binary(codes);
}

bool verify_witness(const PatternClass& cls, const DimensionReport& report, Measure measure,
                    double gamma) {
  const std::size_t d = report.witness.size();
  if (report.dimension != static_cast<int>(d) || d > 30) return false;
  for (std::size_t t = 0; t < d; ++t) {
    if (report.witness[t] < 0 || report.witness[t] >= cls.num_points()) return false;
    if (t > 0 && report.witness[t] <= report.witness[t - 1]) return false;
  }
  const bool shifted = measure == Measure::Fat || measure == Measure::FatZero;
  if (shifted && report.shift.size() != d) return false;
  if (measure == Measure::FatZero &&
      std::any_of(report.shift.begin(), report.shift.end(), [](double r) { return r != 0.0; }))
    return false;
  if ((measure == Measure::Graph || measure == Measure::Natarajan) && report.labels.size() != d)
    return false;
  if (measure == Measure::Natarajan && report.alt_labels.size() != d) return false;

  auto matches = [&](const std::vector<double>& p, std::size_t t, bool bit) {
    const double v = p[static_cast<std::size_t>(report.witness[t])];
    switch (measure) {
      case Measure::VC: return bit ? v > 0 : v < 0;
      case Measure::Graph: return bit ? v == report.labels[t] : v != report.labels[t];
      case Measure::Natarajan: return v == (bit ? report.labels[t] : report.alt_labels[t]);
      case Measure::Fat:
      case Measure::FatZero:
        return bit ? above(v, report.shift[t], gamma) : below(v, report.shift[t], gamma);
    }
    return false;
  };
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d); ++bits) {
    bool found = false;
    for (const auto& p : cls.patterns()) {
      bool all = true;
      for (std::size_t t = 0; t < d && all; ++t) all = matches(p, t, (bits >> t) & 1u);
      if (all) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace advgame
