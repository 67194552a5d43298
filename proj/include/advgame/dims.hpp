#pragma once

#include <cstdint>
#include <vector>

#include "advgame/pattern_class.hpp"

namespace advgame {

// Exhaustive-search guards on the number of points.
inline constexpr int kVcGuard = 24;
inline constexpr int kGraphGuard = 20;
inline constexpr int kFatGuard = 18;
// Slack on margin comparisons, so that shifts placed exactly at v - gamma
// still count v as "above".
inline constexpr double kMarginTolerance = 1e-12;

enum class Measure { VC, Graph, Natarajan, Fat, FatZero };

struct DimensionReport {
  int dimension = 0;
  std::vector<int> witness;        // shattered points, ascending
  std::vector<double> shift;       // fat: shift per witness point (zeros for FatZero)
  std::vector<double> labels;      // graph: f; natarajan: f_1
  std::vector<double> alt_labels;  // natarajan: f_2
};

// Largest shattered subset of a binary class (Ternary classes are accepted
// and use the ambiguity-aware notion: ambiguous cells never count).
DimensionReport vc_dim(const PatternClass& cls);
std::uint64_t growth_function(const PatternClass& cls, int m);
DimensionReport graph_dim(const PatternClass& cls);
DimensionReport natarajan_dim(const PatternClass& cls);
DimensionReport fat_dim(const PatternClass& cls, double gamma);
DimensionReport fat_zero_dim(const PatternClass& cls, double gamma);

// Per-point candidate shifts: v - gamma and v + gamma for every attained
// value v, midpoints of consecutive critical values, and one value beyond
// each end. Sorted ascending.
std::vector<double> shift_candidates(const PatternClass& cls, int point, double gamma);

// The right-hand side of fat_gamma(F) = max_r fat0_gamma(F - r). Global
// shift vectors take candidate-grid values (one per maximal above/below
// signature) on an index set and 0 elsewhere;
// each is scored by fat_zero_dim on the whole shifted class.
DimensionReport max_fat_zero_over_shifts(const PatternClass& cls, double gamma);

// Resolves every ambiguous cell of a ternary class to +-1 without raising
// its VC dimension. Cells are tried one at a time (+1 first) with
// backtracking when neither choice keeps the dimension. Throws InternalError
// if no resolution exists, GuardExceeded past kDisambiguateBudget VC calls.
inline constexpr std::int64_t kDisambiguateBudget = 2'000'000;
PatternClass disambiguate(const PatternClass& cls);

// Recheck a report by direct lookup of every required sign pattern.
bool verify_witness(const PatternClass& cls, const DimensionReport& report, Measure measure,
                    double gamma = 0.0);

}  // namespace advgame
