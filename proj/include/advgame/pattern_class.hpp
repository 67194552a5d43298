#pragma once

#include <span>
#include <string>
#include <vector>

#include "advgame/hypothesis.hpp"

namespace advgame {

struct GameInstance;

// Cell alphabet of a pattern class.
//   Binary:      {-1, +1}
//   Categorical: {0, ..., l-1}
//   Ternary:     {-gamma, +gamma} plus the ambiguous cell, stored as 0.0
//   Real:        any finite value (loss and hypothesis classes live in [-1, 1])
enum class PatternKind { Binary, Categorical, Ternary, Real };

std::string to_string(PatternKind kind);
PatternKind pattern_kind_from_string(const std::string& name);

inline constexpr double kStar = 0.0;

// A finite function class restricted to m points: a set of length-m vectors.
// Patterns are deduplicated and kept in lexicographic order.
class PatternClass {
 public:
  PatternClass() = default;
  PatternClass(PatternKind kind, int num_points, std::vector<std::vector<double>> patterns,
               double gamma = 0.0);

  static PatternClass binary(const std::vector<std::vector<int>>& patterns);
  static PatternClass categorical(const std::vector<std::vector<int>>& patterns);
  // Codes are -1, 0 (ambiguous) or +1; cells become -gamma, kStar, +gamma.
  static PatternClass ternary(double gamma, const std::vector<std::vector<int>>& codes);
  static PatternClass real(std::vector<std::vector<double>> patterns);

  PatternKind kind() const { return kind_; }
  int num_points() const { return num_points_; }
  int size() const { return static_cast<int>(patterns_.size()); }
  double gamma() const { return gamma_; }
  const std::vector<std::vector<double>>& patterns() const { return patterns_; }
  const std::vector<double>& operator[](int i) const { return patterns_[static_cast<std::size_t>(i)]; }
  double max_abs_entry() const;

  friend bool operator==(const PatternClass&, const PatternClass&) = default;

 private:
  PatternKind kind_ = PatternKind::Real;
  int num_points_ = 0;
  double gamma_ = 0.0;
  std::vector<std::vector<double>> patterns_;
};

// Binary patterns as reals in {-1, +1}; real patterns unchanged.
PatternClass as_real(const PatternClass& cls);

// Hypothesis class restricted to a list of corrupted points.
PatternClass restrict_class(const HypothesisClass& cls, std::span<const int> points);

struct LabeledPoint {
  int z = 0;
  double y = 0.0;
};

// Loss patterns over (z, y) pairs, one per hypothesis: binary (+1 = mistake)
// for zero-one, real for L1 / L2.
PatternClass loss_class(const HypothesisClass& cls, std::span<const LabeledPoint> points,
                        LossKind kind);

// The j-th loss class: every hypothesis evaluated at the j-th corruption of
// each sample example. Lists shorter than j+1 repeat their last element.
PatternClass f_j_class(const GameInstance& instance, int j);

// Pointwise combination of one member from each class, over all tuples.
enum class Combine { Max, And, Or, Parity };
inline constexpr double kComposeGuard = 1e6;
PatternClass kmax_class(std::span<const PatternClass> classes);
PatternClass compose_class(std::span<const PatternClass> classes, Combine op);

// Transforms used by the loss-class arguments.
PatternClass difference_class(const PatternClass& cls, std::span<const double> labels);
PatternClass abs_class(const PatternClass& cls);
PatternClass square_class(const PatternClass& cls);
PatternClass negate_class(const PatternClass& cls);
PatternClass shift_class(const PatternClass& cls, std::span<const double> shift);

struct DerivedClasses {
  PatternClass difference;
  PatternClass abs;
  PatternClass square;
};
DerivedClasses derived_classes(const PatternClass& cls, std::span<const double> labels);

}  // namespace advgame
