#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "advgame/pattern_class.hpp"

namespace advgame {

inline constexpr int kRademacherExactGuard = 22;

enum class RademacherMode { Exact, MonteCarlo };
std::string to_string(RademacherMode mode);

struct RademacherEstimate {
  double value = 0.0;
  RademacherMode mode = RademacherMode::Exact;
  std::uint64_t trials = 0;    // sign vectors averaged
  double standard_error = 0.0; // zero in exact mode
};

// Binary classes are read as +-1 reals. Values are never rescaled.
RademacherEstimate rademacher_exact(const PatternClass& cls);
RademacherEstimate rademacher_mc(const PatternClass& cls, std::uint64_t trials,
                                 std::uint64_t seed);

struct MaxConvReport {
  double max_class_value = 0.0;  // exact complexity of the pointwise-max class
  double augmented_value = 0.0;  // with every sampled max-conv member added
  double max_excess = 0.0;       // largest single-member gain over the max class
  int violations = 0;            // members whose gain exceeds the tolerance
  int samples = 0;
  bool passed = false;
};

inline constexpr double kMaxConvTolerance = 1e-9;
inline constexpr int kMaxConvTerms = 3;

// Samples members max_j sum_t alpha_t f_t^(j) with one coefficient vector
// alpha shared by all classes (T in 1..kMaxConvTerms terms, alpha uniform on
// the simplex, f_t^(j) uniform in F_j) and compares their Rademacher
// contribution against the exact complexity of the pointwise-max class.
MaxConvReport maxconv_identity_check(std::span<const PatternClass> classes, int samples,
                                     std::uint64_t seed);

}  // namespace advgame
