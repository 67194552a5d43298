#pragma once

#include <functional>

namespace advgame {

inline constexpr double kQuadratureTolerance = 1e-8;
inline constexpr int kQuadratureMaxDepth = 40;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool depth_limited = false;  // some subinterval stopped at max depth
};

// Adaptive Simpson on [a, b] with interval bisection and Richardson
// correction. f is never evaluated outside [a, b].
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol = kQuadratureTolerance,
                                  int max_depth = kQuadratureMaxDepth);

}  // namespace advgame
