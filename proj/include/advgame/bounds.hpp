#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advgame/hypothesis.hpp"
#include "advgame/pattern_class.hpp"

namespace advgame {

// gamma -> fat_gamma, non-increasing.
//   Zero:  fat = 0
//   Power: fat = scale * gamma^(-exponent)
//   Step:  fat = value of the first step whose threshold is >= gamma, else 0.
//          Steps are sorted by threshold with non-increasing values.
struct FatStep {
  double threshold = 0.0;
  double value = 0.0;
  friend bool operator==(const FatStep&, const FatStep&) = default;
};

struct FatProfile {
  enum class Kind { Zero, Power, Step };
  Kind kind = Kind::Zero;
  double scale = 1.0;
  double exponent = 0.0;
  std::vector<FatStep> steps;

  static FatProfile zero() { return {}; }
  static FatProfile power(double scale, double exponent);
  static FatProfile step(std::vector<FatStep> steps);
  // Exact profile of a finite real class. fat changes only where gamma is
  // half a gap between two values attained at the same point.
  static FatProfile of_class(const PatternClass& cls);

  double operator()(double gamma) const;
  std::vector<double> breakpoints() const;
  void check() const;
};

std::string to_string(FatProfile::Kind kind);
FatProfile::Kind fat_profile_kind_from_string(const std::string& name);

struct BoundConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  int k = 1;
  std::optional<double> vc;
  std::optional<double> graph_dim;
  std::optional<double> natarajan_dim;
  int num_labels = 2;
  std::optional<FatProfile> fat;
  double c = 1.0;        // scale inside fat_{c gamma}
  double c1 = 1.0;       // complexity term
  double c2 = 1.0;       // confidence term
  double c_prime = 1.0;  // hyperplane chain constant
  double k_tilde = 1.0;  // Dudley constant

  void check() const;
};

// ceil((1/eps^2) (c1 k ln(max(k,2)) d + c2 ln(1/delta)))
std::int64_t m0_formula(const BoundConfig& cfg, double dimension);

std::int64_t m0_binary(const BoundConfig& cfg);
std::int64_t m0_multiclass(const BoundConfig& cfg);
// Graph dimension replaced by 4.67 log2(l) d_N.
double natarajan_to_graph(double natarajan_dim, int num_labels);
std::int64_t m0_multiclass_natarajan(const BoundConfig& cfg);

// int_alpha^1 sqrt(fat(scale * gamma) ln(2/gamma)) dgamma. alpha = 0 sums
// dyadic pieces and throws DivergentIntegral when they stop shrinking.
double entropy_integral(const FatProfile& profile, double scale, double alpha);

// 4 alpha + 12 sqrt(k_tilde / n) * entropy_integral(fat, c, alpha)
double dudley_rademacher_bound(const BoundConfig& cfg, std::int64_t n, double alpha);

// m_H from the alpha = 0 integral; L2 evaluates the profile at half scale.
double regression_complexity(const BoundConfig& cfg, LossKind loss);
std::int64_t m0_regression(const BoundConfig& cfg, LossKind loss);

// (2/3) ((ln(2/alpha))^1.5 - (ln 2)^1.5)
double hyperplane_integral_closed_form(double alpha);

struct HyperplaneComplexity {
  double rademacher_bound = 0.0;
  double alpha = 0.0;
  std::int64_t m0 = 0;        // smallest S with 2 R(S) + 3 sqrt(ln(2/delta) / (2S)) <= eps
  std::int64_t m0_order = 0;  // ceil((1/eps^2)(k ln^2(k/eps) + ln(1/delta)))
};

// Rademacher bound with fat_gamma <= 1/gamma^2 per class, k-fold max
// composition and alpha = 1/sqrt(S):
//   4 alpha + 8 c' sqrt(2 k ln(3k) / S) ((ln(2/alpha))^1.5 - (ln 2)^1.5)
double hyperplane_rademacher(int k, double sample_size, double c_prime = 1.0);
HyperplaneComplexity hyperplane_complexity(double epsilon, double delta, int k,
                                           double sample_size, double c_prime = 1.0);

}  // namespace advgame
