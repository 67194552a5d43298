#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace advgame {

// Tolerance for "sums to one" checks on distributions and mixed strategies.
inline constexpr double kSimplexTolerance = 1e-9;

enum class LabelKind { Categorical, Real };

// An index set {0, ..., size-1}. Every payload lives in tables keyed by index.
struct FiniteDomain {
  int size = 1;
};

// Probability weights over a finite domain. Never renormalized implicitly;
// call normalize() to do it explicitly.
struct Distribution {
  std::vector<double> weights;

  static Distribution uniform(int n);
  static Distribution point_mass(int n, int x);
  static Distribution normalize(std::vector<double> raw);

  int size() const { return static_cast<int>(weights.size()); }
  double sum() const;
  bool is_normalized(double tol = kSimplexTolerance) const;
};

// For every clean input x an ordered list of corrupted inputs. The order is
// significant: position j of every list defines the j-th loss class.
struct CorruptionMap {
  int budget = 1;
  std::vector<std::vector<int>> lists;

  const std::vector<int>& at(int x) const { return lists.at(static_cast<std::size_t>(x)); }
  int domain_size() const { return static_cast<int>(lists.size()); }
  int max_list_size() const;
  std::size_t total_size() const;
};

// Target labelling of the clean domain. Categorical labels are stored as
// exact integers in a double.
struct Concept {
  LabelKind kind = LabelKind::Categorical;
  int num_labels = 2;
  std::vector<double> labels;

  static Concept categorical(const std::vector<int>& labels, int num_labels);
  // Labels are clamped to [0, 1].
  static Concept real(std::vector<double> labels);

  double operator()(int x) const { return labels.at(static_cast<std::size_t>(x)); }
  int domain_size() const { return static_cast<int>(labels.size()); }
};

struct Example {
  int x = 0;
  double y = 0.0;

  friend bool operator==(const Example&, const Example&) = default;
};

struct LabeledSample {
  std::vector<Example> examples;

  int size() const { return static_cast<int>(examples.size()); }
  const Example& operator[](int i) const { return examples[static_cast<std::size_t>(i)]; }
  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// m i.i.d. draws from `dist`, labelled by `target`. Pure in all arguments.
LabeledSample draw_sample(const Distribution& dist, const Concept& target, int m,
                          std::uint64_t seed);

// The full enumeration of the domain, one example per x in index order.
LabeledSample enumerate_domain(const Concept& target);

std::vector<std::string> check_distribution(const Distribution& dist);
std::vector<std::string> check_corruption_map(const CorruptionMap& rho, int z_size);
std::vector<std::string> check_concept(const Concept& target);

}  // namespace advgame
