#pragma once

#include <span>
#include <string>
#include <vector>

#include "advgame/model.hpp"

namespace advgame {

enum class LossKind { ZeroOne, L1, L2 };

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& name);

// Finite hypothesis class as a |H| x |Z| prediction table.
class HypothesisClass {
 public:
  HypothesisClass() = default;

  static HypothesisClass categorical(int num_labels, const std::vector<std::vector<int>>& rows);
  // Predictions are clamped to [0, 1].
  static HypothesisClass real(const std::vector<std::vector<double>>& rows);

  LabelKind kind() const { return kind_; }
  int num_labels() const { return num_labels_; }
  int size() const { return rows_; }
  int domain_size() const { return cols_; }

  double operator()(int h, int z) const {
    return table_[static_cast<std::size_t>(h) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(z)];
  }
  std::span<const double> row(int h) const {
    return {table_.data() + static_cast<std::size_t>(h) * static_cast<std::size_t>(cols_),
            static_cast<std::size_t>(cols_)};
  }

  std::vector<std::string> check() const;

 private:
  LabelKind kind_ = LabelKind::Categorical;
  int num_labels_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> table_;
};

struct MixtureTerm {
  int hypothesis = 0;
  double weight = 0.0;

  friend bool operator==(const MixtureTerm&, const MixtureTerm&) = default;
};

// A learner's mixed strategy: explicit (hypothesis, weight) pairs.
struct MixtureStrategy {
  std::vector<MixtureTerm> terms;

  static MixtureStrategy pure(int h);
  // The uniform mixture over a list of hypotheses; repeated indices are
  // merged and carry proportionally more weight.
  static MixtureStrategy uniform(std::span<const int> hypotheses);

  double total_weight() const;
  bool is_valid(int class_size, double tol = kSimplexTolerance) const;
};

// Throws std::invalid_argument when the loss kind does not fit the class.
void require_compatible(const HypothesisClass& cls, LossKind kind);

double point_loss(const HypothesisClass& cls, int h, int z, double y, LossKind kind);

double mixture_loss(const HypothesisClass& cls, const MixtureStrategy& mixture, int z, double y,
                    LossKind kind);

// Worst case over rho(x) of the mixture loss at a single example.
double robust_loss(const HypothesisClass& cls, const MixtureStrategy& mixture,
                   const std::vector<int>& corruptions, double y, LossKind kind);

// Mean over the sample of the per-example worst-case mixture loss.
double empirical_risk(const MixtureStrategy& mixture, const LabeledSample& sample,
                      const CorruptionMap& rho, const HypothesisClass& cls, LossKind kind);

// Exact expectation over the finite clean domain.
double true_risk(const MixtureStrategy& mixture, const Distribution& dist, const Concept& target,
                 const CorruptionMap& rho, const HypothesisClass& cls, LossKind kind);

}  // namespace advgame
