#include "advgame/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace advgame {

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::ZeroOne: return "zero-one";
    case LossKind::L1: return "l1";
    case LossKind::L2: return "l2";
  }
  return "unknown";
}

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "zero-one" || name == "zero_one" || name == "01") return LossKind::ZeroOne;
  if (name == "l1" || name == "L1") return LossKind::L1;
  if (name == "l2" || name == "L2") return LossKind::L2;
  throw std::invalid_argument("unknown loss kind: " + name);
}

HypothesisClass HypothesisClass::categorical(int num_labels,
                                             const std::vector<std::vector<int>>& rows) {
  HypothesisClass c;
  c.kind_ = LabelKind::Categorical;
  c.num_labels_ = num_labels;
  c.rows_ = static_cast<int>(rows.size());
  c.cols_ = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != c.cols_) {
      throw std::invalid_argument("HypothesisClass: ragged table");
    }
    c.table_.insert(c.table_.end(), r.begin(), r.end());
  }
  return c;
}

HypothesisClass HypothesisClass::real(const std::vector<std::vector<double>>& rows) {
  HypothesisClass c;
  c.kind_ = LabelKind::Real;
  c.num_labels_ = 0;
  c.rows_ = static_cast<int>(rows.size());
  c.cols_ = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != c.cols_) {
      throw std::invalid_argument("HypothesisClass: ragged table");
    }
    for (double v : r) c.table_.push_back(std::clamp(v, 0.0, 1.0));
  }
  return c;
}

std::vector<std::string> HypothesisClass::check() const {
  std::vector<std::string> out;
  if (rows_ < 1) out.emplace_back("hypothesis class is empty");
  for (int h = 0; h < rows_; ++h) {
    for (int z = 0; z < cols_; ++z) {
      const double v = (*this)(h, z);
      const bool ok = kind_ == LabelKind::Categorical
                          ? (v == std::floor(v) && v >= 0 && v < num_labels_)
                          : (v >= 0.0 && v <= 1.0);
      if (!ok) {
        out.push_back("hypothesis " + std::to_string(h) + " has an invalid prediction at z=" +
                      std::to_string(z));
        break;
      }
    }
  }
  return out;
}

MixtureStrategy MixtureStrategy::pure(int h) { return MixtureStrategy{{{h, 1.0}}}; }

MixtureStrategy MixtureStrategy::uniform(std::span<const int> hypotheses) {
  if (hypotheses.empty()) throw std::invalid_argument("MixtureStrategy::uniform: empty list");
  std::map<int, int> counts;
  for (int h : hypotheses) ++counts[h];
  MixtureStrategy m;
  const double total = static_cast<double>(hypotheses.size());
  for (auto [h, c] : counts) m.terms.push_back({h, static_cast<double>(c) / total});
  return m;
}

double MixtureStrategy::total_weight() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

bool MixtureStrategy::is_valid(int class_size, double tol) const {
  if (terms.empty()) return false;
  for (const auto& t : terms) {
    if (t.hypothesis < 0 || t.hypothesis >= class_size) return false;
    if (!(t.weight >= 0.0 && t.weight <= 1.0 + tol)) return false;
  }
  return std::abs(total_weight() - 1.0) <= tol;
}

void require_compatible(const HypothesisClass& cls, LossKind kind) {
  const bool wants_categorical = kind == LossKind::ZeroOne;
  if (wants_categorical != (cls.kind() == LabelKind::Categorical)) {
    throw std::invalid_argument("loss " + to_string(kind) +
                                " does not fit the hypothesis class label kind");
  }
}

double point_loss(const HypothesisClass& cls, int h, int z, double y, LossKind kind) {
  if (h < 0 || h >= cls.size() || z < 0 || z >= cls.domain_size()) {
    throw std::invalid_argument("point_loss: index out of range");
  }
  require_compatible(cls, kind);
  const double p = cls(h, z);
  switch (kind) {
    case LossKind::ZeroOne:
      if (y != std::floor(y)) throw std::invalid_argument("point_loss: zero-one needs a category");
      return p != y ? 1.0 : 0.0;
    case LossKind::L1:
      return std::abs(p - y);
    case LossKind::L2:
      return (p - y) * (p - y);
  }
  return 0.0;
}

double mixture_loss(const HypothesisClass& cls, const MixtureStrategy& mixture, int z, double y,
                    LossKind kind) {
  double loss = 0.0;
  for (const auto& t : mixture.terms) loss += t.weight * point_loss(cls, t.hypothesis, z, y, kind);
  return loss;
}

double robust_loss(const HypothesisClass& cls, const MixtureStrategy& mixture,
                   const std::vector<int>& corruptions, double y, LossKind kind) {
  double worst = 0.0;
  for (int z : corruptions) worst = std::max(worst, mixture_loss(cls, mixture, z, y, kind));
  return worst;
}

double empirical_risk(const MixtureStrategy& mixture, const LabeledSample& sample,
                      const CorruptionMap& rho, const HypothesisClass& cls, LossKind kind) {
  if (sample.examples.empty()) throw std::invalid_argument("empirical_risk: empty sample");
  // Accumulated as sum of unit * loss so that the full-enumeration sample
  // reproduces true_risk under the uniform distribution bit for bit.
  const double unit = 1.0 / static_cast<double>(sample.size());
  double total = 0.0;
  for (const auto& e : sample.examples) {
    total += unit * robust_loss(cls, mixture, rho.at(e.x), e.y, kind);
  }
  return total;
}

double true_risk(const MixtureStrategy& mixture, const Distribution& dist, const Concept& target,
                 const CorruptionMap& rho, const HypothesisClass& cls, LossKind kind) {
  double total = 0.0;
  for (int x = 0; x < dist.size(); ++x) {
    const double w = dist.weights[static_cast<std::size_t>(x)];
    if (w == 0.0) continue;
    total += w * robust_loss(cls, mixture, rho.at(x), target(x), kind);
  }
  return total;
}

}  // namespace advgame
