#include "advgame/pattern_class.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advgame/errors.hpp"
#include "advgame/instance.hpp"

namespace advgame {

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Binary: return "binary";
    case PatternKind::Categorical: return "categorical";
    case PatternKind::Ternary: return "ternary";
    case PatternKind::Real: return "real";
  }
  return "real";
}

PatternKind pattern_kind_from_string(const std::string& name) {
  if (name == "binary") return PatternKind::Binary;
  if (name == "categorical") return PatternKind::Categorical;
  if (name == "ternary") return PatternKind::Ternary;
  if (name == "real") return PatternKind::Real;
  throw std::invalid_argument("unknown pattern kind '" + name + "'");
}

namespace {

void check_cell(PatternKind kind, double v, double gamma) {
  if (!std::isfinite(v)) throw std::invalid_argument("pattern cell is not finite");
  switch (kind) {
    case PatternKind::Binary:
      if (v != 1.0 && v != -1.0) throw std::invalid_argument("binary cell must be -1 or +1");
      break;
    case PatternKind::Categorical:
      if (v < 0 || v != std::floor(v))
        throw std::invalid_argument("categorical cell must be a nonnegative integer");
      break;
    case PatternKind::Ternary:
      if (v != gamma && v != -gamma && v != kStar)
        throw std::invalid_argument("ternary cell must be -gamma, +gamma or ambiguous");
      break;
    case PatternKind::Real:
      break;
  }
}

}  // namespace

PatternClass::PatternClass(PatternKind kind, int num_points,
                           std::vector<std::vector<double>> patterns, double gamma)
    : kind_(kind), num_points_(num_points), gamma_(gamma), patterns_(std::move(patterns)) {
  if (num_points < 0) throw std::invalid_argument("negative number of points");
  if (kind == PatternKind::Ternary && !(gamma > 0))
    throw std::invalid_argument("ternary class needs gamma > 0");
  if (kind != PatternKind::Ternary) gamma_ = 0.0;
  for (const auto& p : patterns_) {
    if (static_cast<int>(p.size()) != num_points)
      throw std::invalid_argument("pattern length differs from the number of points");
    for (double v : p) check_cell(kind, v, gamma_);
  }
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

namespace {

int width_of(const auto& rows) { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }

std::vector<std::vector<double>> widen(const std::vector<std::vector<int>>& rows, double scale) {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> p;
    p.reserve(r.size());
    for (int v : r) p.push_back(scale * v);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

PatternClass PatternClass::binary(const std::vector<std::vector<int>>& patterns) {
  return {PatternKind::Binary, width_of(patterns), widen(patterns, 1.0)};
}

PatternClass PatternClass::categorical(const std::vector<std::vector<int>>& patterns) {
  return {PatternKind::Categorical, width_of(patterns), widen(patterns, 1.0)};
}

PatternClass PatternClass::ternary(double gamma, const std::vector<std::vector<int>>& codes) {
  for (const auto& r : codes)
    for (int c : r)
      if (c < -1 || c > 1) throw std::invalid_argument("ternary code must be -1, 0 or +1");
  return {PatternKind::Ternary, width_of(codes), widen(codes, gamma), gamma};
}

PatternClass PatternClass::real(std::vector<std::vector<double>> patterns) {
  const int m = width_of(patterns);
  return {PatternKind::Real, m, std::move(patterns)};
}

double PatternClass::max_abs_entry() const {
  double out = 0.0;
  for (const auto& p : patterns_)
    for (double v : p) out = std::max(out, std::abs(v));
  return out;
}

PatternClass as_real(const PatternClass& cls) {
  if (cls.kind() == PatternKind::Real) return cls;
  if (cls.kind() != PatternKind::Binary)
    throw std::invalid_argument("only binary or real classes convert to real");
  return {PatternKind::Real, cls.num_points(), cls.patterns()};
}

PatternClass restrict_class(const HypothesisClass& cls, std::span<const int> points) {
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(cls.size()));
  for (int h = 0; h < cls.size(); ++h) {
    std::vector<double> p;
    p.reserve(points.size());
    for (int z : points) {
      if (z < 0 || z >= cls.domain_size()) throw std::invalid_argument("point out of range");
      p.push_back(cls(h, z));
    }
    rows.push_back(std::move(p));
  }
  const auto kind =
      cls.kind() == LabelKind::Categorical ? PatternKind::Categorical : PatternKind::Real;
  return {kind, static_cast<int>(points.size()), std::move(rows)};
}

PatternClass loss_class(const HypothesisClass& cls, std::span<const LabeledPoint> points,
                        LossKind kind) {
  require_compatible(cls, kind);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(cls.size()));
  for (int h = 0; h < cls.size(); ++h) {
    std::vector<double> p;
    p.reserve(points.size());
    for (const auto& pt : points) {
      if (pt.z < 0 || pt.z >= cls.domain_size()) throw std::invalid_argument("point out of range");
      const double l = point_loss(cls, h, pt.z, pt.y, kind);
      p.push_back(kind == LossKind::ZeroOne ? (l > 0 ? 1.0 : -1.0) : l);
    }
    rows.push_back(std::move(p));
  }
  const auto out_kind = kind == LossKind::ZeroOne ? PatternKind::Binary : PatternKind::Real;
  return {out_kind, static_cast<int>(points.size()), std::move(rows)};
}

PatternClass f_j_class(const GameInstance& instance, int j) {
  if (j < 0 || j >= std::max(instance.budget(), instance.rho.max_list_size()))
    throw std::invalid_argument("corruption position out of range");
  std::vector<LabeledPoint> points;
  points.reserve(instance.sample.examples.size());
  for (const auto& e : instance.sample.examples) {
    const auto& list = instance.rho.at(e.x);
    const auto pos = std::min<std::size_t>(static_cast<std::size_t>(j), list.size() - 1);
    points.push_back({list[pos], e.y});
  }
  return loss_class(instance.hypotheses, points, instance.loss);
}

namespace {

void require_same_width(std::span<const PatternClass> classes) {
  if (classes.empty()) throw std::invalid_argument("need at least one class");
  for (const auto& c : classes) {
    if (c.num_points() != classes.front().num_points())
      throw std::invalid_argument("classes have different numbers of points");
    if (c.size() == 0) throw std::invalid_argument("empty class");
  }
}

double combine(Combine op, double a, double b) {
  switch (op) {
    case Combine::Max:
    case Combine::Or: return std::max(a, b);
    case Combine::And: return std::min(a, b);
    case Combine::Parity: return a == b ? -1.0 : 1.0;
  }
  return a;
}

}  // namespace

PatternClass compose_class(std::span<const PatternClass> classes, Combine op) {
  require_same_width(classes);
  const PatternKind kind = classes.front().kind();
  if (kind != PatternKind::Binary && kind != PatternKind::Real)
    throw std::invalid_argument("composition needs binary or real classes");
  if (op != Combine::Max && kind != PatternKind::Binary)
    throw std::invalid_argument("logical composition needs binary classes");
  double product = 1.0;
  for (const auto& c : classes) {
    if (c.kind() != kind) throw std::invalid_argument("classes have mixed kinds");
    product *= c.size();
  }
  if (product > kComposeGuard)
    throw GuardExceeded("product of class sizes exceeds " + std::to_string(kComposeGuard));

  const int m = classes.front().num_points();
  std::vector<std::vector<double>> out;
  std::vector<int> idx(classes.size(), 0);
  while (true) {
    std::vector<double> p = classes[0][idx[0]];
    for (std::size_t c = 1; c < classes.size(); ++c) {
      const auto& q = classes[c][idx[c]];
      for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = combine(op, p[i], q[i]);
    }
    out.push_back(std::move(p));
    std::size_t c = 0;
    while (c < classes.size() && ++idx[c] == classes[c].size()) idx[c++] = 0;
    if (c == classes.size()) break;
  }
  return {kind, m, std::move(out)};
}

PatternClass kmax_class(std::span<const PatternClass> classes) {
  return compose_class(classes, Combine::Max);
}

namespace {

template <class F>
PatternClass map_real(const PatternClass& cls, F f) {
  if (cls.kind() != PatternKind::Real) throw std::invalid_argument("real class required");
  std::vector<std::vector<double>> out = cls.patterns();
  for (auto& p : out)
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = f(p[i], i);
  return {PatternKind::Real, cls.num_points(), std::move(out)};
}

}  // namespace

PatternClass difference_class(const PatternClass& cls, std::span<const double> labels) {
  if (static_cast<int>(labels.size()) != cls.num_points())
    throw std::invalid_argument("one label per point required");
  return map_real(cls, [&](double v, std::size_t i) { return v - labels[i]; });
}

PatternClass abs_class(const PatternClass& cls) {
  return map_real(cls, [](double v, std::size_t) { return std::abs(v); });
}

PatternClass square_class(const PatternClass& cls) {
  return map_real(cls, [](double v, std::size_t) { return v * v; });
}

PatternClass negate_class(const PatternClass& cls) {
  return map_real(cls, [](double v, std::size_t) { return -v; });
}

PatternClass shift_class(const PatternClass& cls, std::span<const double> shift) {
  if (static_cast<int>(shift.size()) != cls.num_points())
    throw std::invalid_argument("one shift per point required");
  return map_real(cls, [&](double v, std::size_t i) { return v - shift[i]; });
}

DerivedClasses derived_classes(const PatternClass& cls, std::span<const double> labels) {
  return {difference_class(cls, labels), abs_class(cls), square_class(cls)};
}

}  // namespace advgame
