#include "advgame/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "advgame/instance.hpp"
#include "advgame/random.hpp"

namespace advgame {

Distribution Distribution::uniform(int n) {
  if (n < 1) throw std::invalid_argument("Distribution::uniform: n must be >= 1");
  return Distribution{std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)};
}

Distribution Distribution::point_mass(int n, int x) {
  if (x < 0 || x >= n) throw std::invalid_argument("Distribution::point_mass: x out of range");
  Distribution d{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  d.weights[static_cast<std::size_t>(x)] = 1.0;
  return d;
}

Distribution Distribution::normalize(std::vector<double> raw) {
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("Distribution::normalize: weights sum to zero");
  for (auto& w : raw) {
    if (w < 0.0) throw std::invalid_argument("Distribution::normalize: negative weight");
    w /= total;
  }
  return Distribution{std::move(raw)};
}

double Distribution::sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

bool Distribution::is_normalized(double tol) const {
  return !weights.empty() && std::abs(sum() - 1.0) <= tol &&
         std::all_of(weights.begin(), weights.end(), [](double w) { return w >= 0.0; });
}

int CorruptionMap::max_list_size() const {
  std::size_t best = 0;
  for (const auto& l : lists) best = std::max(best, l.size());
  return static_cast<int>(best);
}

std::size_t CorruptionMap::total_size() const {
  std::size_t total = 0;
  for (const auto& l : lists) total += l.size();
  return total;
}

Concept Concept::categorical(const std::vector<int>& labels, int num_labels) {
  Concept c;
  c.kind = LabelKind::Categorical;
  c.num_labels = num_labels;
  c.labels.assign(labels.begin(), labels.end());
  return c;
}

Concept Concept::real(std::vector<double> labels) {
  Concept c;
  c.kind = LabelKind::Real;
  c.num_labels = 0;
  for (auto& y : labels) y = std::clamp(y, 0.0, 1.0);
  c.labels = std::move(labels);
  return c;
}

LabeledSample draw_sample(const Distribution& dist, const Concept& target, int m,
                          std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("draw_sample: m must be >= 1");
  if (dist.size() != target.domain_size()) {
    throw std::invalid_argument("draw_sample: distribution and concept sizes differ");
  }
  Rng rng(seed);
  LabeledSample s;
  s.examples.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int x = static_cast<int>(rng.categorical(dist.weights));
    s.examples.push_back({x, target(x)});
  }
  return s;
}

LabeledSample enumerate_domain(const Concept& target) {
  LabeledSample s;
  for (int x = 0; x < target.domain_size(); ++x) s.examples.push_back({x, target(x)});
  return s;
}

std::vector<std::string> check_distribution(const Distribution& dist) {
  std::vector<std::string> out;
  if (dist.weights.empty()) {
    out.emplace_back("distribution is empty");
    return out;
  }
  for (int x = 0; x < dist.size(); ++x) {
    const double w = dist.weights[static_cast<std::size_t>(x)];
    if (!(w >= 0.0 && w <= 1.0)) {
      std::ostringstream os;
      os << "distribution weight at x=" << x << " outside [0,1]: " << w;
      out.push_back(os.str());
    }
  }
  if (std::abs(dist.sum() - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "distribution not normalized (sum=" << dist.sum() << ")";
    out.push_back(os.str());
  }
  return out;
}

std::vector<std::string> check_corruption_map(const CorruptionMap& rho, int z_size) {
  std::vector<std::string> out;
  if (rho.budget < 1) out.emplace_back("corruption budget k must be >= 1");
  for (int x = 0; x < rho.domain_size(); ++x) {
    const auto& list = rho.at(x);
    std::ostringstream os;
    if (list.empty()) {
      os << "rho(x=" << x << ") is empty";
      out.push_back(os.str());
      continue;
    }
    if (static_cast<int>(list.size()) > rho.budget) {
      os << "rho(x=" << x << ") has " << list.size() << " entries, exceeds k=" << rho.budget;
      out.push_back(os.str());
    }
    for (int z : list) {
      if (z < 0 || z >= z_size) {
        std::ostringstream e;
        e << "rho(x=" << x << ") entry " << z << " outside Z of size " << z_size;
        out.push_back(e.str());
      }
    }
    auto sorted = list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      std::ostringstream e;
      e << "rho(x=" << x << ") contains a duplicate entry";
      out.push_back(e.str());
    }
  }
  return out;
}

std::vector<std::string> check_concept(const Concept& target) {
  std::vector<std::string> out;
  if (target.kind == LabelKind::Categorical && target.num_labels < 1) {
    out.emplace_back("categorical concept needs num_labels >= 1");
  }
  for (int x = 0; x < target.domain_size(); ++x) {
    const double y = target(x);
    std::ostringstream os;
    if (target.kind == LabelKind::Categorical) {
      if (y != std::floor(y) || y < 0 || y >= target.num_labels) {
        os << "concept label at x=" << x << " is not a category in [0," << target.num_labels
           << "): " << y;
        out.push_back(os.str());
      }
    } else if (!(y >= 0.0 && y <= 1.0)) {
      os << "concept label at x=" << x << " outside [0,1]: " << y;
      out.push_back(os.str());
    }
  }
  return out;
}

std::vector<std::string> validate_instance(const GameInstance& in) {
  std::vector<std::string> out;
  auto append = [&out](std::vector<std::string> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  const int nx = in.x_domain.size;
  const int nz = in.z_domain.size;
  if (nx < 1) out.emplace_back("X must have size >= 1");
  if (nz < 1) out.emplace_back("Z must have size >= 1");

  if (in.dist.size() != nx) {
    out.push_back("distribution has " + std::to_string(in.dist.size()) + " weights, X has " +
                  std::to_string(nx));
  }
  append(check_distribution(in.dist));

  if (in.rho.domain_size() != nx) {
    out.push_back("rho has " + std::to_string(in.rho.domain_size()) + " lists, X has " +
                  std::to_string(nx));
  }
  append(check_corruption_map(in.rho, nz));

  if (in.target.domain_size() != nx) {
    out.push_back("concept has " + std::to_string(in.target.domain_size()) + " labels, X has " +
                  std::to_string(nx));
  }
  append(check_concept(in.target));

  append(in.hypotheses.check());
  if (in.hypotheses.domain_size() != nz) {
    out.push_back("hypothesis table has " + std::to_string(in.hypotheses.domain_size()) +
                  " columns, Z has " + std::to_string(nz));
  }
  if (in.hypotheses.kind() != in.target.kind) {
    out.emplace_back("hypothesis class and concept label kinds differ");
  } else if (in.target.kind == LabelKind::Categorical &&
             in.hypotheses.num_labels() != in.target.num_labels) {
    out.emplace_back("hypothesis class and concept disagree on num_labels");
  }
  const bool categorical_loss = in.loss == LossKind::ZeroOne;
  if (categorical_loss != (in.target.kind == LabelKind::Categorical)) {
    out.push_back("loss " + to_string(in.loss) + " does not fit the label kind");
  }

  if (in.sample.examples.empty()) out.emplace_back("sample is empty");
  for (int i = 0; i < in.sample.size(); ++i) {
    const Example& e = in.sample[i];
    if (e.x < 0 || e.x >= nx) {
      out.push_back("sample example " + std::to_string(i) + " has x=" + std::to_string(e.x) +
                    " outside X");
    } else if (e.x < in.target.domain_size() && e.y != in.target(e.x)) {
      out.push_back("sample example " + std::to_string(i) +
                    " label differs from the concept at x=" + std::to_string(e.x));
    }
  }
  return out;
}

void require_valid(const GameInstance& instance) {
  const auto violations = validate_instance(instance);
  if (violations.empty()) return;
  std::string msg = "invalid game instance:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw std::invalid_argument(msg);
}

std::vector<ExampleGroup> group_sample(const LabeledSample& sample) {
  std::vector<ExampleGroup> groups;
  std::map<std::pair<int, double>, std::size_t> index;
  const double unit = 1.0 / static_cast<double>(sample.size());
  for (int i = 0; i < sample.size(); ++i) {
    const Example& e = sample[i];
    auto [it, inserted] = index.try_emplace({e.x, e.y}, groups.size());
    if (inserted) groups.push_back({e, 0.0, {}});
    auto& g = groups[it->second];
    g.members.push_back(i);
  }
  for (auto& g : groups) g.weight = static_cast<double>(g.members.size()) * unit;
  return groups;
}

}  // namespace advgame
