#include "advgame/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "advgame/dims.hpp"
#include "advgame/errors.hpp"
#include "advgame/quadrature.hpp"

namespace advgame {

std::string to_string(FatProfile::Kind kind) {
  switch (kind) {
    case FatProfile::Kind::Zero: return "zero";
    case FatProfile::Kind::Power: return "power";
    case FatProfile::Kind::Step: return "step";
  }
  return "zero";
}

FatProfile::Kind fat_profile_kind_from_string(const std::string& name) {
  if (name == "zero") return FatProfile::Kind::Zero;
  if (name == "power") return FatProfile::Kind::Power;
  if (name == "step") return FatProfile::Kind::Step;
  throw std::invalid_argument("unknown fat profile kind '" + name + "'");
}

FatProfile FatProfile::power(double scale, double exponent) {
  FatProfile p;
  p.kind = Kind::Power;
  p.scale = scale;
  p.exponent = exponent;
  p.check();
  return p;
}

FatProfile FatProfile::step(std::vector<FatStep> steps) {
  FatProfile p;
  p.kind = Kind::Step;
  std::sort(steps.begin(), steps.end(),
            [](const FatStep& a, const FatStep& b) { return a.threshold < b.threshold; });
  p.steps = std::move(steps);
  p.check();
  return p;
}

FatProfile FatProfile::of_class(const PatternClass& cls) {
  if (cls.kind() != PatternKind::Real) throw std::invalid_argument("real class required");
  std::vector<double> gammas;
  for (int i = 0; i < cls.num_points(); ++i) {
    for (const auto& p : cls.patterns())
      for (const auto& q : cls.patterns()) {
        const double half_gap = 0.5 * (p[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i)]);
        if (half_gap > 0) gammas.push_back(half_gap);
      }
  }
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
  std::vector<FatStep> steps;
  for (double g : gammas) {
    const double v = fat_dim(cls, g).dimension;
    if (!steps.empty() && steps.back().value == v)
      steps.back().threshold = g;
    else
      steps.push_back({g, v});
  }
  return step(std::move(steps));
}

double FatProfile::operator()(double gamma) const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Power: return scale * std::pow(gamma, -exponent);
    case Kind::Step: {
      auto it = std::lower_bound(steps.begin(), steps.end(), gamma,
                                 [](const FatStep& s, double g) { return s.threshold < g; });
      return it == steps.end() ? 0.0 : it->value;
    }
  }
  return 0.0;
}

std::vector<double> FatProfile::breakpoints() const {
  std::vector<double> out;
  if (kind == Kind::Step)
    for (const auto& s : steps) out.push_back(s.threshold);
  return out;
}

void FatProfile::check() const {
  switch (kind) {
    case Kind::Zero: return;
    case Kind::Power:
      if (!(scale >= 0) || !(exponent >= 0) || !std::isfinite(scale) || !std::isfinite(exponent))
        throw std::invalid_argument("power profile needs scale >= 0 and exponent >= 0");
      return;
    case Kind::Step:
      for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!(steps[i].threshold > 0) || !(steps[i].value >= 0))
          throw std::invalid_argument("step profile needs positive thresholds and values >= 0");
        if (i > 0 && (steps[i].threshold <= steps[i - 1].threshold ||
                      steps[i].value > steps[i - 1].value))
          throw std::invalid_argument("step profile must be non-increasing in gamma");
      }
      return;
  }
}

void BoundConfig::check() const {
  if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("epsilon must be in (0,1]");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (num_labels < 2) throw std::invalid_argument("num_labels must be >= 2");
  for (double v : {c, c1, c2, c_prime, k_tilde})
    if (!(v > 0)) throw std::invalid_argument("constants must be positive");
  for (const auto& d : {vc, graph_dim, natarajan_dim})
    if (d && !(*d >= 0)) throw std::invalid_argument("dimensions must be >= 0");
  if (fat) fat->check();
}

namespace {

std::int64_t ceil_count(double v) {
  if (!std::isfinite(v) || v > 9e18) throw std::overflow_error("sample size overflows");
  return static_cast<std::int64_t>(std::ceil(v));
}

double log_k(int k) { return std::log(std::max(k, 2)); }

// Loose domain checks: m0 formulas are also evaluated at eps = 1 or
// delta = 1/e, which lie on the closed boundary.
void check_m0_inputs(const BoundConfig& cfg, double dimension) {
  if (!(cfg.epsilon > 0) || !(cfg.delta > 0) || !(cfg.delta <= 1) || cfg.k < 1 || !(dimension >= 0))
    throw std::invalid_argument("m0 needs eps > 0, delta in (0,1], k >= 1, dimension >= 0");
}

}  // namespace

std::int64_t m0_formula(const BoundConfig& cfg, double dimension) {
  check_m0_inputs(cfg, dimension);
  const double complexity = cfg.c1 * cfg.k * log_k(cfg.k) * dimension;
  const double confidence = cfg.c2 * std::log(1.0 / cfg.delta);
  return ceil_count((complexity + confidence) / (cfg.epsilon * cfg.epsilon));
}

std::int64_t m0_binary(const BoundConfig& cfg) {
  if (!cfg.vc) throw std::invalid_argument("m0_binary needs a VC dimension");
  return m0_formula(cfg, *cfg.vc);
}

std::int64_t m0_multiclass(const BoundConfig& cfg) {
  if (!cfg.graph_dim) throw std::invalid_argument("m0_multiclass needs a graph dimension");
  return m0_formula(cfg, *cfg.graph_dim);
}

double natarajan_to_graph(double natarajan_dim, int num_labels) {
  if (num_labels < 2 || !(natarajan_dim >= 0)) throw std::invalid_argument("bad Natarajan input");
  return 4.67 * std::log2(static_cast<double>(num_labels)) * natarajan_dim;
}

std::int64_t m0_multiclass_natarajan(const BoundConfig& cfg) {
  if (!cfg.natarajan_dim) throw std::invalid_argument("needs a Natarajan dimension");
  return m0_formula(cfg, natarajan_to_graph(*cfg.natarajan_dim, cfg.num_labels));
}

namespace {

double integrand(const FatProfile& profile, double scale, double gamma) {
  const double f = profile(scale * gamma);
  if (f <= 0) return 0.0;
  return std::sqrt(f * std::log(2.0 / gamma));
}

// Integral over [a, b] split at the profile's discontinuities.
double piecewise(const FatProfile& profile, double scale, double a, double b, double tol) {
  std::vector<double> cuts{a};
  for (double bp : profile.breakpoints()) {
    const double g = bp / scale;
    if (g > a && g < b) cuts.push_back(g);
  }
  cuts.push_back(b);
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson([&](double g) { return integrand(profile, scale, g); }, cuts[i],
                              cuts[i + 1], piece_tol)
                 .value;
  return total;
}

constexpr int kDyadicMin = 16;
constexpr int kDyadicMax = 1000;

}  // namespace

double entropy_integral(const FatProfile& profile, double scale, double alpha) {
  if (!(alpha >= 0 && alpha < 1)) throw std::invalid_argument("alpha must be in [0,1)");
  if (!(scale > 0)) throw std::invalid_argument("scale must be > 0");
  profile.check();
  if (alpha > 0) return piecewise(profile, scale, alpha, 1.0, kQuadratureTolerance);

  // Pieces [2^-(j+1), 2^-j]; stop once a geometric tail estimate is below
  // tolerance, and declare divergence when pieces stop shrinking.
  double total = 0.0;
  double previous = 0.0;
  for (int j = 0; j < kDyadicMax; ++j) {
    const double hi = std::ldexp(1.0, -j), lo = std::ldexp(1.0, -(j + 1));
    const double piece = piecewise(profile, scale, lo, hi, kQuadratureTolerance * lo);
    total += piece;
    if (j >= kDyadicMin && previous > 0) {
      const double ratio = piece / previous;
      if (ratio >= 1.0) throw DivergentIntegral("entropy integral diverges at alpha = 0");
      const double tail = piece * ratio / (1.0 - ratio);
      if (tail < kQuadratureTolerance) return total + tail;
    }
    if (j >= kDyadicMin && piece == 0.0) return total;
    previous = piece;
  }
  if (previous > 0) throw DivergentIntegral("entropy integral did not converge at alpha = 0");
  return total;
}

double dudley_rademacher_bound(const BoundConfig& cfg, std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const FatProfile profile = cfg.fat.value_or(FatProfile::zero());
  const double integral = entropy_integral(profile, cfg.c, alpha);
  return 4.0 * alpha + 12.0 * std::sqrt(cfg.k_tilde / static_cast<double>(n)) * integral;
}

double regression_complexity(const BoundConfig& cfg, LossKind loss) {
  if (loss == LossKind::ZeroOne) throw std::invalid_argument("regression needs l1 or l2 loss");
  const FatProfile profile = cfg.fat.value_or(FatProfile::zero());
  const double scale = loss == LossKind::L2 ? 0.5 * cfg.c : cfg.c;
  try {
    return entropy_integral(profile, scale, 0.0);
  } catch (const DivergentIntegral&) {
    throw DivergentIntegral(
        "entropy integral diverges at alpha = 0; use the refined alpha > 0 route "
        "(dudley_rademacher_bound or hyperplane_complexity)");
  }
}

std::int64_t m0_regression(const BoundConfig& cfg, LossKind loss) {
  return m0_formula(cfg, regression_complexity(cfg, loss));
}

double hyperplane_integral_closed_form(double alpha) {
  if (!(alpha > 0 && alpha <= 1)) throw std::invalid_argument("alpha must be in (0,1]");
  return 2.0 / 3.0 * (std::pow(std::log(2.0 / alpha), 1.5) - std::pow(std::log(2.0), 1.5));
}

double hyperplane_rademacher(int k, double sample_size, double c_prime) {
  if (k < 1 || !(sample_size >= 1) || !(c_prime > 0))
    throw std::invalid_argument("hyperplane bound needs k >= 1, sample size >= 1, c' > 0");
  const double alpha = 1.0 / std::sqrt(sample_size);
  const double composed = 2.0 * k * std::log(3.0 * k);
  return 4.0 * alpha +
         12.0 * c_prime * std::sqrt(composed / sample_size) * hyperplane_integral_closed_form(alpha);
}

HyperplaneComplexity hyperplane_complexity(double epsilon, double delta, int k,
                                           double sample_size, double c_prime) {
  if (!(epsilon > 0) || !(delta > 0 && delta < 1))
    throw std::invalid_argument("need eps > 0 and delta in (0,1)");
  HyperplaneComplexity out;
  out.alpha = 1.0 / std::sqrt(sample_size);
  out.rademacher_bound = hyperplane_rademacher(k, sample_size, c_prime);

  auto ok = [&](double s) {
    return 2.0 * hyperplane_rademacher(k, s, c_prime) + 3.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * s)) <=
           epsilon;
  };
  double hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 4e18) throw std::overflow_error("hyperplane sample size overflows");
  }
  double lo = std::max(1.0, hi / 2.0);
  if (ok(lo)) hi = lo;
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    (ok(mid) ? hi : lo) = mid;
  }
  out.m0 = static_cast<std::int64_t>(hi);
  const double lk = std::log(static_cast<double>(k) / epsilon);
  out.m0_order = ceil_count((k * lk * lk + std::log(1.0 / delta)) / (epsilon * epsilon));
  return out;
}

}  // namespace advgame
