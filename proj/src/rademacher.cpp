#include "advgame/rademacher.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "advgame/errors.hpp"
#include "advgame/random.hpp"

namespace advgame {

std::string to_string(RademacherMode mode) {
  return mode == RademacherMode::Exact ? "exact" : "monte-carlo";
}

namespace {

std::vector<std::vector<double>> real_rows(const PatternClass& cls) {
  if (cls.kind() != PatternKind::Real && cls.kind() != PatternKind::Binary)
    throw std::invalid_argument("Rademacher complexity needs a real or binary class");
  if (cls.size() == 0) throw std::invalid_argument("empty class");
  return cls.patterns();
}

void check_exact_guard(int n) {
  if (n > kRademacherExactGuard)
    throw GuardExceeded("exact Rademacher enumeration limited to n <= " +
                        std::to_string(kRademacherExactGuard));
}

// Visits every sign vector in Gray-code order and hands the callback the
// current inner products <sigma, row> of every row.
template <class Visit>
void for_each_sign_vector(const std::vector<std::vector<double>>& rows, int n, Visit visit) {
  std::vector<double> dot(rows.size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (double v : rows[r]) dot[r] -= v;
  std::uint64_t sigma = 0;
  visit(dot);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < count; ++g) {
    const int bit = std::countr_zero(g);
    sigma ^= std::uint64_t{1} << bit;
    const double sign = (sigma >> bit) & 1u ? 2.0 : -2.0;
    for (std::size_t r = 0; r < rows.size(); ++r) dot[r] += sign * rows[r][static_cast<std::size_t>(bit)];
    visit(dot);
  }
}

// Per-sign-vector supremum of the class, in Gray-code order.
std::vector<double> sup_table(const std::vector<std::vector<double>>& rows, int n) {
  std::vector<double> out;
  out.reserve(std::size_t{1} << n);
  for_each_sign_vector(rows, n, [&](const std::vector<double>& dot) {
    out.push_back(*std::max_element(dot.begin(), dot.end()));
  });
  return out;
}

double mean_over_n(const std::vector<double>& sups, int n) {
  long double total = 0.0L;
  for (double s : sups) total += s;
  return n == 0 ? 0.0 : static_cast<double>(total / sups.size() / n);
}

}  // namespace

RademacherEstimate rademacher_exact(const PatternClass& cls) {
  const auto rows = real_rows(cls);
  const int n = cls.num_points();
  check_exact_guard(n);
  RademacherEstimate out;
  out.mode = RademacherMode::Exact;
  out.trials = std::uint64_t{1} << n;
  out.value = mean_over_n(sup_table(rows, n), n);
  return out;
}

RademacherEstimate rademacher_mc(const PatternClass& cls, std::uint64_t trials,
                                 std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const auto rows = real_rows(cls);
  const int n = cls.num_points();
  Rng rng(seed);
  long double sum = 0.0L, sum_sq = 0.0L;
  std::vector<double> sigma(static_cast<std::size_t>(n));
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& s : sigma) s = rng.coin() ? 1.0 : -1.0;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += sigma[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
      best = std::max(best, dot);
    }
    const double v = n == 0 ? 0.0 : best / n;
    sum += v;
    sum_sq += static_cast<long double>(v) * v;
  }
  RademacherEstimate out;
  out.mode = RademacherMode::MonteCarlo;
  out.trials = trials;
  const long double mean = sum / trials;
  out.value = static_cast<double>(mean);
  if (trials > 1) {
    const long double var = std::max(0.0L, (sum_sq - trials * mean * mean) / (trials - 1));
    out.standard_error = static_cast<double>(std::sqrt(var / trials));
  }
  return out;
}

MaxConvReport maxconv_identity_check(std::span<const PatternClass> classes, int samples,
                                     std::uint64_t seed) {
  if (samples < 0) throw std::invalid_argument("samples must be >= 0");
  std::vector<PatternClass> reals;
  for (const auto& c : classes) reals.push_back(as_real(c));
  const PatternClass max_class = kmax_class(reals);
  const int n = max_class.num_points();
  check_exact_guard(n);

  const auto sups = sup_table(max_class.patterns(), n);
  MaxConvReport report;
  report.samples = samples;
  report.max_class_value = mean_over_n(sups, n);

  Rng rng(seed);
  std::vector<double> augmented = sups;
  for (int s = 0; s < samples; ++s) {
    const int terms = static_cast<int>(rng.uniform_int(1, kMaxConvTerms));
    const auto alpha = rng.dirichlet_uniform(terms);
    std::vector<double> member(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
    for (const auto& cls : reals) {
      std::vector<double> combo(static_cast<std::size_t>(n), 0.0);
      for (int t = 0; t < terms; ++t) {
        const auto& f = cls[static_cast<int>(rng.uniform_int(0, cls.size() - 1))];
        for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += alpha[static_cast<std::size_t>(t)] * f[i];
      }
      for (std::size_t i = 0; i < member.size(); ++i) member[i] = std::max(member[i], combo[i]);
    }
    long double gain = 0.0L;
    std::size_t idx = 0;
    for_each_sign_vector({member}, n, [&](const std::vector<double>& dot) {
      gain += std::max(0.0, dot[0] - sups[idx]);
      augmented[idx] = std::max(augmented[idx], dot[0]);
      ++idx;
    });
    const double excess = n == 0 ? 0.0 : static_cast<double>(gain / sups.size() / n);
    report.max_excess = std::max(report.max_excess, excess);
    if (excess > kMaxConvTolerance) ++report.violations;
  }
  report.augmented_value = mean_over_n(augmented, n);
  report.passed = report.violations == 0 &&
                  report.augmented_value <= report.max_class_value + kMaxConvTolerance;
  return report;
}

}  // namespace advgame
