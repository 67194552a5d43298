#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace advgame {

// Seeded 64-bit Mersenne twister with portable transforms. The standard
// <random> distributions are implementation-defined, so values are derived
// from raw engine output here to keep results identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi] (inclusive).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 63) != 0; }
  // Index drawn proportionally to non-negative weights.
  std::size_t categorical(std::span<const double> weights);
  // Uniform point on the probability simplex of the given dimension.
  std::vector<double> dirichlet_uniform(std::size_t dim);
  // `count` distinct values from [0, n), in draw order.
  std::vector<int> sample_without_replacement(int n, int count);

 private:
  std::mt19937_64 engine_;
};

// Per-stream seed derivation (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace advgame
