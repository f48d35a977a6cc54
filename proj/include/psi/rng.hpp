#pragma once

// SplitMix64 (Steele, Lea & Flood 2014) with the sampling routines the
// corpus generator and weight sampler need. Everything is defined here
// rather than through <random> distributions, whose output differs between
// standard library implementations.

#include <cstdint>

namespace psi {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi]; unbiased by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }
  // Standard normal via the Marsaglia polar method.
  double normal();
  // Gamma(shape, 1) via Marsaglia & Tsang (2000); shape < 1 uses the
  // U^(1/shape) boost.
  double gamma(double shape);

  // Seed for an independent sub-stream: the SplitMix64 finalizer applied to
  // seed ^ (stream * golden gamma). Lets corpus items be generated in any
  // order or in parallel.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::uint64_t state_;
};

}  // namespace psi
