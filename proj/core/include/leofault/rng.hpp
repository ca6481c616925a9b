#pragma once

// Labelled random streams. Every stochastic model draws from its own stream
// derived from (master seed, label), so adding a model or a target never
// shifts another model's draws. Labels are "<model>/<target>", e.g.
// "seu/0/3/17" or "handover/berlin".

#include <cstdint>
#include <random>
#include <string_view>

namespace leofault {

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master_seed, std::string_view label)
      : engine_(derive_seed(master_seed, label)) {}

  // [0, 1) with 53 random bits. Distributions are computed here rather than
  // through <random> distributions, whose algorithms are unspecified and
  // differ between standard libraries.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Exponential variate with the given rate (events per unit time).
  double exponential(double rate);
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace leofault
