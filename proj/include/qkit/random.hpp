#pragma once

#include <cstdint>
#include <random>

namespace qkit {

// Seeded stream of uniform reals in [0,1). The conversions below are written
// out by hand so that identical seeds give identical streams on every
// standard library, which std::*_distribution does not promise.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }
  double uniform();
  std::uint64_t bits() { return gen_(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  int bit() { return static_cast<int>(gen_() >> 63); }
  double normal();
  // Independent child stream, derived deterministically from this one.
  RandomSource split();

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qkit
