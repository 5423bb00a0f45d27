#pragma once

#include <cstdint>
#include <random>

namespace joindeg {

// Seeded generator with a replay guarantee: all sampling goes through
// next()/below(), never std::uniform_int_distribution (whose output is
// implementation-defined). Forking derives an independent stream per
// section/trial so reports are reproducible regardless of section order.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), eng_(splitmix(seed)) {}

  uint64_t seed() const { return seed_; }

  uint64_t next() { return eng_(); }

  // Uniform in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform in [lo, hi] inclusive.
  int64_t in_range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  Rng fork(uint64_t salt) const { return Rng(splitmix(seed_ ^ splitmix(salt + 0x9e3779b97f4a7c15ULL))); }

 private:
  static uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace joindeg
