#pragma once

#include <cmath>

#include "bq/ints.hpp"

namespace bq {

// Counter-based generator: the value at (seed, stream, counter) is a pure
// function of its arguments, so sampling can be partitioned across threads
// in fixed slices and re-merged in slice order with results identical to a
// serial run. The mixer is the splitmix64 finalizer applied to a Weyl
// sequence over the counter.
class CounterRng {
 public:
  CounterRng(u64 seed, u64 stream = 0)
      : base_(mix_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  u64 at(u64 counter) const {
    u64 z = base_ + counter * 0x9e3779b97f4a7c15ULL;
    return mix_(z);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01(u64 counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive. Widening-multiply range map;
  // the bias for the ranges used here (spans well below 2^32) is far below
  // anything a statistical check in this project could resolve.
  i64 uniform_int(u64 counter, i64 lo, i64 hi) const {
    u64 span = static_cast<u64>(hi - lo) + 1;
    u64 r = at(counter);
    u64 hi64 = static_cast<u64>((static_cast<u128>(r) * span) >> 64);
    return lo + static_cast<i64>(hi64);
  }

  double uniform_real(u64 counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform01(counter);
  }

 private:
  static u64 mix_(u64 z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  u64 base_;
};

}  // namespace bq
