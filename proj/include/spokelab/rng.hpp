#pragma once

#include <vector>

#include "spokelab/nat.hpp"

namespace spokelab {

/// SplitMix64: tiny, fully specified generator so that seeded artifacts are
/// byte-stable across compilers and standard libraries.
class Rng {
 public:
  explicit Rng(Nat seed) : state_(seed) {}

  Nat next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    Nat z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound 0 returns 0.
  Nat below(Nat bound) { return bound == 0 ? 0 : next() % bound; }

  /// Uniform in [lo, hi].
  Nat range(Nat lo, Nat hi) { return lo + below(hi - lo + 1); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (Nat i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  Nat state_;
};

}  // namespace spokelab
