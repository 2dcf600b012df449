#pragma once

#include <cstdint>
#include <utility>

namespace spokelab {

/// Natural numbers as used throughout the library (inputs, stages, values, node ids).
using Nat = std::uint64_t;

/// Cantor pairing, fixed project-wide: pair(x,y) = (x+y)(x+y+1)/2 + y.
/// Every file format and every operation that mentions a coded pair uses this map.
constexpr Nat cantor_pair(Nat x, Nat y) {
  const Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

constexpr std::pair<Nat, Nat> cantor_unpair(Nat z) {
  // Largest s with s(s+1)/2 <= z, by integer sqrt seed plus correction.
  Nat s = 0;
  {
    long double r = static_cast<long double>(z);
    Nat guess = static_cast<Nat>((-1.0L + __builtin_sqrtl(1.0L + 8.0L * r)) / 2.0L);
    s = guess > 2 ? guess - 2 : 0;
    while ((s + 1) * (s + 2) / 2 <= z) ++s;
  }
  const Nat y = z - s * (s + 1) / 2;
  return {s - y, y};
}

static_assert(cantor_pair(0, 0) == 0);
static_assert(cantor_pair(1, 0) == 1);
static_assert(cantor_pair(0, 1) == 2);
static_assert(cantor_unpair(4).first == 1 && cantor_unpair(4).second == 1);

}  // namespace spokelab
