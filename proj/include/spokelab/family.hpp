#pragma once

#include <variant>
#include <vector>

#include "spokelab/graph.hpp"
#include "spokelab/trace.hpp"

namespace spokelab {

/// An explicit finite list of spoke types.
struct ExplicitFamily {
  std::vector<DecreasingString> strings;
};

/// All strictly decreasing nonempty strings with length <= max_len and values
/// <= max_val, repeated round-robin: spoke m gets enumeration[m mod N]. The
/// round-robin schedule is the desk-scale stand-in for "each string occurs
/// infinitely often".
struct AllDecreasingFamily {
  Nat max_len;
  Nat max_val;
  Nat count;  // number of spokes drawn from the schedule
};

/// The periodic countdown family: Gamma(0) = <n>, Gamma(1) = <n,n-1>, ...,
/// Gamma(n) = <n,...,0>, and Gamma(m+n+1) = Gamma(m).
struct PeriodicCountdownFamily {
  Nat n;
  Nat count;  // number of spokes drawn from the schedule
};

using FamilySpec = std::variant<ExplicitFamily, AllDecreasingFamily, PeriodicCountdownFamily>;

/// Deterministic enumeration backing AllDecreasingFamily (shorter strings
/// first, lexicographic within a length).
std::vector<DecreasingString> enumerate_decreasing(Nat max_len, Nat max_val);

/// The m-th string of the family's schedule.
DecreasingString family_string(const FamilySpec& spec, Nat m);
Nat family_size(const FamilySpec& spec);

/// Builds the staged graph realizing the family, stage-wise: every spoke is
/// created with its first value at stage 0 and extended with its i-th value
/// at stage i.
///
/// When a trace is supplied the build interleaves: even spokes 2x encode
/// trace input x (created with g(x,0), extended exactly at the trace's
/// change stages), odd spokes 2x+1 follow the base schedule. For the
/// periodic countdown family the trace is consumed through its countdown:
/// spoke 2x starts at <n> and steps down by one at each change stage of
/// input x (mind changes beyond n are a bound violation).
StagedGraph build_family(const FamilySpec& spec, GraphShape shape,
                         const ApproximationTrace* trace, Nat stages);

/// Standard graph of the trace-derived type plus, at each a_n, the
/// identification loop of length n+3 attached at creation.
StagedGraph build_singledegree(const ApproximationTrace& trace, Nat stages);

}  // namespace spokelab
