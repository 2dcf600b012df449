#pragma once

#include <map>
#include <string>
#include <vector>

#include "spokelab/process.hpp"
#include "spokelab/trace.hpp"

namespace spokelab {

/// A monitored enumeration standing in for a uniformly c.e. family: at each
/// stage exactly one label's set grows, and events[s] names that label.
/// x0 is the declared least element of the encoded set.
struct Sigma2Stream {
  Nat x0 = 0;
  std::vector<Nat> events;
};

/// Encodes the stream into a from-above trace with at most one change per
/// input: stage s seeds input s with the event's label (clamped up to x0),
/// and any later growth of the same label resets the held input to x0.
/// Processes at most `stages` events; the trace is complete when the whole
/// stream fit into the budget.
ApproximationTrace range_encoder(const Sigma2Stream& stream, Nat stages);

/// The set of limit values of a complete trace (test-side helper for the
/// range law).
std::vector<Nat> limit_range(const ApproximationTrace& trace);

struct OneCompleteResult {
  ApproximationTrace trace;  // f, approximable from above
  /// slots[e][x] = n_<e,x>: the input of f assigned to the pair (e,x).
  std::map<Nat, std::map<Nat, Nat>> slots;

  /// d_e(x); input-range error when the pair was never assigned in budget.
  Nat reduction(Nat e, Nat x) const;
};

/// Builds the 1-complete from-above trace for the registry: at each stage the
/// least Cantor pair <e,x> whose process has produced its first value gets a
/// fresh slot, and assigned slots copy their rival's value sequence as long
/// as it stays nonincreasing (freezing it otherwise).
OneCompleteResult one_complete_build(const Registry& registry, Nat stages,
                                     Nat max_input = 0);

enum class WitnessKind { Nocollapse, No1CompleteBelow, NoMCompleteAbove };

struct RequirementReport {
  Nat e = 0;
  bool vacuous = false;   // the registry member never produced a value
  bool defeated = false;  // the kind's defeat condition holds for this member
  std::string detail;
};

struct WitnessResult {
  ApproximationTrace trace;
  std::vector<RequirementReport> reports;
};

/// Lemma-style diagonalisation against the registry: starts every input at
/// n+1 and decrements g(x) exactly when process x's own approximation of x
/// has caught up with the current value. Tracking processes in the registry
/// are bound to the construction's published history. A registry member is
/// defeated when it either disagrees with the limit or was forced through
/// more than n mind changes.
WitnessResult nocollapse_witness(const Registry& registry, Nat n, Nat stages);

/// Builds j with j(<e,x>) = 1 + f(phi_e(<e,x>)) over a from-below trace f,
/// for e in the registry and x < max_input. Defeat: the limit differs from
/// f(phi_e(<e,x>)) wherever phi_e converges.
WitnessResult no1complete_witness(const Registry& registry,
                                  const ApproximationTrace& from_below, Nat stages,
                                  Nat max_input);

/// Builds g with g(e) = f(phi_e(e), s) + 1 at the stage s where phi_e(e)
/// converges, over a complete from-above trace f. Defeat: g(e) > f(phi_e(e))
/// in the limit for every total member.
WitnessResult no_mcomplete_witness(const Registry& registry,
                                   const ApproximationTrace& from_above, Nat stages);

}  // namespace spokelab
