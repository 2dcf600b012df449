#pragma once

#include <limits>
#include <span>
#include <vector>

#include "spokelab/graph.hpp"

namespace spokelab {

/// Sentinel for "no path in this snapshot", ordered above every natural
/// (the omega-valued first approximation of a disconnected pair).
inline constexpr Nat kUnreached = std::numeric_limits<Nat>::max();

/// Exact shortest-path length in the snapshot (arcs respected when
/// directed); kUnreached when no path exists. Frontier order is ascending id
/// for reproducible traversals.
Nat bfs_distance(const GraphSnapshot& snap, NodeId x, NodeId y);

/// All distances from x in one sweep.
std::vector<Nat> bfs_from(const GraphSnapshot& snap, NodeId x);

struct DistanceEstimate {
  Nat value = kUnreached;
  Nat stage = 0;
  Nat changes_so_far = 0;  // strict decreases after the first finite value
};

/// The paper-style stage-wise approximation: the first finite value is the
/// shortest connection in the earliest snapshot containing one, and later
/// stages take the pointwise minimum with each snapshot's shortest path.
/// Nonincreasing in s; equals bfs_distance at the final stage of a complete
/// build. The first finite value does not count as a change.
DistanceEstimate approx_distance(const StagedGraph& g, NodeId x, NodeId y, Nat s);

struct PairAudit {
  NodeId x = 0, y = 0;
  /// (stage, value) timeline of estimate changes, first entry included.
  std::vector<std::pair<Nat, Nat>> timeline;
  Nat changes = 0;
};

struct MindChangeReport {
  std::vector<PairAudit> pairs;
  Nat max_changes = 0;
};

/// Counts strict decreases of approx_distance per pair over stages 0..upto.
/// The unreached-to-finite transition is not a change, matching the
/// from-above discipline after first connection.
MindChangeReport mind_change_audit(const StagedGraph& g,
                                   std::span<const std::pair<NodeId, NodeId>> pairs, Nat upto);

}  // namespace spokelab
