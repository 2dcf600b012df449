#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "spokelab/errors.hpp"
#include "spokelab/nat.hpp"

namespace spokelab {

using NodeId = Nat;

/// A nonempty strictly decreasing finite tuple of naturals: the type of a
/// spoke. Construction validates the discipline once; extension re-checks it.
class DecreasingString {
 public:
  explicit DecreasingString(std::vector<Nat> values);
  Nat front() const { return values_.front(); }
  Nat back() const { return values_.back(); }
  Nat size() const { return values_.size(); }
  std::span<const Nat> values() const { return values_; }
  bool operator==(const DecreasingString&) const = default;

 private:
  std::vector<Nat> values_;
};

enum class GraphShape { Standard, Elongated, Directed };
const char* shape_name(GraphShape s);

enum class NodeRole : unsigned char {
  Center,        // u
  BottomCenter,  // v (elongated only)
  SpokeA,        // a_m (coincides with u in directed graphs, so unused there)
  SpokeB,        // b_m
  PathNode,      // interior of an a-b (or u-b) path
  ChainNode,     // interior of an elongation chain
  LoopNode,      // identification-loop node
  ReturnNode,    // interior of a directed return path b->u
};

/// Ground-truth roles of one spoke. Quarantined from decoders: only the
/// builders, oracles and test harnesses may look at it.
struct SpokeLayout {
  NodeId a = 0;  // equals the center u for directed spokes
  NodeId b = 0;
  std::optional<Nat> trace_input;  // the trace input this spoke encodes, if any
  std::vector<Nat> type;           // sigma, strictly decreasing
  std::vector<std::vector<NodeId>> paths;  // per path, interiors in a->b order
  std::vector<NodeId> chain_u;  // elongation interiors u->a order
  std::vector<NodeId> chain_v;  // elongation interiors v->b order
  std::vector<NodeId> loop;     // identification loop interiors, cycle order from a
  std::vector<NodeId> return_path;  // directed return interiors b->u order
  Nat elongation = 0;               // l = 2 + sigma(0); 0 unless elongated
};

/// Frozen finite view of the build at one stage. Carries adjacency only, so
/// handing a snapshot to a decoder cannot leak layout ground truth.
class GraphSnapshot {
 public:
  GraphSnapshot(bool directed, Nat stage, bool complete, Nat nodes,
                std::vector<std::pair<NodeId, NodeId>> edges);

  bool directed() const { return directed_; }
  Nat stage() const { return stage_; }
  bool complete() const { return complete_; }
  Nat node_count() const { return out_.size(); }
  Nat edge_count() const { return edge_count_; }

  /// Neighbors in ascending id order; out-neighbors when directed.
  std::span<const NodeId> neighbors(NodeId x) const;
  std::span<const NodeId> in_neighbors(NodeId x) const;  // directed only
  bool adjacent(NodeId x, NodeId y) const;
  Nat degree(NodeId x) const { return neighbors(x).size(); }

  void check_node(NodeId x) const;

 private:
  bool directed_;
  Nat stage_;
  bool complete_;
  Nat edge_count_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
};

class StagedGraph;
struct PermutedCopy;
PermutedCopy permuted_copy(const StagedGraph& g, Nat seed);

/// An append-only event log of node and edge additions, together with the
/// layout ground truth of every spoke. Node ids are allocated sequentially
/// in event order and event stages never decrease, so the nodes present at
/// stage s always form the id prefix [0, n_s).
class StagedGraph {
 public:
  explicit StagedGraph(GraphShape shape, Nat creation_stage = 0);

  GraphShape shape() const { return shape_; }
  bool directed() const { return shape_ == GraphShape::Directed; }
  NodeId center() const { return center_; }
  std::optional<NodeId> bottom_center() const { return bottom_; }
  Nat node_count() const { return node_stage_.size(); }
  Nat spoke_count() const { return spokes_.size(); }
  Nat last_stage() const { return last_stage_; }
  bool complete() const { return complete_; }
  void set_complete(bool value) { complete_ = value; }

  const SpokeLayout& spoke(Nat m) const { return spokes_.at(m); }
  std::span<const SpokeLayout> spokes() const { return spokes_; }
  Nat node_stage(NodeId x) const { return node_stage_.at(x); }
  NodeRole node_role(NodeId x) const { return node_role_.at(x); }
  std::span<const std::tuple<NodeId, NodeId, Nat>> edges() const { return edges_; }

  /// Creates a spoke of type <first_value> at the given stage and returns its
  /// index. Standard: a adjacent to u plus three a-b paths of length
  /// 2+first_value. Elongated: chains u->a and v->b of that same length.
  /// Directed: u is the spoke's own top, three u->b arcs paths plus one
  /// return path b->u of length 3+first_value.
  Nat add_spoke(Nat first_value, Nat stage);

  /// Adds one more a-b (or u->b) path of length 2+value; value must be
  /// strictly below the spoke's current minimum.
  void extend_spoke(Nat m, Nat value, Nat stage);

  void tag_spoke(Nat m, Nat trace_input) { spokes_.at(m).trace_input = trace_input; }

  /// Attaches the identification loop of length `length` at a_m (standard
  /// shape only), touching the rest of the graph at a_m alone.
  void attach_loop(Nat m, Nat length, Nat stage);

  /// Frozen view of all events with stage <= s.
  GraphSnapshot snapshot(Nat s) const;
  GraphSnapshot snapshot() const { return snapshot(last_stage_); }

  // Low-level event API, used by the builders and by tests that need
  // graphs outside the spoke families.
  NodeId add_node(NodeRole role, Nat stage);
  void add_edge(NodeId x, NodeId y, Nat stage);

 private:
  friend struct PermutedCopy;
  friend PermutedCopy permuted_copy(const StagedGraph& g, Nat seed);
  friend void read_layout(std::istream& in, StagedGraph& g, const std::string& name);

  std::vector<NodeId> add_path(NodeId from, NodeId to, Nat interior, NodeRole role, Nat stage);

  GraphShape shape_;
  NodeId center_ = 0;
  std::optional<NodeId> bottom_;
  Nat last_stage_ = 0;
  bool complete_ = false;
  std::vector<Nat> node_stage_;
  std::vector<NodeRole> node_role_;
  std::vector<std::tuple<NodeId, NodeId, Nat>> edges_;
  std::vector<SpokeLayout> spokes_;
};

/// An isomorphic presentation with freshly shuffled ids: node creation order
/// is permuted within every stage and ids are re-allocated sequentially, so
/// the copy is again a valid stage-wise presentation. The hidden isomorphism
/// (old id -> new id) is recorded for harness-side ground truth only.
struct PermutedCopy {
  StagedGraph graph;
  std::vector<NodeId> iso;
};
PermutedCopy permuted_copy(const StagedGraph& g, Nat seed);

}  // namespace spokelab
