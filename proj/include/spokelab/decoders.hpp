#pragma once

#include <map>
#include <string>
#include <vector>

#include "spokelab/distance.hpp"
#include "spokelab/graph.hpp"
#include "spokelab/trace.hpp"

namespace spokelab {

/// The restricted distance oracle d|S over the spoke endpoint pairs, with a
/// per-run call log. Queries outside S are refused. Decoders receive only
/// this oracle and an adjacency snapshot; layout ground truth stays on the
/// harness side.
class SpokeOracle {
 public:
  explicit SpokeOracle(std::vector<std::pair<std::pair<NodeId, NodeId>, Nat>> entries);

  Nat query(NodeId a, NodeId b) const;
  bool allows(NodeId a, NodeId b) const;
  Nat size() const { return answers_.size(); }

  const std::vector<Nat>& log() const { return log_; }  // Cantor codes, call order
  void reset_log() const { log_.clear(); }

 private:
  std::map<Nat, Nat> answers_;  // cantor(a,b) -> d(a,b)
  mutable std::vector<Nat> log_;
};

/// Harness-side constructor: S and its answers from the layout plus BFS on
/// the complete snapshot. Standard/elongated graphs use the pairs (a_m,b_m);
/// directed graphs use (u,b_m).
SpokeOracle make_spoke_oracle(const StagedGraph& g, const GraphSnapshot& snap);

enum class SpokePosition { Between, AboveA, BelowB };
const char* position_name(SpokePosition p);

/// Where x sits on its spoke, found through adjacency queries alone.
/// Positions follow the elongated case split; x = a or x = b fold into
/// Between with a zero offset on their own side and a symbolic offset
/// (routed through d(a,b)) on the other. Identification-loop nodes report
/// AboveA with on_loop set: they hang off a just like an elongation chain
/// whose both ends are a.
struct EndpointReport {
  NodeId a = 0;
  NodeId b = 0;
  SpokePosition position = SpokePosition::Between;
  Nat l = 0;  // elongation length, elongated graphs only

  // Between: along-path offsets. at_a / at_b mark the exact endpoints, whose
  // opposite offset is symbolic (equals d(a,b)).
  bool at_a = false, at_b = false;
  Nat dist_a = 0, dist_b = 0;
  bool has_path = false;  // strict path interior: path identity is known
  Nat path_tag = 0;       // smallest interior id of the path
  Nat path_len = 0;

  // AboveA / BelowB on an elongation chain.
  Nat dist_center = 0;  // along-chain distance to u (above) or v (below)
  Nat dist_anchor = 0;  // along-chain distance to a (above) or b (below)

  // Identification loops (standard graphs).
  bool on_loop = false;
  Nat loop_pos = 0;  // offset from a along the canonical arm direction
  Nat loop_len = 0;
  Nat loop_min = 0;  // min(loop_pos, loop_len - loop_pos)
};

EndpointReport locate_endpoints_standard(const GraphSnapshot& snap, NodeId u, NodeId x);
EndpointReport locate_endpoints_elongated(const GraphSnapshot& snap, NodeId u, NodeId v,
                                          NodeId x);

/// One entry of the answer->output table a decoder commits to before
/// consulting the oracle: value = base + coef_x * d(a_x,b_x) + coef_y *
/// d(a_y,b_y).
struct Candidate {
  std::string label;
  Nat base = 0;
  Nat coef_x = 0;
  Nat coef_y = 0;
};

struct DecodeOutcome {
  Nat value = 0;
  QueryAudit audit;  // cantor-coded oracle pairs, in call order
  std::vector<Candidate> table;
  std::string case_label;
};

/// Distance decoding on a complete standard-shape snapshot (identification
/// loops allowed) from adjacency plus at most two spoke-oracle values.
DecodeOutcome decode_standard(const GraphSnapshot& snap, NodeId u, const SpokeOracle& so,
                              NodeId x, NodeId y);

/// Distance decoding on a complete elongated snapshot: the thirteen-path
/// table for pairs between their endpoints, and the center/elongation case
/// split otherwise. duv is the certified d(u,v) constant. At most two oracle
/// values.
DecodeOutcome decode_elongated(const GraphSnapshot& snap, NodeId u, NodeId v, Nat duv,
                               const SpokeOracle& so, NodeId x, NodeId y);

/// Directed decoding: walk the unique out-arcs from x to y or to the center,
/// then locate y's spoke; at most one oracle value d(u,b_m).
DecodeOutcome decode_directed(const GraphSnapshot& snap, const SpokeOracle& so, NodeId x,
                              NodeId y);

/// Recovers n from the unique cycle through a_n avoiding b_n and the center:
/// its length minus 3.
Nat loop_index(const GraphSnapshot& snap, NodeId u, NodeId a);

/// The certified d(u,v) constant for an elongated build, with the minimizing
/// spoke recorded.
struct DuvCertificate {
  Nat value = 0;
  Nat spoke = 0;
};
DuvCertificate certify_duv(const StagedGraph& g, const GraphSnapshot& snap);

}  // namespace spokelab
