#include "spokelab/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "spokelab/rng.hpp"

namespace spokelab {

const char* shape_name(GraphShape s) {
  switch (s) {
    case GraphShape::Standard: return "standard";
    case GraphShape::Elongated: return "elongated";
    case GraphShape::Directed: return "directed";
  }
  return "?";
}

DecreasingString::DecreasingString(std::vector<Nat> values) : values_(std::move(values)) {
  if (values_.empty()) fail(Errc::Monotonicity, "spoke type must be nonempty");
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] >= values_[i - 1])
      fail(Errc::Monotonicity, "spoke type must be strictly decreasing");
}

GraphSnapshot::GraphSnapshot(bool directed, Nat stage, bool complete, Nat nodes,
                             std::vector<std::pair<NodeId, NodeId>> edges)
    : directed_(directed), stage_(stage), complete_(complete), edge_count_(edges.size()) {
  out_.resize(nodes);
  if (directed) in_.resize(nodes);
  for (const auto& [x, y] : edges) {
    out_.at(x).push_back(y);
    if (directed) {
      in_.at(y).push_back(x);
    } else {
      out_.at(y).push_back(x);
    }
  }
  for (auto& row : out_) std::sort(row.begin(), row.end());
  for (auto& row : in_) std::sort(row.begin(), row.end());
}

void GraphSnapshot::check_node(NodeId x) const {
  if (x >= out_.size()) {
    std::ostringstream os;
    os << "node " << x << " not present in snapshot of " << out_.size() << " nodes";
    fail(Errc::NodeUnknown, os.str());
  }
}

std::span<const NodeId> GraphSnapshot::neighbors(NodeId x) const {
  check_node(x);
  return out_[x];
}

std::span<const NodeId> GraphSnapshot::in_neighbors(NodeId x) const {
  check_node(x);
  if (!directed_) return out_[x];
  return in_[x];
}

bool GraphSnapshot::adjacent(NodeId x, NodeId y) const {
  const auto row = neighbors(x);
  return std::binary_search(row.begin(), row.end(), y);
}

StagedGraph::StagedGraph(GraphShape shape, Nat creation_stage) : shape_(shape) {
  center_ = add_node(NodeRole::Center, creation_stage);
  if (shape == GraphShape::Elongated)
    bottom_ = add_node(NodeRole::BottomCenter, creation_stage);
}

NodeId StagedGraph::add_node(NodeRole role, Nat stage) {
  if (stage < last_stage_) fail(Errc::Monotonicity, "event stages never decrease");
  last_stage_ = std::max(last_stage_, stage);
  node_stage_.push_back(stage);
  node_role_.push_back(role);
  return node_stage_.size() - 1;
}

void StagedGraph::add_edge(NodeId x, NodeId y, Nat stage) {
  if (x >= node_count() || y >= node_count()) fail(Errc::NodeUnknown, "edge endpoint missing");
  if (stage < node_stage_[x] || stage < node_stage_[y] || stage < last_stage_)
    fail(Errc::Monotonicity, "edge added before its endpoints or out of stage order");
  last_stage_ = std::max(last_stage_, stage);
  edges_.emplace_back(x, y, stage);
}

std::vector<NodeId> StagedGraph::add_path(NodeId from, NodeId to, Nat interior, NodeRole role,
                                          Nat stage) {
  std::vector<NodeId> ids;
  NodeId prev = from;
  for (Nat i = 0; i < interior; ++i) {
    const NodeId n = add_node(role, stage);
    add_edge(prev, n, stage);
    ids.push_back(n);
    prev = n;
  }
  add_edge(prev, to, stage);
  return ids;
}

Nat StagedGraph::add_spoke(Nat first_value, Nat stage) {
  SpokeLayout spoke;
  spoke.type.push_back(first_value);
  const Nat interior = 1 + first_value;  // a-b paths have length 2 + sigma(0)
  switch (shape_) {
    case GraphShape::Standard: {
      spoke.a = add_node(NodeRole::SpokeA, stage);
      add_edge(center_, spoke.a, stage);
      spoke.b = add_node(NodeRole::SpokeB, stage);
      for (int i = 0; i < 3; ++i)
        spoke.paths.push_back(add_path(spoke.a, spoke.b, interior, NodeRole::PathNode, stage));
      break;
    }
    case GraphShape::Elongated: {
      spoke.elongation = 2 + first_value;
      spoke.a = add_node(NodeRole::SpokeA, stage);
      spoke.b = add_node(NodeRole::SpokeB, stage);
      // Chains of (3 + sigma(0)) nodes counting both endpoints.
      spoke.chain_u = add_path(center_, spoke.a, 1 + first_value, NodeRole::ChainNode, stage);
      spoke.chain_v = add_path(*bottom_, spoke.b, 1 + first_value, NodeRole::ChainNode, stage);
      for (int i = 0; i < 3; ++i)
        spoke.paths.push_back(add_path(spoke.a, spoke.b, interior, NodeRole::PathNode, stage));
      break;
    }
    case GraphShape::Directed: {
      spoke.a = center_;  // u itself is the top node of a directed spoke
      spoke.b = add_node(NodeRole::SpokeB, stage);
      for (int i = 0; i < 3; ++i)
        spoke.paths.push_back(add_path(center_, spoke.b, interior, NodeRole::PathNode, stage));
      spoke.return_path =
          add_path(spoke.b, center_, 2 + first_value, NodeRole::ReturnNode, stage);
      break;
    }
  }
  spokes_.push_back(std::move(spoke));
  return spokes_.size() - 1;
}

void StagedGraph::extend_spoke(Nat m, Nat value, Nat stage) {
  SpokeLayout& spoke = spokes_.at(m);
  if (value >= spoke.type.back()) {
    std::ostringstream os;
    os << "spoke " << m << ": new value " << value << " must be below " << spoke.type.back();
    fail(Errc::Monotonicity, os.str());
  }
  spoke.type.push_back(value);
  const NodeId from = directed() ? center_ : spoke.a;
  spoke.paths.push_back(add_path(from, spoke.b, 1 + value, NodeRole::PathNode, stage));
}

void StagedGraph::attach_loop(Nat m, Nat length, Nat stage) {
  if (shape_ != GraphShape::Standard)
    fail(Errc::Structure, "identification loops belong to standard graphs");
  if (length < 3) fail(Errc::Structure, "a loop needs length at least 3");
  SpokeLayout& spoke = spokes_.at(m);
  if (!spoke.loop.empty()) fail(Errc::Structure, "spoke already carries a loop");
  spoke.loop = add_path(spoke.a, spoke.a, length - 1, NodeRole::LoopNode, stage);
}

GraphSnapshot StagedGraph::snapshot(Nat s) const {
  if (s > last_stage_) {
    std::ostringstream os;
    os << "snapshot stage " << s << " beyond last stage " << last_stage_;
    fail(Errc::InputRange, os.str());
  }
  Nat nodes = 0;
  while (nodes < node_count() && node_stage_[nodes] <= s) ++nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [x, y, st] : edges_)
    if (st <= s) edges.emplace_back(x, y);
  return GraphSnapshot(directed(), s, complete_ && s == last_stage_, nodes, std::move(edges));
}

PermutedCopy permuted_copy(const StagedGraph& g, Nat seed) {
  Rng rng(seed ^ 0x5bf03635f0a5b1c5ULL);

  // Shuffle node creation order within each stage; new ids then follow the
  // shuffled order, so the copy is again a valid stage-wise presentation.
  // The centers stay pinned to the ids the constructor hands out.
  std::map<Nat, std::vector<NodeId>> nodes_by_stage;
  for (NodeId x = 0; x < g.node_count(); ++x) nodes_by_stage[g.node_stage(x)].push_back(x);
  std::map<Nat, std::vector<std::pair<NodeId, NodeId>>> edges_by_stage;
  for (const auto& [x, y, st] : g.edges()) edges_by_stage[st].emplace_back(x, y);

  const Nat creation_stage = g.node_stage(g.center());
  std::vector<NodeId> order;
  for (auto& [stage, group] : nodes_by_stage) {
    rng.shuffle(group);
    if (stage == creation_stage) {
      auto pin = [&group](NodeId who, std::size_t slot) {
        auto it = std::find(group.begin(), group.end(), who);
        std::iter_swap(group.begin() + slot, it);
      };
      pin(g.center(), 0);
      if (g.bottom_center()) pin(*g.bottom_center(), 1);
    }
    order.insert(order.end(), group.begin(), group.end());
  }
  std::vector<NodeId> map(g.node_count());
  for (NodeId pos = 0; pos < order.size(); ++pos) map[order[pos]] = pos;

  // Replay the event log stage by stage: nodes first (skipping the
  // constructor-made centers), then that stage's edges in shuffled order.
  StagedGraph copy(g.shape(), creation_stage);
  for (const auto& [stage, group] : nodes_by_stage) {
    for (NodeId old : group) {
      if (old == g.center() || (g.bottom_center() && old == *g.bottom_center())) continue;
      copy.add_node(g.node_role(old), stage);
    }
    auto it = edges_by_stage.find(stage);
    if (it == edges_by_stage.end()) continue;
    auto& edges = it->second;
    rng.shuffle(edges);
    for (const auto& [x, y] : edges) copy.add_edge(map[x], map[y], stage);
  }

  // Carry the layout across the isomorphism (ground truth for harnesses).
  for (Nat m = 0; m < g.spoke_count(); ++m) {
    const SpokeLayout& src = g.spoke(m);
    SpokeLayout dst;
    dst.a = map[src.a];
    dst.b = map[src.b];
    dst.type = src.type;
    dst.elongation = src.elongation;
    auto remap = [&map](const std::vector<NodeId>& ids) {
      std::vector<NodeId> out;
      out.reserve(ids.size());
      for (NodeId i : ids) out.push_back(map[i]);
      return out;
    };
    for (const auto& p : src.paths) dst.paths.push_back(remap(p));
    dst.chain_u = remap(src.chain_u);
    dst.chain_v = remap(src.chain_v);
    dst.loop = remap(src.loop);
    dst.return_path = remap(src.return_path);
    copy.spokes_.push_back(std::move(dst));
  }
  copy.set_complete(g.complete());
  return {std::move(copy), std::move(map)};
}

}  // namespace spokelab
