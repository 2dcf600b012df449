#include "spokelab/distance.hpp"

#include <algorithm>
#include <deque>

namespace spokelab {

std::vector<Nat> bfs_from(const GraphSnapshot& snap, NodeId x) {
  snap.check_node(x);
  std::vector<Nat> dist(snap.node_count(), kUnreached);
  std::deque<NodeId> frontier{x};
  dist[x] = 0;
  while (!frontier.empty()) {
    const NodeId cur = frontier.front();
    frontier.pop_front();
    for (NodeId next : snap.neighbors(cur)) {
      if (dist[next] != kUnreached) continue;
      dist[next] = dist[cur] + 1;
      frontier.push_back(next);
    }
  }
  return dist;
}

Nat bfs_distance(const GraphSnapshot& snap, NodeId x, NodeId y) {
  snap.check_node(x);
  snap.check_node(y);
  if (x == y) return 0;
  std::vector<Nat> dist(snap.node_count(), kUnreached);
  std::deque<NodeId> frontier{x};
  dist[x] = 0;
  while (!frontier.empty()) {
    const NodeId cur = frontier.front();
    frontier.pop_front();
    for (NodeId next : snap.neighbors(cur)) {
      if (dist[next] != kUnreached) continue;
      dist[next] = dist[cur] + 1;
      if (next == y) return dist[next];
      frontier.push_back(next);
    }
  }
  return kUnreached;
}

DistanceEstimate approx_distance(const StagedGraph& g, NodeId x, NodeId y, Nat s) {
  if (std::max(g.node_stage(x), g.node_stage(y)) > s)
    fail(Errc::NodeUnknown, "node not yet present at the requested stage");
  DistanceEstimate est;
  for (Nat t = std::max(g.node_stage(x), g.node_stage(y)); t <= s; ++t) {
    const Nat d = bfs_distance(g.snapshot(t), x, y);
    if (d == kUnreached) continue;
    if (est.value == kUnreached) {
      est.value = d;  // first connection; not a mind change
    } else if (d < est.value) {
      est.value = d;
      ++est.changes_so_far;
    }
  }
  est.stage = s;
  return est;
}

MindChangeReport mind_change_audit(const StagedGraph& g,
                                   std::span<const std::pair<NodeId, NodeId>> pairs, Nat upto) {
  MindChangeReport report;
  report.pairs.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    report.pairs[i].x = pairs[i].first;
    report.pairs[i].y = pairs[i].second;
  }
  const Nat last = std::min(upto, g.last_stage());
  for (Nat t = 0; t <= last; ++t) {
    const GraphSnapshot snap = g.snapshot(t);
    // One BFS per distinct source present in this snapshot.
    std::vector<std::vector<Nat>> cache;
    std::vector<NodeId> sources;
    auto dist_from = [&](NodeId x) -> const std::vector<Nat>& {
      for (std::size_t i = 0; i < sources.size(); ++i)
        if (sources[i] == x) return cache[i];
      sources.push_back(x);
      cache.push_back(bfs_from(snap, x));
      return cache.back();
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto& audit = report.pairs[i];
      const auto [x, y] = pairs[i];
      if (std::max(x, y) >= snap.node_count()) continue;
      const Nat d = dist_from(x)[y];
      if (d == kUnreached) continue;
      const bool first = audit.timeline.empty();
      const Nat prev = first ? kUnreached : audit.timeline.back().second;
      if (first || d < prev) {
        audit.timeline.emplace_back(t, d);
        if (!first) ++audit.changes;
      }
    }
  }
  for (const auto& audit : report.pairs)
    report.max_changes = std::max(report.max_changes, audit.changes);
  return report;
}

}  // namespace spokelab
