#include "spokelab/decoders.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace spokelab {

SpokeOracle::SpokeOracle(std::vector<std::pair<std::pair<NodeId, NodeId>, Nat>> entries) {
  for (const auto& [pair, d] : entries) answers_[cantor_pair(pair.first, pair.second)] = d;
}

bool SpokeOracle::allows(NodeId a, NodeId b) const {
  return answers_.count(cantor_pair(a, b)) != 0;
}

Nat SpokeOracle::query(NodeId a, NodeId b) const {
  const Nat code = cantor_pair(a, b);
  auto it = answers_.find(code);
  if (it == answers_.end()) {
    std::ostringstream os;
    os << "spoke oracle refuses <" << a << "," << b << ">: pair outside S";
    fail(Errc::AuditViolation, os.str());
  }
  log_.push_back(code);
  return it->second;
}

SpokeOracle make_spoke_oracle(const StagedGraph& g, const GraphSnapshot& snap) {
  std::vector<std::pair<std::pair<NodeId, NodeId>, Nat>> entries;
  for (const auto& spoke : g.spokes()) {
    const NodeId a = g.directed() ? g.center() : spoke.a;
    entries.push_back({{a, spoke.b}, bfs_distance(snap, a, spoke.b)});
  }
  return SpokeOracle(std::move(entries));
}

const char* position_name(SpokePosition p) {
  switch (p) {
    case SpokePosition::Between: return "between";
    case SpokePosition::AboveA: return "above_a";
    case SpokePosition::BelowB: return "below_b";
  }
  return "?";
}

namespace {

struct Walk {
  NodeId end = 0;
  Nat length = 0;                // edges from the origin to end
  std::vector<NodeId> interior;  // strictly between origin and end
  bool hit_center = false;
};

bool is_center(NodeId n, const std::vector<NodeId>& centers) {
  return std::find(centers.begin(), centers.end(), n) != centers.end();
}

// Follows degree-2 nodes from origin through its neighbor `first`, stopping
// at a junction (degree != 2), back at the origin (a cycle arm), or on a
// center node.
Walk follow(const GraphSnapshot& snap, NodeId origin, NodeId first,
            const std::vector<NodeId>& centers) {
  Walk w;
  NodeId prev = origin;
  NodeId cur = first;
  w.length = 1;
  while (true) {
    if (is_center(cur, centers)) {
      w.end = cur;
      w.hit_center = true;
      return w;
    }
    if (cur == origin || snap.degree(cur) != 2) {
      w.end = cur;
      return w;
    }
    w.interior.push_back(cur);
    const auto nb = snap.neighbors(cur);
    const NodeId next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    ++w.length;
  }
}

std::vector<Walk> walks_from(const GraphSnapshot& snap, NodeId origin,
                             const std::vector<NodeId>& centers) {
  std::vector<Walk> out;
  for (NodeId w : snap.neighbors(origin)) {
    if (is_center(w, centers)) continue;  // the edge into a center is not a spoke walk
    out.push_back(follow(snap, origin, w, centers));
  }
  return out;
}

// The common far endpoint of the (at least three) equal-length longest
// junction walks: the paper's identification of b.
NodeId identify_b(const std::vector<Walk>& walks, NodeId a) {
  std::optional<NodeId> b;
  Nat best = 0, best_count = 0;
  for (const auto& w : walks) {
    if (w.hit_center || w.end == a) continue;
    if (b && *b != w.end) fail(Errc::Structure, "junction walks disagree on the far endpoint");
    b = w.end;
    if (w.length > best) {
      best = w.length;
      best_count = 1;
    } else if (w.length == best) {
      ++best_count;
    }
  }
  if (!b) fail(Errc::Structure, "no junction walk leaves this node");
  if (best_count < 3)
    fail(Errc::Structure, "fewer than three equal longest paths; not a spoke endpoint");
  return *b;
}

// BFS avoiding the centers; returns reached flags.
std::vector<bool> component_avoiding(const GraphSnapshot& snap, NodeId x,
                                     const std::vector<NodeId>& centers) {
  std::vector<bool> reached(snap.node_count(), false);
  std::vector<NodeId> stack{x};
  reached[x] = true;
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    for (NodeId next : snap.neighbors(cur)) {
      if (reached[next] || is_center(next, centers)) continue;
      reached[next] = true;
      stack.push_back(next);
    }
  }
  return reached;
}

void fill_between(EndpointReport& r, const std::vector<Walk>& a_walks, NodeId a, NodeId b,
                  NodeId x) {
  if (x == a) {
    r.at_a = true;
    r.dist_a = 0;
    return;
  }
  if (x == b) {
    r.at_b = true;
    r.dist_b = 0;
    return;
  }
  std::vector<const Walk*> seen_loops;
  for (const auto& w : a_walks) {
    if (w.hit_center) continue;
    if (w.end == a) {
      // A cycle arm; each loop shows up twice (once per direction). Keep the
      // first direction encountered as the canonical orientation.
      bool duplicate = false;
      for (const Walk* prior : seen_loops)
        if (!prior->interior.empty() && !w.interior.empty() &&
            prior->interior.back() == w.interior.front())
          duplicate = true;
      if (!duplicate) seen_loops.push_back(&w);
      if (duplicate) continue;
      for (Nat i = 0; i < w.interior.size(); ++i) {
        if (w.interior[i] != x) continue;
        r.position = SpokePosition::AboveA;
        r.on_loop = true;
        r.loop_len = w.length;
        r.loop_pos = i + 1;
        r.loop_min = std::min<Nat>(i + 1, w.length - (i + 1));
        return;
      }
      continue;
    }
    for (Nat i = 0; i < w.interior.size(); ++i) {
      if (w.interior[i] != x) continue;
      r.position = SpokePosition::Between;
      r.has_path = true;
      r.dist_a = i + 1;
      r.dist_b = w.length - (i + 1);
      r.path_len = w.length;
      r.path_tag = *std::min_element(w.interior.begin(), w.interior.end());
      return;
    }
  }
  fail(Errc::Structure, "node not found on its own spoke");
}

}  // namespace

EndpointReport locate_endpoints_standard(const GraphSnapshot& snap, NodeId u, NodeId x) {
  snap.check_node(x);
  if (x == u) fail(Errc::InputRange, "x is the center node");
  const std::vector<NodeId> centers{u};
  const auto reached = component_avoiding(snap, x, centers);
  std::optional<NodeId> a;
  for (NodeId cand : snap.neighbors(u)) {
    if (!reached[cand]) continue;
    if (a) fail(Errc::Structure, "two center neighbors reachable without the center");
    a = cand;
  }
  if (!a) fail(Errc::Structure, "no center neighbor reachable; not a spoke node");

  const auto walks = walks_from(snap, *a, centers);
  EndpointReport r;
  r.a = *a;
  r.b = identify_b(walks, *a);
  r.position = SpokePosition::Between;
  fill_between(r, walks, r.a, r.b, x);
  return r;
}

EndpointReport locate_endpoints_elongated(const GraphSnapshot& snap, NodeId u, NodeId v,
                                          NodeId x) {
  snap.check_node(x);
  if (x == u || x == v) fail(Errc::InputRange, "x is a center node");
  const std::vector<NodeId> centers{u, v};
  const auto reached = component_avoiding(snap, x, centers);

  // The spoke's two junctions are the only reached nodes of degree > 2.
  std::vector<NodeId> junctions;
  for (NodeId n = 0; n < snap.node_count(); ++n)
    if (reached[n] && snap.degree(n) > 2) junctions.push_back(n);
  if (junctions.size() != 2)
    fail(Errc::Structure, "expected exactly two junction nodes on the spoke");

  // The junction whose chain walk reaches u is a; the other reaches v.
  EndpointReport r;
  std::vector<Walk> a_walks;
  bool oriented = false;
  for (NodeId j : junctions) {
    auto walks = walks_from(snap, j, centers);
    for (const auto& w : walks) {
      if (!w.hit_center) continue;
      if (w.end == u) {
        r.a = j;
        r.l = w.length;
        a_walks = walks;
        oriented = true;
      } else {
        r.b = j;
      }
    }
  }
  if (!oriented) fail(Errc::Structure, "no elongation chain reaches the top center");
  identify_b(a_walks, r.a);  // validates the three equal longest paths
  if (r.b == r.a) fail(Errc::Structure, "junction chains do not separate a from b");

  // Position: on a path, on one of the chains, or an endpoint.
  if (x == r.a || x == r.b) {
    r.position = SpokePosition::Between;
    fill_between(r, a_walks, r.a, r.b, x);
    return r;
  }
  for (const auto& w : a_walks) {
    if (w.hit_center && w.end == u) {
      for (Nat i = 0; i < w.interior.size(); ++i) {
        if (w.interior[i] != x) continue;
        r.position = SpokePosition::AboveA;
        r.dist_anchor = i + 1;            // along-chain distance to a
        r.dist_center = r.l - (i + 1);    // along-chain distance to u
        return r;
      }
    }
  }
  {
    const auto b_walks = walks_from(snap, r.b, centers);
    for (const auto& w : b_walks) {
      if (w.hit_center && w.end == v) {
        for (Nat i = 0; i < w.interior.size(); ++i) {
          if (w.interior[i] != x) continue;
          r.position = SpokePosition::BelowB;
          r.dist_anchor = i + 1;          // to b
          r.dist_center = r.l - (i + 1);  // to v
          return r;
        }
      }
    }
  }
  r.position = SpokePosition::Between;
  fill_between(r, a_walks, r.a, r.b, x);
  return r;
}

namespace {

enum class Slot { X, Y };

struct Aff {
  Nat c = 0, cx = 0, cy = 0;
};

Aff operator+(Aff a, const Aff& b) {
  a.c += b.c;
  a.cx += b.cx;
  a.cy += b.cy;
  return a;
}

Aff konst(Nat c) { return {c, 0, 0}; }

Aff oracle_term(Slot s) { return s == Slot::X ? Aff{0, 1, 0} : Aff{0, 0, 1}; }

// Along-path offset from a between-node to its a endpoint; symbolic (routed
// through d(a,b)) when the node is exactly b.
Aff off_a(const EndpointReport& r, Slot s) {
  if (r.at_b) return oracle_term(s);
  return konst(r.dist_a);
}

Aff off_b(const EndpointReport& r, Slot s) {
  if (r.at_a) return oracle_term(s);
  return konst(r.dist_b);
}

void push(std::vector<Candidate>& table, const std::string& label, const Aff& a) {
  table.push_back({label, a.c, a.cx, a.cy});
}

// Commits to the candidate table, queries the oracle only for the pairs the
// table actually mentions, and takes the minimum.
void finish(DecodeOutcome& out, const SpokeOracle& so,
            std::optional<std::pair<NodeId, NodeId>> pair_x,
            std::optional<std::pair<NodeId, NodeId>> pair_y) {
  bool need_x = false, need_y = false;
  for (const auto& cand : out.table) {
    if (cand.coef_x > 0) need_x = true;
    if (cand.coef_y > 0) need_y = true;
  }
  Nat ax = 0, ay = 0;
  if (need_x) {
    if (!pair_x) fail(Errc::Structure, "candidate table mentions a pair that was never located");
    ax = so.query(pair_x->first, pair_x->second);
    out.audit.queries.push_back(cantor_pair(pair_x->first, pair_x->second));
  }
  if (need_y) {
    if (!pair_y) fail(Errc::Structure, "candidate table mentions a pair that was never located");
    ay = so.query(pair_y->first, pair_y->second);
    out.audit.queries.push_back(cantor_pair(pair_y->first, pair_y->second));
  }
  Nat best = kUnreached;
  for (const auto& cand : out.table)
    best = std::min(best, cand.base + cand.coef_x * ax + cand.coef_y * ay);
  out.value = best;
}

}  // namespace

DecodeOutcome decode_standard(const GraphSnapshot& snap, NodeId u, const SpokeOracle& so,
                              NodeId x, NodeId y) {
  snap.check_node(x);
  snap.check_node(y);
  DecodeOutcome out;
  if (x == y) {
    out.case_label = "reflexive";
    out.value = 0;
    return out;
  }
  if (x == u || y == u) {
    const NodeId z = (x == u) ? y : x;
    const Slot slot = (x == u) ? Slot::Y : Slot::X;
    const auto r = locate_endpoints_standard(snap, u, z);
    out.case_label = "center";
    if (r.on_loop) {
      push(out.table, "center-loop", konst(r.loop_min + 1));
    } else {
      push(out.table, "center-via-a", off_a(r, slot) + konst(1));
      push(out.table, "center-via-b", off_b(r, slot) + oracle_term(slot) + konst(1));
    }
    const auto pair = std::make_pair(r.a, r.b);
    using MaybePair = std::optional<std::pair<NodeId, NodeId>>;
    finish(out, so, slot == Slot::X ? MaybePair(pair) : MaybePair(),
           slot == Slot::Y ? MaybePair(pair) : MaybePair());
    return out;
  }

  const auto rx = locate_endpoints_standard(snap, u, x);
  const auto ry = locate_endpoints_standard(snap, u, y);
  const auto pair_x = std::make_pair(rx.a, rx.b);
  const auto pair_y = std::make_pair(ry.a, ry.b);

  if (rx.a == ry.a) {
    // Same spoke: a single oracle pair, carried on the X slot.
    const Slot s = Slot::X;
    if (rx.on_loop && ry.on_loop) {
      const Nat diff =
          rx.loop_pos > ry.loop_pos ? rx.loop_pos - ry.loop_pos : ry.loop_pos - rx.loop_pos;
      out.case_label = "same-loop";
      push(out.table, "around-loop", konst(std::min(diff, rx.loop_len - diff)));
    } else if (rx.on_loop || ry.on_loop) {
      out.case_label = "loop-to-spoke";
      const EndpointReport& lo = rx.on_loop ? rx : ry;
      const EndpointReport& ot = rx.on_loop ? ry : rx;
      push(out.table, "loop-a-direct", konst(lo.loop_min) + off_a(ot, s));
      push(out.table, "loop-a-b", konst(lo.loop_min) + oracle_term(s) + off_b(ot, s));
    } else {
      const bool same_path = rx.has_path && ry.has_path && rx.path_tag == ry.path_tag;
      out.case_label = same_path ? "case1" : "case2";
      if (same_path) {
        const Nat d =
            rx.dist_a > ry.dist_a ? rx.dist_a - ry.dist_a : ry.dist_a - rx.dist_a;
        push(out.table, "along-path", konst(d));
      }
      push(out.table, "via-a", off_a(rx, s) + off_a(ry, s));
      push(out.table, "via-b", off_b(rx, s) + off_b(ry, s));
      push(out.table, "via-a-b", off_a(rx, s) + oracle_term(s) + off_b(ry, s));
      push(out.table, "via-b-a", off_b(rx, s) + oracle_term(s) + off_a(ry, s));
    }
    finish(out, so, pair_x, std::nullopt);
    return out;
  }

  // Distinct spokes: d(x,y) = d(x,u) + d(u,y).
  out.case_label = "case3";
  std::vector<Aff> half_x, half_y;
  if (rx.on_loop) {
    half_x.push_back(konst(rx.loop_min + 1));
  } else {
    half_x.push_back(off_a(rx, Slot::X) + konst(1));
    half_x.push_back(off_b(rx, Slot::X) + oracle_term(Slot::X) + konst(1));
  }
  if (ry.on_loop) {
    half_y.push_back(konst(ry.loop_min + 1));
  } else {
    half_y.push_back(off_a(ry, Slot::Y) + konst(1));
    half_y.push_back(off_b(ry, Slot::Y) + oracle_term(Slot::Y) + konst(1));
  }
  for (std::size_t i = 0; i < half_x.size(); ++i)
    for (std::size_t j = 0; j < half_y.size(); ++j) {
      std::ostringstream label;
      label << "via-u-" << i << j;
      push(out.table, label.str(), half_x[i] + half_y[j]);
    }
  finish(out, so, pair_x, pair_y);
  return out;
}

namespace {

// Anchor-level distance candidates for the elongated composite cases. Every
// entry is the exact length of some route shape between the two anchors, and
// the set contains a value matching the true distance.
enum class Anchor { U, V, A, B };

std::vector<Aff> anchor_dist(Anchor p, Anchor q, const EndpointReport& rx,
                             const EndpointReport& ry, bool same_spoke, Nat duv) {
  const Nat lx = rx.l, ly = ry.l;
  const Aff AX = oracle_term(Slot::X), AY = oracle_term(Slot::Y);
  // Same-spoke anchors share one oracle pair, carried on the X slot.
  const Aff AYs = same_spoke ? AX : AY;
  const Nat lys = same_spoke ? lx : ly;

  if (p == Anchor::U && q == Anchor::U) return {konst(0)};
  if (p == Anchor::V && q == Anchor::V) return {konst(0)};
  if ((p == Anchor::U && q == Anchor::V) || (p == Anchor::V && q == Anchor::U))
    return {konst(duv)};

  // Center against an anchor of y's spoke.
  if (p == Anchor::U || p == Anchor::V) {
    if (q == Anchor::A)
      return p == Anchor::U ? std::vector<Aff>{konst(lys), konst(duv + lys) + AYs}
                            : std::vector<Aff>{konst(lys) + AYs, konst(duv + lys)};
    return p == Anchor::V ? std::vector<Aff>{konst(lys), konst(duv + lys) + AYs}
                          : std::vector<Aff>{konst(lys) + AYs, konst(duv + lys)};
  }
  // Anchor of x's spoke against a center.
  if (q == Anchor::U || q == Anchor::V) {
    auto flipped = anchor_dist(q, p, ry, rx, same_spoke, duv);
    if (!same_spoke)  // swap the oracle slots back
      for (auto& a : flipped) std::swap(a.cx, a.cy);
    return flipped;
  }

  // Anchor against anchor.
  if (same_spoke) {
    if (p == q) return {konst(0)};
    return {AX};
  }
  if (p == q) {  // A_j vs A_k or B_j vs B_k
    return {konst(lx + ly), AX + konst(lx + duv + ly), konst(lx + duv + ly) + AY,
            AX + konst(lx + ly) + AY};
  }
  if (p == Anchor::A) {  // A_j vs B_k
    return {konst(lx + duv + ly), konst(lx + ly) + AY, AX + konst(lx + ly)};
  }
  // B_j vs A_k
  return {konst(lx + duv + ly), konst(lx + ly) + AY, AX + konst(lx + ly)};
}

struct Exit {
  Anchor anchor;
  Aff offset;
};

std::vector<Exit> exits_of(const EndpointReport& r, Slot s) {
  switch (r.position) {
    case SpokePosition::Between:
      return {{Anchor::A, off_a(r, s)}, {Anchor::B, off_b(r, s)}};
    case SpokePosition::AboveA:
      return {{Anchor::U, konst(r.dist_center)}, {Anchor::A, konst(r.dist_anchor)}};
    case SpokePosition::BelowB:
      return {{Anchor::V, konst(r.dist_center)}, {Anchor::B, konst(r.dist_anchor)}};
  }
  return {};
}

const char* anchor_name(Anchor a) {
  switch (a) {
    case Anchor::U: return "u";
    case Anchor::V: return "v";
    case Anchor::A: return "a";
    case Anchor::B: return "b";
  }
  return "?";
}

}  // namespace

DecodeOutcome decode_elongated(const GraphSnapshot& snap, NodeId u, NodeId v, Nat duv,
                               const SpokeOracle& so, NodeId x, NodeId y) {
  snap.check_node(x);
  snap.check_node(y);
  if (!snap.complete()) fail(Errc::Incomplete, "decoding needs a complete snapshot");
  DecodeOutcome out;
  if (x == y) {
    out.case_label = "reflexive";
    out.value = 0;
    return out;
  }
  const bool xc = (x == u || x == v), yc = (y == u || y == v);
  if (xc && yc) {
    out.case_label = "centers";
    push(out.table, "u-v", konst(duv));
    finish(out, so, std::nullopt, std::nullopt);
    return out;
  }
  if (xc || yc) {
    const NodeId center = xc ? x : y;
    const NodeId z = xc ? y : x;
    const Slot slot = xc ? Slot::Y : Slot::X;
    const auto r = locate_endpoints_elongated(snap, u, v, z);
    const Aff A = oracle_term(slot);
    out.case_label = center == u ? "center-u" : "center-v";
    const bool top = center == u;
    switch (r.position) {
      case SpokePosition::Between:
        // From u: down the chain to a; or chain, across d(a,b); or around
        // through v. Mirrored from v.
        if (top) {
          push(out.table, "chain-a", konst(r.l) + off_a(r, slot));
          push(out.table, "chain-a-b", konst(r.l) + A + off_b(r, slot));
          push(out.table, "around-v", konst(duv + r.l) + off_b(r, slot));
        } else {
          push(out.table, "chain-b", konst(r.l) + off_b(r, slot));
          push(out.table, "chain-b-a", konst(r.l) + A + off_a(r, slot));
          push(out.table, "around-u", konst(duv + r.l) + off_a(r, slot));
        }
        break;
      case SpokePosition::AboveA:
        if (top) {
          push(out.table, "chain-direct", konst(r.dist_center));
          push(out.table, "around", konst(r.dist_anchor) + A + konst(r.l + duv));
        } else {
          push(out.table, "via-u", konst(duv + r.dist_center));
          push(out.table, "via-spoke", konst(r.l) + A + konst(r.dist_anchor));
        }
        break;
      case SpokePosition::BelowB:
        if (top) {
          push(out.table, "via-v", konst(duv + r.dist_center));
          push(out.table, "via-spoke", konst(r.l) + A + konst(r.dist_anchor));
        } else {
          push(out.table, "chain-direct", konst(r.dist_center));
          push(out.table, "around", konst(r.dist_anchor) + A + konst(r.l + duv));
        }
        break;
    }
    const auto pair = std::make_pair(r.a, r.b);
    using MaybePair = std::optional<std::pair<NodeId, NodeId>>;
    finish(out, so, slot == Slot::X ? MaybePair(pair) : MaybePair(),
           slot == Slot::Y ? MaybePair(pair) : MaybePair());
    return out;
  }

  const auto rx = locate_endpoints_elongated(snap, u, v, x);
  const auto ry = locate_endpoints_elongated(snap, u, v, y);
  const bool same_spoke = rx.a == ry.a;
  const auto pair_x = std::make_pair(rx.a, rx.b);
  const auto pair_y = std::make_pair(ry.a, ry.b);

  if (rx.position == SpokePosition::Between && ry.position == SpokePosition::Between) {
    const Aff AX = oracle_term(Slot::X);
    const Aff AY = same_spoke ? AX : oracle_term(Slot::Y);
    const Slot sy = same_spoke ? Slot::X : Slot::Y;
    const Nat lx = rx.l, ly = ry.l;
    if (same_spoke) {
      out.case_label = "same-spoke";
      const bool same_path = rx.has_path && ry.has_path && rx.path_tag == ry.path_tag;
      if (same_path) {
        const Nat d =
            rx.dist_a > ry.dist_a ? rx.dist_a - ry.dist_a : ry.dist_a - rx.dist_a;
        push(out.table, "P12", konst(d));
        out.case_label = "same-path";
      }
      push(out.table, "P8", off_a(rx, Slot::X) + off_a(ry, sy));
      push(out.table, "P9", off_b(rx, Slot::X) + off_b(ry, sy));
      push(out.table, "P10", off_a(rx, Slot::X) + AY + off_b(ry, sy));
      push(out.table, "P11", off_b(rx, Slot::X) + AY + off_a(ry, sy));
      finish(out, so, pair_x, std::nullopt);
      return out;
    }
    // The eight cross-spoke paths of the thirteen-path table; P13..P20 are
    // never evaluated.
    out.case_label = "thirteen-path";
    push(out.table, "P0", off_a(rx, Slot::X) + konst(lx + ly) + off_a(ry, Slot::Y));
    push(out.table, "P1", off_a(rx, Slot::X) + konst(lx + ly) + AY + off_b(ry, Slot::Y));
    push(out.table, "P2", off_a(rx, Slot::X) + konst(lx + duv + ly) + off_b(ry, Slot::Y));
    push(out.table, "P3", off_a(rx, Slot::X) + AX + konst(lx + ly) + off_b(ry, Slot::Y));
    push(out.table, "P4", off_b(rx, Slot::X) + konst(lx + ly) + off_b(ry, Slot::Y));
    push(out.table, "P5", off_b(rx, Slot::X) + konst(lx + ly) + AY + off_a(ry, Slot::Y));
    push(out.table, "P6", off_b(rx, Slot::X) + konst(lx + duv + ly) + off_a(ry, Slot::Y));
    push(out.table, "P7", off_b(rx, Slot::X) + AX + konst(lx + ly) + off_a(ry, Slot::Y));
    finish(out, so, pair_x, pair_y);
    return out;
  }

  // Composite cases: at least one node sits on an elongation chain. Compose
  // exit offsets with anchor-level distances.
  out.case_label = "composite";
  if (same_spoke && rx.position == ry.position &&
      rx.position != SpokePosition::Between) {
    // Same chain: the direct stretch along the chain is a candidate the
    // anchor composition cannot see exactly.
    const Nat d = rx.dist_center > ry.dist_center ? rx.dist_center - ry.dist_center
                                                  : ry.dist_center - rx.dist_center;
    push(out.table, "same-chain", konst(d));
  }
  const auto ex = exits_of(rx, Slot::X);
  const auto ey = exits_of(ry, same_spoke ? Slot::X : Slot::Y);
  for (const auto& p : ex)
    for (const auto& q : ey) {
      const auto mids = anchor_dist(p.anchor, q.anchor, rx, ry, same_spoke, duv);
      for (std::size_t i = 0; i < mids.size(); ++i) {
        std::ostringstream label;
        label << anchor_name(p.anchor) << "-" << anchor_name(q.anchor) << "-" << i;
        push(out.table, label.str(), p.offset + mids[i] + q.offset);
      }
    }
  finish(out, so, pair_x,
         same_spoke ? std::optional<std::pair<NodeId, NodeId>>() : std::optional(pair_y));
  return out;
}

DecodeOutcome decode_directed(const GraphSnapshot& snap, const SpokeOracle& so, NodeId x,
                              NodeId y) {
  snap.check_node(x);
  snap.check_node(y);
  DecodeOutcome out;

  // The center is the unique node with more than one outgoing arc.
  std::optional<NodeId> center;
  for (NodeId n = 0; n < snap.node_count(); ++n) {
    if (snap.neighbors(n).size() > 1) {
      if (center) fail(Errc::Structure, "two nodes with out-degree above one");
      center = n;
    }
  }
  if (!center) fail(Errc::Structure, "no branching node found");
  const NodeId u = *center;

  if (x == y) {
    out.case_label = "reflexive";
    out.value = 0;
    return out;
  }

  // Follow the unique out-arcs from x until y or the center appears.
  Nat walked = 0;
  NodeId cur = x;
  while (cur != y && cur != u) {
    const auto next = snap.neighbors(cur);
    if (next.size() != 1) fail(Errc::Structure, "walk left the unique-out-arc region");
    cur = next[0];
    ++walked;
  }
  if (cur == y) {
    out.case_label = "walk";
    push(out.table, "walk", konst(walked));
    finish(out, so, std::nullopt, std::nullopt);
    return out;
  }

  // At the center: find y's spoke bottom by walking y's unique in-arcs.
  Nat back = 0;
  NodeId probe = y;
  while (probe != u && snap.in_neighbors(probe).size() == 1) {
    probe = snap.in_neighbors(probe)[0];
    ++back;
  }
  if (probe == u) {
    // y sits on a u->b path; its distance from u is the backward walk.
    out.case_label = "via-center-path";
    push(out.table, "walk-then-path", konst(walked + back));
    finish(out, so, std::nullopt, std::nullopt);
    return out;
  }
  // probe is b_m (in-degree > 1): y is b_m itself or on the return path.
  out.case_label = "via-center-bottom";
  push(out.table, "walk-bottom-tail", konst(walked + back) + oracle_term(Slot::Y));
  finish(out, so, std::nullopt, std::make_pair(u, probe));
  return out;
}

Nat loop_index(const GraphSnapshot& snap, NodeId u, NodeId a) {
  snap.check_node(a);
  if (!snap.adjacent(u, a)) fail(Errc::InputRange, "node is not adjacent to the center");
  const std::vector<NodeId> centers{u};
  const auto walks = walks_from(snap, a, centers);
  identify_b(walks, a);  // pins down b so loops through b are excluded
  std::optional<Nat> cycle;
  std::optional<NodeId> seen_arm;
  for (const auto& w : walks) {
    if (w.hit_center || w.end != a) continue;
    if (seen_arm && !w.interior.empty() && w.interior.back() == *seen_arm)
      continue;  // the same cycle walked in the other direction
    if (cycle) fail(Errc::Structure, "more than one qualifying cycle at this node");
    cycle = w.length;
    seen_arm = w.interior.empty() ? a : w.interior.front();
  }
  if (!cycle) fail(Errc::Structure, "no qualifying cycle at this node");
  if (*cycle < 3) fail(Errc::Structure, "degenerate cycle");
  return *cycle - 3;
}

DuvCertificate certify_duv(const StagedGraph& g, const GraphSnapshot& snap) {
  if (g.shape() != GraphShape::Elongated)
    fail(Errc::KindMismatch, "d(u,v) certificates belong to elongated builds");
  DuvCertificate cert;
  cert.value = bfs_distance(snap, g.center(), *g.bottom_center());
  Nat best = kUnreached;
  for (Nat m = 0; m < g.spoke_count(); ++m) {
    const auto& spoke = g.spoke(m);
    const Nat through = 2 * spoke.elongation + bfs_distance(snap, spoke.a, spoke.b);
    if (through < best) {
      best = through;
      cert.spoke = m;
    }
  }
  if (best != cert.value)
    fail(Errc::Structure, "no single spoke realizes d(u,v); unexpected shortcut");
  return cert;
}

}  // namespace spokelab
