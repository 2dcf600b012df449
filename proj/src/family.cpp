#include "spokelab/family.hpp"

#include <algorithm>
#include <sstream>

namespace spokelab {

std::vector<DecreasingString> enumerate_decreasing(Nat max_len, Nat max_val) {
  std::vector<DecreasingString> out;
  std::vector<Nat> prefix;
  // Shorter strings first; lexicographic ascending within a length class.
  for (Nat len = 1; len <= max_len; ++len) {
    if (max_val + 1 < len) break;  // no strictly decreasing string that long
    auto rec = [&](auto&& self, Nat remaining) -> void {
      if (remaining == 0) {
        out.emplace_back(prefix);
        return;
      }
      if (!prefix.empty() && prefix.back() == 0) return;  // no room below 0
      const Nat hi = prefix.empty() ? max_val : prefix.back() - 1;
      // Leave room for `remaining - 1` strictly smaller values below.
      for (Nat v = remaining - 1; v <= hi; ++v) {
        prefix.push_back(v);
        self(self, remaining - 1);
        prefix.pop_back();
      }
    };
    rec(rec, len);
  }
  return out;
}

DecreasingString family_string(const FamilySpec& spec, Nat m) {
  if (const auto* ex = std::get_if<ExplicitFamily>(&spec)) {
    if (m >= ex->strings.size()) fail(Errc::InputRange, "family index out of range");
    return ex->strings[m];
  }
  if (const auto* all = std::get_if<AllDecreasingFamily>(&spec)) {
    const auto strings = enumerate_decreasing(all->max_len, all->max_val);
    if (strings.empty()) fail(Errc::InputRange, "empty enumeration");
    return strings[m % strings.size()];
  }
  const auto& per = std::get<PeriodicCountdownFamily>(spec);
  const Nat k = m % (per.n + 1);
  std::vector<Nat> values;
  for (Nat i = 0; i <= k; ++i) values.push_back(per.n - i);
  return DecreasingString(std::move(values));
}

Nat family_size(const FamilySpec& spec) {
  if (const auto* ex = std::get_if<ExplicitFamily>(&spec)) return ex->strings.size();
  if (const auto* all = std::get_if<AllDecreasingFamily>(&spec)) return all->count;
  return std::get<PeriodicCountdownFamily>(spec).count;
}

namespace {

struct Extension {
  Nat stage, spoke, value;
};

void replay_extensions(StagedGraph& g, std::vector<Extension>& pending, Nat stages) {
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Extension& a, const Extension& b) { return a.stage < b.stage; });
  for (const auto& ext : pending) {
    if (ext.stage > stages) {
      std::ostringstream os;
      os << "extension at stage " << ext.stage << " exceeds the stage budget " << stages;
      fail(Errc::BoundViolation, os.str());
    }
    g.extend_spoke(ext.spoke, ext.value, ext.stage);
  }
}

}  // namespace

StagedGraph build_family(const FamilySpec& spec, GraphShape shape,
                         const ApproximationTrace* trace, Nat stages) {
  if (trace && trace->kind() != TraceKind::FromAbove)
    fail(Errc::KindMismatch, "graph builds encode from-above traces");
  const bool countdown_mode = std::holds_alternative<PeriodicCountdownFamily>(spec) && trace;
  const Nat countdown_n =
      countdown_mode ? std::get<PeriodicCountdownFamily>(spec).n : 0;

  StagedGraph g(shape, 0);
  std::vector<Extension> pending;

  auto place_trace_spoke = [&](Nat x) {
    const auto ev = trace->events(x);
    const Nat first = countdown_mode ? countdown_n : ev[0].value;
    if (countdown_mode && ev.size() > countdown_n + 1) {
      std::ostringstream os;
      os << "input " << x << " changes " << ev.size() - 1 << " times; countdown bound is "
         << countdown_n;
      fail(Errc::BoundViolation, os.str());
    }
    const Nat m = g.add_spoke(first, 0);
    g.tag_spoke(m, x);
    for (std::size_t i = 1; i < ev.size(); ++i)
      pending.push_back(
          {ev[i].stage, m, countdown_mode ? first - static_cast<Nat>(i) : ev[i].value});
  };
  auto place_base_spoke = [&](Nat j) {
    const DecreasingString str = family_string(spec, j);
    const Nat m = g.add_spoke(str.values()[0], 0);
    for (Nat i = 1; i < str.size(); ++i) pending.push_back({i, m, str.values()[i]});
  };

  const Nat base_count = family_size(spec);
  if (trace) {
    // Interleave: trace inputs on even slots, schedule strings on odd slots,
    // then whichever supply remains.
    Nat placed_trace = 0, placed_base = 0;
    bool even = true;
    while (placed_trace < trace->domain() || placed_base < base_count) {
      if ((even && placed_trace < trace->domain()) || placed_base >= base_count)
        place_trace_spoke(placed_trace++);
      else
        place_base_spoke(placed_base++);
      even = !even;
    }
  } else {
    for (Nat j = 0; j < base_count; ++j) place_base_spoke(j);
  }

  replay_extensions(g, pending, stages);
  g.set_complete(!trace || trace->complete());
  return g;
}

StagedGraph build_singledegree(const ApproximationTrace& trace, Nat stages) {
  if (trace.kind() != TraceKind::FromAbove)
    fail(Errc::KindMismatch, "the single-degree build encodes a from-above trace");
  StagedGraph g(GraphShape::Standard, 0);
  std::vector<Extension> pending;
  for (Nat x = 0; x < trace.domain(); ++x) {
    const auto ev = trace.events(x);
    const Nat m = g.add_spoke(ev[0].value, 0);
    g.tag_spoke(m, x);
    g.attach_loop(m, x + 3, 0);
    for (std::size_t i = 1; i < ev.size(); ++i)
      pending.push_back({ev[i].stage, m, ev[i].value});
  }
  replay_extensions(g, pending, stages);
  g.set_complete(trace.complete());
  return g;
}

}  // namespace spokelab
