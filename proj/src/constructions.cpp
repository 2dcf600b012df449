#include "spokelab/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace spokelab {

ApproximationTrace range_encoder(const Sigma2Stream& stream, Nat stages) {
  const Nat total = stream.events.size();
  const Nat used = std::min<Nat>(stages, total);
  ApproximationTrace trace(TraceKind::FromAbove, used, used == total);
  for (Nat i = 0; i < used; ++i) {
    const Nat label = stream.events[i];
    const Nat seed = std::max(label, stream.x0);
    trace.append(i, 0, seed);
    if (seed == stream.x0) continue;  // resets to x0 would not be visible
    // The held input resets when its monitored label grows again.
    for (Nat j = i + 1; j < used; ++j) {
      if (stream.events[j] == label) {
        trace.append(i, j + 1, stream.x0);
        break;
      }
    }
  }
  return trace;
}

std::vector<Nat> limit_range(const ApproximationTrace& trace) {
  std::set<Nat> values;
  for (Nat x = 0; x < trace.domain(); ++x) values.insert(trace.limit(x));
  return {values.begin(), values.end()};
}

Nat OneCompleteResult::reduction(Nat e, Nat x) const {
  auto it = slots.find(e);
  if (it == slots.end()) fail(Errc::InputRange, "no slots assigned for this process");
  auto jt = it->second.find(x);
  if (jt == it->second.end()) {
    std::ostringstream os;
    os << "pair <" << e << "," << x << "> received no slot within budget";
    fail(Errc::InputRange, os.str());
  }
  return jt->second;
}

namespace {

// Incrementally maintained view of one rival's approximation sequence:
// the greatest t whose whole prefix phi(x,0..t) is visible and converged.
struct RivalCursor {
  const StepProcess* process = nullptr;
  Nat x = 0;
  bool any = false;           // some prefix is available
  Nat frontier = 0;           // greatest usable t when any
  bool monotone = true;       // prefix seen so far is nonincreasing
  Nat last = 0;               // phi(x, frontier)

  // Advances the frontier as far as stage s allows. `last` is always the raw
  // value at the frontier; `monotone` reports whether the whole prefix seen
  // so far is nonincreasing.
  void advance(Nat s) {
    while (process) {
      const Nat t = any ? frontier + 1 : 0;
      if (process->visible_at(x, t) > s) break;
      const auto v = process->approx_value(x, t);
      if (!v) break;  // diverges at t forever; frontier stops here
      if (any && *v > last) monotone = false;
      last = *v;
      any = true;
      frontier = t;
    }
  }
};

}  // namespace

OneCompleteResult one_complete_build(const Registry& registry, Nat stages, Nat max_input) {
  if (max_input == 0) max_input = stages;

  struct Candidate {
    Nat code, e, x;
    const StepProcess* process;
  };
  std::vector<Candidate> candidates;
  for (const auto& p : registry)
    for (Nat x = 0; x <= max_input; ++x)
      candidates.push_back({cantor_pair(p->index(), x), p->index(), x, p.get()});
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.code < b.code; });

  struct Slot {
    Nat e, x;
    RivalCursor cursor;
    std::vector<TraceEvent> events;
  };
  std::vector<Slot> assigned;
  std::set<Nat> taken;  // candidate codes already holding slots
  std::map<Nat, std::map<Nat, Nat>> slots;

  for (Nat s = 0; s < stages; ++s) {
    // Copy step first: only slots assigned at strictly earlier stages move.
    const Nat settled = assigned.size();
    for (Nat j = 0; j < settled; ++j) {
      Slot& slot = assigned[j];
      slot.cursor.advance(s);
      if (!slot.cursor.monotone) continue;  // frozen at its last good value
      const Nat v = slot.cursor.last;
      if (v < slot.events.back().value) slot.events.push_back({s + 1, v});
    }
    // Assignment: least pair whose first value has appeared.
    for (const auto& c : candidates) {
      if (taken.count(c.code)) continue;
      if (c.process->visible_at(c.x, 0) > s) continue;
      const auto v0 = c.process->approx_value(c.x, 0);
      if (!v0) continue;
      taken.insert(c.code);
      const Nat slot_id = assigned.size();
      Slot slot;
      slot.e = c.e;
      slot.x = c.x;
      slot.cursor = {c.process, c.x, true, 0, true, *v0};
      slot.events.push_back({0, *v0});
      assigned.push_back(std::move(slot));
      slots[c.e][c.x] = slot_id;
      break;  // one slot per stage
    }
  }

  ApproximationTrace trace(TraceKind::FromAbove, assigned.size(), true);
  for (Nat n = 0; n < assigned.size(); ++n)
    for (const auto& e : assigned[n].events) trace.append(n, e.stage, e.value);
  return {std::move(trace), std::move(slots)};
}

WitnessResult nocollapse_witness(const Registry& registry, Nat n, Nat stages) {
  Nat domain = 0;
  for (const auto& p : registry) domain = std::max(domain, p->index() + 1);
  if (domain == 0) domain = 1;

  TrackingFeed feed;
  for (const auto& p : registry) p->bind_feed(&feed);

  std::vector<Nat> current(domain, n + 1);
  std::vector<std::vector<TraceEvent>> events(domain);
  std::vector<RivalCursor> cursors(domain);
  for (Nat x = 0; x < domain; ++x) {
    events[x].push_back({0, n + 1});
    feed.publish(x, 0, n + 1);
    const StepProcess* p = find_process(registry, x);
    cursors[x] = {p, x, false, 0, true, 0};
  }

  for (Nat s = 0; s < stages; ++s) {
    for (Nat x = 0; x < domain; ++x) {
      if (!cursors[x].process) continue;
      cursors[x].advance(s);
      if (!cursors[x].any) continue;
      // The rival caught up with our current value: step out from under it.
      if (cursors[x].last == current[x] && current[x] > 0) {
        --current[x];
        events[x].push_back({s + 1, current[x]});
        feed.publish(x, s + 1, current[x]);
      }
    }
  }

  ApproximationTrace trace(TraceKind::FromAbove, domain, true);
  for (Nat x = 0; x < domain; ++x)
    for (const auto& e : events[x]) trace.append(x, e.stage, e.value);

  WitnessResult out{std::move(trace), {}};
  for (const auto& p : registry) {
    const Nat e = p->index();
    RequirementReport report;
    report.e = e;
    // Replay the rival's own visible sequence at e and count its mind changes.
    bool any = false;
    Nat last = 0, changes = 0;
    for (Nat t = 0; t <= stages; ++t) {
      if (p->visible_at(e, t) > stages) break;
      const auto v = p->approx_value(e, t);
      if (!v) break;
      if (any && *v != last) ++changes;
      last = *v;
      any = true;
    }
    if (!any) {
      report.vacuous = true;
      report.defeated = true;
      report.detail = "diverges everywhere; requirement vacuously satisfied";
    } else {
      const bool conforms = last == out.trace.limit(e);
      report.defeated = !conforms || changes > n;
      std::ostringstream os;
      os << "limit " << (conforms ? "agrees" : "disagrees") << ", rival changes " << changes;
      report.detail = os.str();
    }
    out.reports.push_back(std::move(report));
  }
  for (const auto& p : registry) p->bind_feed(nullptr);
  return out;
}

WitnessResult no1complete_witness(const Registry& registry,
                                  const ApproximationTrace& from_below, Nat stages,
                                  Nat max_input) {
  if (from_below.kind() != TraceKind::FromBelow)
    fail(Errc::KindMismatch, "no1complete diagonal needs a from-below trace");
  if (!from_below.complete())
    fail(Errc::Incomplete, "no1complete diagonal needs a complete trace");

  struct Pair {
    Nat code, e, x;
  };
  std::vector<Pair> pairs;
  Nat domain = 1;
  for (const auto& p : registry)
    for (Nat x = 0; x < max_input; ++x) {
      const Nat code = cantor_pair(p->index(), x);
      pairs.push_back({code, p->index(), x});
      domain = std::max(domain, code + 1);
    }

  std::vector<std::vector<TraceEvent>> events(domain);
  for (Nat z = 0; z < domain; ++z) events[z].push_back({0, 0});

  for (const auto& pr : pairs) {
    const StepProcess* p = find_process(registry, pr.e);
    const Nat seen = p->unary_visible_at(pr.code);
    const auto routed = p->unary_value(pr.code);
    if (!routed) continue;
    if (*routed >= from_below.domain())
      fail(Errc::InputRange, "registry output lands outside the diagonalised trace");
    // h(code, s+1) = 1 + g(routed, s+1) from the stage the pair converges on.
    Nat current = 0;
    for (Nat s = seen; s <= stages; ++s) {
      const Nat v = 1 + from_below.value_at(*routed, s + 1);
      if (v != current) {
        events[pr.code].push_back({s + 1, v});
        current = v;
      }
    }
  }

  ApproximationTrace trace(TraceKind::FromBelow, domain, true);
  for (Nat z = 0; z < domain; ++z)
    for (const auto& e : events[z]) trace.append(z, e.stage, e.value);

  WitnessResult out{std::move(trace), {}};
  for (const auto& p : registry) {
    RequirementReport report;
    report.e = p->index();
    Nat converged = 0, beaten = 0;
    for (Nat x = 0; x < max_input; ++x) {
      const Nat code = cantor_pair(p->index(), x);
      const auto routed = p->unary_value(code);
      if (!routed || p->unary_visible_at(code) > stages) continue;
      ++converged;
      const Nat f_val = from_below.limit(*routed);
      if (out.trace.limit(code) == 1 + f_val) ++beaten;
    }
    if (converged == 0) {
      report.vacuous = true;
      report.defeated = true;
      report.detail = "diverges on all sampled pairs; requirement vacuously satisfied";
    } else {
      report.defeated = beaten == converged;
      std::ostringstream os;
      os << beaten << "/" << converged << " sampled pairs witness j = 1 + f(phi_e)";
      report.detail = os.str();
    }
    out.reports.push_back(std::move(report));
  }
  return out;
}

WitnessResult no_mcomplete_witness(const Registry& registry,
                                   const ApproximationTrace& from_above, Nat stages) {
  if (from_above.kind() != TraceKind::FromAbove)
    fail(Errc::KindMismatch, "no_mcomplete diagonal needs a from-above trace");
  if (!from_above.complete())
    fail(Errc::Incomplete, "no_mcomplete diagonal needs a complete trace");

  Nat domain = 0;
  for (const auto& p : registry) domain = std::max(domain, p->index() + 1);
  if (domain == 0) domain = 1;

  ApproximationTrace trace(TraceKind::FromBelow, domain, true);
  std::vector<bool> touched(domain, false);
  for (const auto& p : registry) {
    const Nat e = p->index();
    const auto y = p->unary_value(e);
    const Nat seen = p->unary_visible_at(e);
    if (!y || seen > stages) continue;
    if (*y >= from_above.domain())
      fail(Errc::InputRange, "registry output lands outside the diagonalised trace");
    const Nat v = from_above.value_at(*y, seen) + 1;
    if (seen == 0) {
      trace.append(e, 0, v);
    } else {
      trace.append(e, 0, 0);
      trace.append(e, seen, v);
    }
    touched[e] = true;
  }
  for (Nat x = 0; x < domain; ++x)
    if (!touched[x]) trace.append(x, 0, 0);

  WitnessResult out{std::move(trace), {}};
  for (const auto& p : registry) {
    const Nat e = p->index();
    RequirementReport report;
    report.e = e;
    const auto y = p->unary_value(e);
    if (!y || p->unary_visible_at(e) > stages) {
      report.vacuous = true;
      report.defeated = true;
      report.detail = "phi_e(e) diverges; requirement vacuously satisfied";
    } else {
      const Nat g_e = out.trace.limit(e);
      const Nat f_y = from_above.limit(*y);
      report.defeated = g_e > f_y;
      std::ostringstream os;
      os << "g(e)=" << g_e << " vs f(phi_e(e))=" << f_y;
      report.detail = os.str();
    }
    out.reports.push_back(std::move(report));
  }
  return out;
}

}  // namespace spokelab
