#include "spokelab/trace.hpp"

#include <algorithm>
#include <sstream>

namespace spokelab {

const char* trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::FromAbove: return "above";
    case TraceKind::FromBelow: return "below";
    case TraceKind::Free: return "free";
  }
  return "?";
}

ApproximationTrace::ApproximationTrace(TraceKind kind, Nat domain, bool complete)
    : kind_(kind), complete_(complete), entries_(domain) {}

Nat ApproximationTrace::checked(Nat x) const {
  if (x >= entries_.size()) {
    std::ostringstream os;
    os << "input " << x << " outside trace domain " << entries_.size();
    fail(Errc::InputRange, os.str());
  }
  return x;
}

void ApproximationTrace::append(Nat x, Nat stage, Nat value) {
  auto& ev = entries_.at(checked(x));
  if (ev.empty()) {
    if (stage != 0) fail(Errc::InputRange, "first event per input must be at stage 0");
    ev.push_back({stage, value});
    return;
  }
  const TraceEvent& last = ev.back();
  if (stage <= last.stage) fail(Errc::Monotonicity, "event stages must strictly increase");
  if (value == last.value) fail(Errc::Monotonicity, "event must change the value");
  if (kind_ == TraceKind::FromAbove && value > last.value)
    fail(Errc::KindMismatch, "from-above trace must decrease");
  if (kind_ == TraceKind::FromBelow && value < last.value)
    fail(Errc::KindMismatch, "from-below trace must increase");
  ev.push_back({stage, value});
}

std::span<const TraceEvent> ApproximationTrace::events(Nat x) const {
  return entries_.at(checked(x));
}

Nat ApproximationTrace::value_at(Nat x, Nat stage) const {
  const auto& ev = entries_.at(checked(x));
  if (ev.empty() || ev.front().stage != 0)
    fail(Errc::InputRange, "input has no stage-0 value");
  Nat v = ev.front().value;
  for (const auto& e : ev) {
    if (e.stage > stage) break;
    v = e.value;
  }
  return v;
}

Nat ApproximationTrace::limit(Nat x) const {
  if (!complete_) fail(Errc::Incomplete, "limit requires a complete trace");
  const auto& ev = entries_.at(checked(x));
  if (ev.empty()) fail(Errc::InputRange, "input has no events");
  return ev.back().value;
}

Nat ApproximationTrace::total_changes(Nat x) const {
  const auto& ev = entries_.at(checked(x));
  return ev.empty() ? 0 : ev.size() - 1;
}

Nat ApproximationTrace::max_stage() const {
  Nat m = 0;
  for (const auto& ev : entries_)
    if (!ev.empty()) m = std::max(m, ev.back().stage);
  return m;
}

Nat mind_changes(const ApproximationTrace& trace, Nat x, Nat upto) {
  // A change at s (value(s) != value(s+1)) is an event at stage s+1, so the
  // events counted are those with 0 < stage <= upto.
  Nat count = 0;
  for (const auto& e : trace.events(x))
    if (e.stage > 0 && e.stage <= upto) ++count;
  return count;
}

Classification classify(const ApproximationTrace& trace) {
  if (!trace.complete()) fail(Errc::Incomplete, "classify requires a complete trace");
  Classification out;
  out.monotone_above = true;
  out.monotone_below = true;
  for (Nat x = 0; x < trace.domain(); ++x) {
    const auto ev = trace.events(x);
    if (ev.empty()) fail(Errc::InputRange, "input has no events");
    for (std::size_t i = 1; i < ev.size(); ++i) {
      if (ev[i].value > ev[i - 1].value) out.monotone_above = false;
      if (ev[i].value < ev[i - 1].value) out.monotone_below = false;
    }
    out.max_changes = std::max(out.max_changes, trace.total_changes(x));
  }
  if (out.monotone_above) {
    out.omega_bound.resize(trace.domain());
    for (Nat x = 0; x < trace.domain(); ++x) out.omega_bound[x] = trace.initial(x);
  }
  return out;
}

ApproximationTrace countdown(const ApproximationTrace& trace, std::span<const Nat> bound) {
  if (bound.size() < trace.domain())
    fail(Errc::InputRange, "countdown bound must cover the trace domain");
  ApproximationTrace c(TraceKind::FromAbove, trace.domain(), trace.complete());
  for (Nat x = 0; x < trace.domain(); ++x) {
    const auto ev = trace.events(x);
    Nat remaining = bound[x];
    c.append(x, 0, remaining);
    for (std::size_t i = 1; i < ev.size(); ++i) {
      if (remaining == 0) {
        std::ostringstream os;
        os << "input " << x << " changes more than " << bound[x] << " times";
        fail(Errc::BoundViolation, os.str());
      }
      --remaining;
      c.append(x, ev[i].stage, remaining);
    }
  }
  return c;
}

Nat reconstruct_from_countdown(const ApproximationTrace& trace, Nat bound_x,
                               const std::function<Nat(Nat)>& limit_oracle, Nat x,
                               QueryAudit* audit) {
  const Nat limit = limit_oracle(x);
  if (audit) audit->queries.push_back(x);
  if (limit > bound_x) fail(Errc::BoundViolation, "countdown limit exceeds its own start value");
  const Nat changes_needed = bound_x - limit;
  const auto ev = trace.events(x);
  if (ev.empty()) fail(Errc::InputRange, "input has no events");
  if (changes_needed >= ev.size())
    fail(Errc::Incomplete, "countdown limit never reached within the trace");
  return ev[changes_needed].value;
}

ApproximationTrace dual_above(const ApproximationTrace& trace) {
  if (trace.kind() != TraceKind::FromAbove)
    fail(Errc::KindMismatch, "dual_above requires a from-above trace");
  ApproximationTrace h(TraceKind::FromBelow, trace.domain(), trace.complete());
  for (Nat x = 0; x < trace.domain(); ++x) {
    const auto ev = trace.events(x);
    if (ev.empty()) fail(Errc::InputRange, "input has no events");
    const Nat base = ev.front().value;
    for (const auto& e : ev) h.append(x, e.stage, base - e.value);
  }
  return h;
}

ApproximationTrace dual_below(const ApproximationTrace& trace, std::span<const Nat> bound) {
  if (trace.kind() != TraceKind::FromBelow)
    fail(Errc::KindMismatch, "dual_below requires a from-below trace");
  if (bound.size() < trace.domain())
    fail(Errc::InputRange, "dual bound must cover the trace domain");
  ApproximationTrace g(TraceKind::FromAbove, trace.domain(), trace.complete());
  for (Nat x = 0; x < trace.domain(); ++x) {
    for (const auto& e : trace.events(x)) {
      if (e.value > bound[x])
        fail(Errc::BoundViolation, "value exceeds the declared computable bound");
      g.append(x, e.stage, bound[x] - e.value);
    }
  }
  return g;
}

bool v_membership(const ApproximationTrace& trace, Nat x, Nat n) {
  if (!trace.complete()) fail(Errc::Incomplete, "V_f membership requires a complete trace");
  return trace.total_changes(x) > n;
}

Nat recover_from_v(const ApproximationTrace& trace, const std::function<bool(Nat)>& v_oracle,
                   Nat x, QueryAudit* audit) {
  const Nat start = trace.initial(x);
  Nat announced = 0;
  for (Nat n = 0; n < start; ++n) {
    const Nat code = cantor_pair(x, n);
    if (audit) audit->queries.push_back(code);
    if (v_oracle(code)) ++announced;
  }
  const auto ev = trace.events(x);
  if (announced >= ev.size())
    fail(Errc::Incomplete, "announced change count never reached within the trace");
  return ev[announced].value;
}

FunctionTable join(const FunctionTable& phi, const FunctionTable& psi) {
  const Nat n = 2 * std::max(phi.size(), psi.size());
  FunctionTable out(n);
  for (Nat x = 0; x < n; ++x)
    out.cells[x] = (x % 2 == 0) ? phi(x / 2) : psi((x - 1) / 2);
  return out;
}

FunctionTable iota(Nat size) {
  FunctionTable out(size);
  for (Nat x = 1; x < size; ++x) out.cells[x] = x - 1;
  return out;
}

FunctionTable augmented_join(const FunctionTable& psi) {
  return join(iota(psi.size() + 1), psi);
}

}  // namespace spokelab
