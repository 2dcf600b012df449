#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "spokelab/errors.hpp"
#include "spokelab/nat.hpp"

namespace spokelab {

enum class TraceKind { FromAbove, FromBelow, Free };

const char* trace_kind_name(TraceKind k);

/// One recorded change of a stage-wise approximation: g(x,stage) = value,
/// and g(x,s) = value for every s >= stage until the next event.
struct TraceEvent {
  Nat stage;
  Nat value;
};

/// A stage-indexed record of a computable approximation g(x,s).
///
/// Inputs run over 0..domain()-1 and each input carries its change events in
/// strictly increasing stage order, the first at stage 0 (g(x,0) is always
/// defined). FromAbove traces have strictly decreasing event values per input,
/// FromBelow strictly increasing. `complete` means no further events will ever
/// be appended, so limits are trustworthy.
class ApproximationTrace {
 public:
  ApproximationTrace(TraceKind kind, Nat domain, bool complete = false);

  TraceKind kind() const { return kind_; }
  Nat domain() const { return entries_.size(); }
  bool complete() const { return complete_; }
  void set_complete(bool value) { complete_ = value; }

  /// Appends a change event. Enforces stage increase, the stage-0 start, and
  /// the kind's monotonicity discipline; equal-value appends are rejected as
  /// non-events.
  void append(Nat x, Nat stage, Nat value);

  std::span<const TraceEvent> events(Nat x) const;
  bool has_initial(Nat x) const { return !entries_.at(checked(x)).empty(); }

  /// g(x,s): the value of the latest event with stage <= s.
  Nat value_at(Nat x, Nat stage) const;
  Nat initial(Nat x) const { return value_at(x, 0); }

  /// lim_s g(x,s); requires a complete trace.
  Nat limit(Nat x) const;

  /// Total number of mind changes of input x over the whole recorded history.
  Nat total_changes(Nat x) const;

  Nat max_stage() const;

 private:
  Nat checked(Nat x) const;

  TraceKind kind_;
  bool complete_;
  std::vector<std::vector<TraceEvent>> entries_;
};

/// |{s < upto : g(x,s) != g(x,s+1)}|.
Nat mind_changes(const ApproximationTrace& trace, Nat x, Nat upto);

struct Classification {
  bool monotone_above = false;
  bool monotone_below = false;
  Nat max_changes = 0;
  /// Per-input change bound h(x) = g(x,0); populated only when monotone_above.
  std::vector<Nat> omega_bound;
};

/// Summarises a complete trace: monotonicity, the worst mind-change count,
/// and the canonical change bound for approximations from above.
Classification classify(const ApproximationTrace& trace);

/// The countdown companion: c(x,0) = bound[x], decremented exactly at the
/// stages where the input trace changes. Errors if some input changes more
/// than bound[x] times. The result approximates from above and its limit is
/// bound[x] - total_changes(x).
ApproximationTrace countdown(const ApproximationTrace& trace, std::span<const Nat> bound);

/// Log of the oracle inputs actually consulted during one reduction run.
struct QueryAudit {
  std::vector<Nat> queries;
  Nat count() const { return queries.size(); }
};

/// Recovers f(x) from the countdown limit: replays the trace until the
/// recomputed countdown first equals the limit and returns g(x) there.
/// Consults `limit_oracle` exactly once (the bT contract).
Nat reconstruct_from_countdown(const ApproximationTrace& trace, Nat bound_x,
                               const std::function<Nat(Nat)>& limit_oracle, Nat x,
                               QueryAudit* audit = nullptr);

/// h(x,s) = g(x,0) - g(x,s); pairs a from-above trace with the from-below
/// trace having identical change stages.
ApproximationTrace dual_above(const ApproximationTrace& trace);

/// g(x,s) = bound[x] - h(x,s) for a computably bounded from-below trace.
ApproximationTrace dual_below(const ApproximationTrace& trace, std::span<const Nat> bound);

/// <x,n> in V_f: the approximation changes its mind more than n times.
bool v_membership(const ApproximationTrace& trace, Nat x, Nat n);

/// Oracle direction of V_f: recovers f(x) by asking the V_f oracle about
/// <x,0>..<x,g(x,0)-1> (Cantor codes) and replaying the announced number of
/// changes. The audit records exactly those queries.
Nat recover_from_v(const ApproximationTrace& trace, const std::function<bool(Nat)>& v_oracle,
                   Nat x, QueryAudit* audit = nullptr);

/// A partial function on an initial segment of the naturals with an explicit
/// divergence marker per cell.
struct FunctionTable {
  std::vector<std::optional<Nat>> cells;

  FunctionTable() = default;
  explicit FunctionTable(Nat size) : cells(size) {}

  Nat size() const { return cells.size(); }
  /// Divergent outside the table just as inside an empty cell.
  std::optional<Nat> operator()(Nat x) const {
    return x < cells.size() ? cells[x] : std::nullopt;
  }
  void set(Nat x, Nat value) { cells.at(x) = value; }
};

/// (phi (+) psi)(2x) = phi(x), (phi (+) psi)(2x+1) = psi(x); divergence routes
/// through unchanged.
FunctionTable join(const FunctionTable& phi, const FunctionTable& psi);

/// iota(0) diverges, iota(x+1) = x.
FunctionTable iota(Nat size);

/// iota (+) psi, the augmented join used by augmented m-reducibility.
FunctionTable augmented_join(const FunctionTable& psi);

}  // namespace spokelab
