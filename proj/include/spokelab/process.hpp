#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spokelab/nat.hpp"
#include "spokelab/trace.hpp"

namespace spokelab {

/// Published history of a construction in progress, readable by tracking
/// processes. Stage t's values are fixed before any process is asked about
/// its own stage t, so the feedback loop stays deterministic.
class TrackingFeed {
 public:
  void publish(Nat x, Nat stage, Nat value);
  std::optional<Nat> value(Nat x, Nat stage) const;

 private:
  std::vector<std::vector<std::optional<Nat>>> hist_;  // hist_[x][stage]
};

/// A desk-scale stand-in for a program phi_e. Two views are exposed:
///
///  * the binary approximation view phi_e(x,t) with explicit convergence
///    stages (visible_at), used by the diagonal and completeness
///    constructions, and
///  * a unary total-output view phi_e(z), used where the registry member
///    stands in for a total computable function.
///
/// Both views are deterministic: identical queries always return identical
/// results, and a value visible at stage s stays visible at all later stages.
class StepProcess {
 public:
  explicit StepProcess(Nat index) : index_(index) {}
  virtual ~StepProcess() = default;

  Nat index() const { return index_; }
  virtual std::string describe() const = 0;

  /// phi_e(x,t), or nullopt if the process diverges at (x,t) forever.
  virtual std::optional<Nat> approx_value(Nat x, Nat t) const = 0;
  /// Stage at which phi_e(x,t) becomes visible to an observer.
  virtual Nat visible_at(Nat /*x*/, Nat t) const { return t; }

  /// Unary view phi_e(z); nullopt if divergent at z.
  virtual std::optional<Nat> unary_value(Nat z) const = 0;
  virtual Nat unary_visible_at(Nat /*z*/) const { return 0; }

  /// Tracking processes are bound to a construction's feed before the run.
  virtual void bind_feed(const TrackingFeed* /*feed*/) {}

 private:
  Nat index_;
};

using ProcessPtr = std::shared_ptr<StepProcess>;
using Registry = std::vector<ProcessPtr>;

// Built-in process shapes; the catalog matches the registry file format.
ProcessPtr make_constant(Nat index, Nat value);
/// start + per_x * x at t = 0, dropping by one each stage until 0.
ProcessPtr make_staircase_down(Nat index, Nat start, Nat per_x = 0);
/// min(cap, t): increasing, never a from-above approximator.
ProcessPtr make_staircase_up(Nat index, Nat cap);
/// Constant value whose stage-t approximation only becomes visible at delay+t.
ProcessPtr make_delayed_converge(Nat index, Nat delay, Nat value);
/// Copies a construction's own published values with the given lag.
ProcessPtr make_tracking(Nat index, Nat lag = 0);
/// Diverges everywhere, in both views.
ProcessPtr make_divergent(Nat index);
/// Explicit per-input value sequences (last value repeats forever); the unary
/// view returns the limit of the corresponding row.
ProcessPtr make_list(Nat index, std::vector<std::vector<Nat>> rows);

const StepProcess* find_process(const Registry& registry, Nat index);

}  // namespace spokelab
