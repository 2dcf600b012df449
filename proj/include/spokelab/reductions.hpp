#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spokelab/errors.hpp"
#include "spokelab/nat.hpp"
#include "spokelab/trace.hpp"

namespace spokelab {

/// An oracle is a function consulted by value; nullopt marks inputs outside
/// its domain. Pair-valued oracles (graphs, distance restrictions) take
/// Cantor codes.
using Oracle = std::function<std::optional<Nat>(Nat)>;

Oracle table_oracle(const FunctionTable& table);

/// A truth-table reduction represented extensionally: a total selector
/// x -> D(x) listing the oracle inputs, and a total evaluator mapping
/// (x, answers restricted to D(x)) to the output. The answer->output rule is
/// fixed before any oracle is consulted.
class TruthTableReduction {
 public:
  using Selector = std::function<std::vector<Nat>(Nat)>;
  using Evaluator = std::function<Nat(Nat, std::span<const Nat>)>;

  TruthTableReduction(Selector selector, Evaluator evaluator,
                      std::optional<Nat> declared_norm = std::nullopt)
      : selector_(std::move(selector)),
        evaluator_(std::move(evaluator)),
        declared_norm_(declared_norm) {}

  std::vector<Nat> queries(Nat x) const { return selector_(x); }
  Nat evaluate(Nat x, std::span<const Nat> answers) const { return evaluator_(x, answers); }
  std::optional<Nat> declared_norm() const { return declared_norm_; }

 private:
  Selector selector_;
  Evaluator evaluator_;
  std::optional<Nat> declared_norm_;
};

/// Applies the reduction at x. The audit records exactly D(x), in selector
/// order; an oracle gap raises an oracle-domain error.
std::pair<Nat, QueryAudit> apply_tt(const TruthTableReduction& r, const Oracle& oracle, Nat x);

/// Max |D(x)| over the sample; raises a norm error naming the offending input
/// when the declared norm is exceeded.
Nat verify_btt_norm(const TruthTableReduction& r, std::span<const Nat> sample);

/// Composes r1 (over oracle beta) with r2 (beta from gamma): the composite
/// queries gamma directly, with norm at most norm(r1)*norm(r2).
TruthTableReduction compose_btt(const TruthTableReduction& r1, const TruthTableReduction& r2);

/// Prop-style pair for a computably bounded function h <= b: the forward
/// reduction recovers h(x) from the graph oracle by querying <x,0>..<x,b(x)>;
/// the reverse decides graph membership from a single h query (norm 1).
struct FnGraphPair {
  TruthTableReduction forward;  // h from chi_G
  TruthTableReduction reverse;  // chi_G from h
};
FnGraphPair fn_graph_tt_pair(std::function<Nat(Nat)> bound);

/// An m-reduction claim: a total computable g with phi = psi o g, optionally
/// claimed injective.
struct MReduction {
  std::function<Nat(Nat)> g;
  bool injective_claimed = false;
};

struct MVerifyResult {
  bool ok = true;
  std::optional<Nat> counterexample;
  std::string reason;
};

/// Checks phi(x) = psi(g(x)) with divergence agreement over the sample, plus
/// injectivity when claimed. Failures return false with a witness input.
MVerifyResult verify_m_reduction(const MReduction& m, const FunctionTable& phi,
                                 const FunctionTable& psi, std::span<const Nat> sample);

}  // namespace spokelab
