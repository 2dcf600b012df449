#include "spokelab/reductions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace spokelab {

Oracle table_oracle(const FunctionTable& table) {
  return [table](Nat x) { return table(x); };
}

std::pair<Nat, QueryAudit> apply_tt(const TruthTableReduction& r, const Oracle& oracle, Nat x) {
  QueryAudit audit;
  audit.queries = r.queries(x);
  std::vector<Nat> answers;
  answers.reserve(audit.queries.size());
  for (Nat q : audit.queries) {
    const auto a = oracle(q);
    if (!a) {
      std::ostringstream os;
      os << "oracle undefined on queried input " << q;
      fail(Errc::OracleDomain, os.str());
    }
    answers.push_back(*a);
  }
  return {r.evaluate(x, answers), std::move(audit)};
}

Nat verify_btt_norm(const TruthTableReduction& r, std::span<const Nat> sample) {
  Nat worst = 0;
  for (Nat x : sample) {
    const Nat n = r.queries(x).size();
    if (r.declared_norm() && n > *r.declared_norm()) {
      std::ostringstream os;
      os << "|D(" << x << ")| = " << n << " exceeds declared norm " << *r.declared_norm();
      fail(Errc::NormViolation, os.str());
    }
    worst = std::max(worst, n);
  }
  return worst;
}

TruthTableReduction compose_btt(const TruthTableReduction& r1, const TruthTableReduction& r2) {
  auto selector = [r1, r2](Nat x) {
    std::vector<Nat> out;
    for (Nat q : r1.queries(x))
      for (Nat g : r2.queries(q))
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    return out;
  };
  auto evaluator = [r1, r2](Nat x, std::span<const Nat> answers) {
    // Rebuild the composite query list to index the gamma answers, then
    // evaluate each beta value r1 asked about.
    std::vector<Nat> composite;
    for (Nat q : r1.queries(x))
      for (Nat g : r2.queries(q))
        if (std::find(composite.begin(), composite.end(), g) == composite.end())
          composite.push_back(g);
    if (composite.size() != answers.size())
      fail(Errc::Composition, "composite answer vector has the wrong arity");
    std::map<Nat, Nat> gamma;
    for (std::size_t i = 0; i < composite.size(); ++i) gamma[composite[i]] = answers[i];
    std::vector<Nat> betas;
    for (Nat q : r1.queries(x)) {
      std::vector<Nat> sub;
      for (Nat g : r2.queries(q)) sub.push_back(gamma.at(g));
      betas.push_back(r2.evaluate(q, sub));
    }
    return r1.evaluate(x, betas);
  };
  std::optional<Nat> norm;
  if (r1.declared_norm() && r2.declared_norm())
    norm = *r1.declared_norm() * *r2.declared_norm();
  return TruthTableReduction(std::move(selector), std::move(evaluator), norm);
}

FnGraphPair fn_graph_tt_pair(std::function<Nat(Nat)> bound) {
  auto forward_selector = [bound](Nat x) {
    std::vector<Nat> qs;
    for (Nat n = 0; n <= bound(x); ++n) qs.push_back(cantor_pair(x, n));
    return qs;
  };
  auto forward_evaluator = [bound](Nat x, std::span<const Nat> answers) {
    std::optional<Nat> hit;
    for (Nat n = 0; n < answers.size(); ++n) {
      if (answers[n] == 0) continue;
      if (hit) fail(Errc::Structure, "oracle is not the graph of a function");
      hit = n;
    }
    if (!hit) {
      std::ostringstream os;
      os << "no pair <" << x << ",n> with n <= " << bound(x)
         << " lies in the graph; h(x) exceeds its bound";
      fail(Errc::BoundViolation, os.str());
    }
    return *hit;
  };
  auto reverse_selector = [](Nat code) { return std::vector<Nat>{cantor_unpair(code).first}; };
  auto reverse_evaluator = [](Nat code, std::span<const Nat> answers) -> Nat {
    return answers[0] == cantor_unpair(code).second ? 1 : 0;
  };
  return {TruthTableReduction(forward_selector, forward_evaluator, std::nullopt),
          TruthTableReduction(reverse_selector, reverse_evaluator, 1)};
}

MVerifyResult verify_m_reduction(const MReduction& m, const FunctionTable& phi,
                                 const FunctionTable& psi, std::span<const Nat> sample) {
  MVerifyResult out;
  std::map<Nat, Nat> seen;  // g(x) -> x, for the injectivity claim
  for (Nat x : sample) {
    const Nat gx = m.g(x);
    const auto lhs = phi(x);
    const auto rhs = psi(gx);
    if (lhs.has_value() != rhs.has_value()) {
      out.ok = false;
      out.counterexample = x;
      out.reason = "divergence disagrees";
      return out;
    }
    if (lhs && *lhs != *rhs) {
      std::ostringstream os;
      os << "phi(" << x << ")=" << *lhs << " but psi(g(" << x << "))=" << *rhs;
      out.ok = false;
      out.counterexample = x;
      out.reason = os.str();
      return out;
    }
    if (m.injective_claimed) {
      auto [it, fresh] = seen.emplace(gx, x);
      if (!fresh && it->second != x) {
        std::ostringstream os;
        os << "g collides: g(" << it->second << ") = g(" << x << ") = " << gx;
        out.ok = false;
        out.counterexample = x;
        out.reason = os.str();
        return out;
      }
    }
  }
  return out;
}

}  // namespace spokelab
