#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "spokelab/reductions.hpp"
#include "spokelab/rng.hpp"

using namespace spokelab;

namespace {

TruthTableReduction identity_reduction() {
  return TruthTableReduction([](Nat x) { return std::vector<Nat>{x}; },
                             [](Nat, std::span<const Nat> a) { return a[0]; }, 1);
}

}  // namespace

TEST_CASE("apply_tt consults exactly the selector's queries") {
  // Distance-style decoder: one pair query, answer - 2.
  const Nat pair = cantor_pair(11, 17);
  TruthTableReduction r([pair](Nat) { return std::vector<Nat>{pair}; },
                        [](Nat, std::span<const Nat> a) { return a[0] - 2; }, 1);
  const Oracle d = [pair](Nat q) -> std::optional<Nat> {
    if (q == pair) return 6;
    return std::nullopt;
  };
  const auto [value, audit] = apply_tt(r, d, 0);
  CHECK(value == 4);
  CHECK(audit.count() == 1);
  CHECK(audit.queries[0] == pair);

  TruthTableReduction free_([](Nat) { return std::vector<Nat>{}; },
                            [](Nat, std::span<const Nat>) { return Nat{9}; }, 0);
  const auto [v2, a2] = apply_tt(free_, d, 3);
  CHECK(v2 == 9);
  CHECK(a2.count() == 0);

  const Oracle table = [](Nat q) -> std::optional<Nat> {
    if (q < 5) return q * q;
    return std::nullopt;
  };
  const auto [v3, a3] = apply_tt(identity_reduction(), table, 4);
  CHECK(v3 == 16);
  CHECK(a3.count() == 1);
  CHECK_THROWS_AS((void)apply_tt(identity_reduction(), table, 9), Error);
}

TEST_CASE("verify_btt_norm reports the worst query-set size and enforces declarations") {
  TruthTableReduction two([](Nat x) { return std::vector<Nat>{x, x + 1}; },
                          [](Nat, std::span<const Nat> a) { return a[0]; }, 2);
  const std::vector<Nat> sample{0, 1, 2, 3, 4};
  CHECK(verify_btt_norm(two, sample) == 2);

  TruthTableReduction liar([](Nat x) { return std::vector<Nat>{x, x + 1, x + 2}; },
                           [](Nat, std::span<const Nat> a) { return a[0]; }, 2);
  CHECK_THROWS_AS((void)verify_btt_norm(liar, sample), Error);

  TruthTableReduction none([](Nat) { return std::vector<Nat>{}; },
                           [](Nat, std::span<const Nat>) { return Nat{0}; }, 0);
  CHECK(verify_btt_norm(none, sample) == 0);
}

TEST_CASE("compose_btt multiplies norms and agrees with sequential application") {
  // r1: norm 2 over beta; r2: norm 1 over gamma (beta(q) = gamma(q+1) * 2).
  TruthTableReduction r1([](Nat x) { return std::vector<Nat>{x, x + 1}; },
                         [](Nat, std::span<const Nat> a) { return a[0] + a[1]; }, 2);
  TruthTableReduction r2([](Nat q) { return std::vector<Nat>{q + 1}; },
                         [](Nat, std::span<const Nat> a) { return 2 * a[0]; }, 1);
  const auto comp = compose_btt(r1, r2);
  CHECK(*comp.declared_norm() == 2);
  const Oracle gamma = [](Nat q) -> std::optional<Nat> { return q + 10; };
  for (Nat x = 0; x < 12; ++x) {
    const Oracle beta = [&](Nat q) -> std::optional<Nat> {
      return apply_tt(r2, gamma, q).first;
    };
    CHECK(apply_tt(comp, gamma, x).first == apply_tt(r1, beta, x).first);
    CHECK(apply_tt(comp, gamma, x).second.count() <= 2);
  }

  // Disjoint query sets achieve the full product norm j*k = 6.
  TruthTableReduction j2([](Nat x) { return std::vector<Nat>{2 * x, 2 * x + 1}; },
                         [](Nat, std::span<const Nat> a) { return a[0] + a[1]; }, 2);
  TruthTableReduction k3([](Nat q) { return std::vector<Nat>{3 * q, 3 * q + 1, 3 * q + 2}; },
                         [](Nat, std::span<const Nat> a) { return a[0] + a[1] + a[2]; }, 3);
  const auto big = compose_btt(j2, k3);
  CHECK(*big.declared_norm() == 6);
  CHECK(big.queries(5).size() == 6);

  const auto one = compose_btt(identity_reduction(), identity_reduction());
  CHECK(*one.declared_norm() == 1);
  CHECK(one.queries(3).size() == 1);
}

TEST_CASE("fn_graph pair recovers h from its graph and decides the graph from h") {
  auto run = [](std::function<Nat(Nat)> h, std::function<Nat(Nat)> b, Nat upto) {
    const auto pair = fn_graph_tt_pair(b);
    const Oracle chi = [&](Nat code) -> std::optional<Nat> {
      const auto [x, y] = cantor_unpair(code);
      return h(x) == y ? 1 : 0;
    };
    const Oracle h_oracle = [&](Nat x) -> std::optional<Nat> { return h(x); };
    for (Nat x = 0; x < upto; ++x) {
      const auto [hx, audit] = apply_tt(pair.forward, chi, x);
      CHECK(hx == h(x));
      CHECK(audit.count() == b(x) + 1);
      for (Nat q : audit.queries) {
        const auto [qx, qn] = cantor_unpair(q);
        CHECK(qx == x);
        CHECK(qn <= b(x));
      }
      // Reverse: membership of (x, y) via the single query h(x).
      for (Nat y : {h(x), h(x) + 1, Nat{0}}) {
        const auto [member, raudit] = apply_tt(pair.reverse, h_oracle, cantor_pair(x, y));
        CHECK(member == (h(x) == y ? 1 : 0));
        CHECK(raudit.count() == 1);
        CHECK(raudit.queries[0] == x);
      }
    }
    CHECK(verify_btt_norm(pair.reverse, std::vector<Nat>{0, 5, 17}) == 1);
  };
  run([](Nat x) { return 2 * x; }, [](Nat x) { return 2 * x; }, 8);
  run([](Nat x) { return x * x; }, [](Nat x) { return x * x + 1; }, 8);
  run([](Nat) { return Nat{0}; }, [](Nat) { return Nat{0}; }, 4);
}

TEST_CASE("fn_graph forward errors when the bound is violated") {
  const auto pair = fn_graph_tt_pair([](Nat) { return Nat{3}; });
  const Oracle chi = [](Nat code) -> std::optional<Nat> {
    const auto [x, y] = cantor_unpair(code);
    return y == 5 ? 1 : 0;  // h(x) = 5 > bound 3
  };
  CHECK_THROWS_AS((void)apply_tt(pair.forward, chi, 0), Error);
}

TEST_CASE("verify_m_reduction checks composition, divergence and injectivity") {
  // h(<n,m>) = m with g(n) = <n, f(n)> is a 1-reduction from any total f.
  const auto f = [](Nat n) { return (n * 7 + 3) % 11; };
  Nat max_code = 0;
  for (Nat n = 0; n < 12; ++n) max_code = std::max(max_code, cantor_pair(n, f(n)));
  FunctionTable phi(12), psi(max_code + 1);
  for (Nat n = 0; n < 12; ++n) phi.set(n, f(n));
  for (Nat code = 0; code <= max_code; ++code) psi.set(code, cantor_unpair(code).second);
  std::vector<Nat> sample;
  for (Nat n = 0; n < 12; ++n) sample.push_back(n);
  MReduction m{[&](Nat n) { return cantor_pair(n, f(n)); }, true};
  CHECK(verify_m_reduction(m, phi, psi, sample).ok);

  // Reflexivity via the identity.
  MReduction id{[](Nat x) { return x; }, true};
  CHECK(verify_m_reduction(id, phi, phi, sample).ok);

  // Parity clash: phi(x)=2x vs psi(x)=2x+1 under any g.
  FunctionTable evens(24), odds(64);
  for (Nat x = 0; x < 24; ++x) evens.set(x, 2 * x);
  for (Nat x = 0; x < 64; ++x) odds.set(x, 2 * x + 1);
  MReduction shift{[](Nat x) { return x + 1; }, false};
  const auto bad = verify_m_reduction(shift, evens, odds, sample);
  CHECK_FALSE(bad.ok);
  CHECK(bad.counterexample.has_value());

  // Divergence must agree.
  FunctionTable partial(12);
  for (Nat n = 0; n < 12; ++n)
    if (n != 5) partial.set(n, f(n));
  const auto div = verify_m_reduction(id, partial, phi, sample);
  CHECK_FALSE(div.ok);
  CHECK(*div.counterexample == 5);

  // Injectivity claims are checked.
  MReduction collapse{[](Nat) { return Nat{0}; }, true};
  FunctionTable consts(12), one(1);
  for (Nat n = 0; n < 12; ++n) consts.set(n, 4);
  one.set(0, 4);
  const auto collide = verify_m_reduction(collapse, consts, one, sample);
  CHECK_FALSE(collide.ok);
}

TEST_CASE("witnessed m-reductions compose transitively") {
  Rng rng(5150);
  for (int round = 0; round < 30; ++round) {
    // phi <= psi via g1 (x -> 2x), psi <= chi via g2 (x -> x + 3).
    const Nat n = 10;
    FunctionTable chi(64);
    for (Nat i = 0; i < 64; ++i) chi.set(i, rng.below(50));
    FunctionTable psi(32);
    for (Nat i = 0; i < 32; ++i) psi.cells[i] = chi(i + 3);
    FunctionTable phi(n);
    for (Nat i = 0; i < n; ++i) phi.cells[i] = psi(2 * i);
    std::vector<Nat> sample;
    for (Nat i = 0; i < n; ++i) sample.push_back(i);
    MReduction g1{[](Nat x) { return 2 * x; }, true};
    MReduction g2{[](Nat x) { return x + 3; }, true};
    REQUIRE(verify_m_reduction(g1, phi, psi, sample).ok);
    MReduction g21{[](Nat x) { return 2 * x + 3; }, true};
    CHECK(verify_m_reduction(g21, phi, chi, sample).ok);
  }
}
