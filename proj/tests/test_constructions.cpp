#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "spokelab/constructions.hpp"
#include "test_util.hpp"

using namespace spokelab;

TEST_CASE("range encoder holds the final growth of a label forever") {
  // y=5 grows once, at stage 3 (event index 3).
  Sigma2Stream stream{2, {7, 3, 4, 5, 7, 3}};
  const auto t = range_encoder(stream, 100);
  CHECK(t.complete());
  CHECK(t.kind() == TraceKind::FromAbove);
  const auto range = limit_range(t);
  CHECK(std::find(range.begin(), range.end(), 5) != range.end());
  // Input 3 held 5 and was never reset.
  CHECK(t.limit(3) == 5);
}

TEST_CASE("range encoder resets every earlier holder of a growing label") {
  Sigma2Stream stream{2, {9, 9, 9, 9}};
  const auto t = range_encoder(stream, 100);
  for (Nat i = 0; i + 1 < t.domain(); ++i) CHECK(t.limit(i) == 2);
  CHECK(t.limit(t.domain() - 1) == 9);  // the last growth has no successor in budget
}

TEST_CASE("range encoder clamps labels below x0") {
  Sigma2Stream stream{2, {1}};
  const auto t = range_encoder(stream, 100);
  CHECK(t.limit(0) == 2);
}

TEST_CASE("range encoder changes each input at most once, decreasing to x0") {
  Rng rng(99);
  for (int round = 0; round < 80; ++round) {
    Sigma2Stream stream;
    stream.x0 = rng.range(0, 4);
    const Nat len = rng.range(1, 30);
    for (Nat i = 0; i < len; ++i) stream.events.push_back(rng.range(0, 9));
    stream.events.push_back(stream.x0);  // x0 itself lies in the encoded set
    const auto t = range_encoder(stream, 1000);
    std::set<Nat> expect{stream.x0};
    for (Nat y : stream.events)
      if (y >= stream.x0) expect.insert(y);
    const auto range = limit_range(t);
    CHECK(std::vector<Nat>(expect.begin(), expect.end()) == range);
    for (Nat x = 0; x < t.domain(); ++x) {
      CHECK(t.total_changes(x) <= 1);
      if (t.total_changes(x) == 1) {
        CHECK(t.events(x).back().value == stream.x0);
        CHECK(t.events(x).front().value > stream.x0);
      }
    }
  }
}

TEST_CASE("range encoder truncates at the stage budget") {
  Sigma2Stream stream{0, {5, 5, 5}};
  const auto t = range_encoder(stream, 2);
  CHECK(t.domain() == 2);
  CHECK_FALSE(t.complete());
}

TEST_CASE("one_complete assigns slots to constant processes and copies them") {
  Registry reg{make_constant(0, 5)};
  const auto res = one_complete_build(reg, 50, 10);
  CHECK(res.trace.limit(res.reduction(0, 0)) == 5);
  CHECK(res.trace.kind() == TraceKind::FromAbove);
}

TEST_CASE("one_complete reductions are injective with disjoint ranges per process") {
  Registry reg{make_constant(0, 5), make_staircase_down(1, 4, 1)};
  const auto res = one_complete_build(reg, 120, 12);
  std::set<Nat> all_slots;
  for (const auto& [e, slots] : res.slots) {
    std::set<Nat> mine;
    for (const auto& [x, n] : slots) {
      CHECK(mine.insert(n).second);      // injective per process
      CHECK(all_slots.insert(n).second);  // disjoint across processes
    }
  }
  CHECK(all_slots.size() >= 20);
}

TEST_CASE("one_complete freezes slots of non-monotone rivals at the last good value") {
  Registry reg{make_list(0, {{2, 3, 1}})};
  const auto res = one_complete_build(reg, 40, 0);
  const Nat slot = res.reduction(0, 0);
  CHECK(res.trace.limit(slot) == 2);
}

TEST_CASE("one_complete copies the limit of every stabilized pair") {
  Registry reg{
      make_constant(0, 7),
      make_staircase_down(1, 3, 1),
      make_delayed_converge(2, 6, 4),
  };
  const auto res = one_complete_build(reg, 400, 8);
  for (Nat x = 0; x <= 8; ++x) {
    CHECK(res.trace.limit(res.reduction(0, x)) == 7);
    CHECK(res.trace.limit(res.reduction(1, x)) == 0);  // staircase bottoms out
    CHECK(res.trace.limit(res.reduction(2, x)) == 4);
  }
}

TEST_CASE("nocollapse forces a tracking rival through n+1 values") {
  for (Nat n : {1, 2, 3}) {
    Registry reg{make_tracking(0, 0)};
    const auto res = nocollapse_witness(reg, n, 60);
    CHECK(res.trace.limit(0) == 0);
    CHECK(res.trace.total_changes(0) == n + 1);  // g itself: n+1 -> 0
    REQUIRE(res.reports.size() == 1);
    CHECK(res.reports[0].defeated);
    CHECK_FALSE(res.reports[0].vacuous);
  }
}

TEST_CASE("nocollapse leaves non-tracking rivals defeated by disagreement or overspend") {
  Registry reg{make_tracking(0, 0), make_constant(1, 9), make_divergent(2)};
  const auto res = nocollapse_witness(reg, 1, 60);
  // The constant rival announces 9, never matching g's 2..0 descent, so g(1)
  // stays put and the rival simply disagrees with the limit.
  CHECK(res.trace.limit(1) == 2);
  for (const auto& r : res.reports) {
    CAPTURE(r.e);
    CHECK(r.defeated);
    if (r.e == 2) CHECK(r.vacuous);
  }
}

TEST_CASE("nocollapse chases a rival that tracks with a lag") {
  Registry reg{make_tracking(0, 2)};
  const auto res = nocollapse_witness(reg, 2, 200);
  CHECK(res.trace.limit(0) == 0);
  CHECK(res.reports[0].defeated);
}

TEST_CASE("no1complete witness routes 1 + f through the registry") {
  // phi_e total identity on pair codes: j(<e,x>) = 1 + f(<e,x>).
  const auto f = testutil::trace_of(TraceKind::FromBelow, {{0, 1, 3}, {2}, {0, 2},
                                                           {1}, {0}, {5}, {0, 4}, {2, 2, 3}});
  // An identity process: unary_value(z) = z (staircase-up with a huge cap).
  Registry reg{make_staircase_up(0, 1000)};
  const auto res = no1complete_witness(reg, f, 60, 3);
  for (Nat x = 0; x < 3; ++x) {
    const Nat code = cantor_pair(0, x);
    if (code >= f.domain()) continue;
    CHECK(res.trace.limit(code) == 1 + f.limit(code));
  }
  CHECK(res.reports[0].defeated);
  CHECK(res.trace.kind() == TraceKind::FromBelow);
}

TEST_CASE("no1complete ignores divergent processes as vacuous") {
  const auto f = testutil::trace_of(TraceKind::FromBelow, {{0, 2}});
  Registry reg{make_divergent(3)};
  const auto res = no1complete_witness(reg, f, 40, 2);
  CHECK(res.reports[0].vacuous);
  CHECK(res.reports[0].defeated);
}

TEST_CASE("no_mcomplete witness jumps above the diagonalised value") {
  // phi_e(e) = 7 with f(7) dropping to 4: witness value exceeds 4 forever.
  std::vector<std::vector<Nat>> rows(8);
  rows[0] = {7};  // process 0 maps its own index to 7
  Registry reg{make_list(0, rows)};
  auto f = testutil::trace_of(TraceKind::FromAbove,
                              {{9}, {1}, {2}, {3}, {4}, {5}, {6}, {8, 6, 4}});
  const auto res = no_mcomplete_witness(reg, f, 50);
  CHECK(res.trace.limit(0) > f.limit(7));
  CHECK(res.trace.limit(0) == f.value_at(7, 0) + 1);  // converged at stage 0
  CHECK(res.reports[0].defeated);
}

TEST_CASE("no_mcomplete witness makes at most one upward change per input") {
  Registry reg{make_constant(0, 2), make_delayed_converge(1, 5, 3),
               make_divergent(2)};
  const auto f = testutil::trace_of(
      TraceKind::FromAbove, {{4, 2}, {3}, {5, 1}, {2}, {6, 6, 5}});
  const auto res = no_mcomplete_witness(reg, f, 80);
  CHECK(res.trace.kind() == TraceKind::FromBelow);
  for (Nat x = 0; x < res.trace.domain(); ++x) CHECK(res.trace.total_changes(x) <= 1);
  for (const auto& r : res.reports) {
    CHECK(r.defeated);
    if (r.e == 2) CHECK(r.vacuous);
  }
  // Delayed member converges at stage 5, so it reads f(3,5)+1.
  CHECK(res.trace.limit(1) == f.value_at(3, 5) + 1);
}
