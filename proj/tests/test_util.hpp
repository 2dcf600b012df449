#pragma once

#include <vector>

#include "spokelab/rng.hpp"
#include "spokelab/trace.hpp"

namespace spokelab::testutil {

/// Builds a trace from per-input full value sequences (one value per stage);
/// consecutive repeats collapse into the change-event representation.
inline ApproximationTrace trace_of(TraceKind kind, std::vector<std::vector<Nat>> rows,
                                   bool complete = true) {
  ApproximationTrace t(kind, rows.size(), complete);
  for (Nat x = 0; x < rows.size(); ++x) {
    const auto& row = rows[x];
    for (Nat s = 0; s < row.size(); ++s)
      if (s == 0 || row[s] != row[s - 1]) t.append(x, s, row[s]);
  }
  return t;
}

/// Random from-above trace: `inputs` inputs, start values <= max_value, at
/// most max_changes strict drops at random stages.
inline ApproximationTrace fuzz_from_above(Rng& rng, Nat inputs, Nat max_value, Nat max_changes,
                                          Nat max_stage = 24) {
  ApproximationTrace t(TraceKind::FromAbove, inputs, true);
  for (Nat x = 0; x < inputs; ++x) {
    Nat value = rng.range(0, max_value);
    t.append(x, 0, value);
    const Nat changes = rng.below(max_changes + 1);
    Nat stage = 0;
    for (Nat c = 0; c < changes && value > 0; ++c) {
      stage = rng.range(stage + 1, stage + 1 + max_stage / (max_changes + 1));
      value = rng.below(value);  // strictly smaller
      t.append(x, stage, value);
    }
  }
  return t;
}

}  // namespace spokelab::testutil
