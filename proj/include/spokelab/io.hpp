#pragma once

#include <iosfwd>
#include <string>

#include "spokelab/constructions.hpp"
#include "spokelab/graph.hpp"
#include "spokelab/process.hpp"
#include "spokelab/trace.hpp"

namespace spokelab {

// Trace files: header `kind=above|below|free complete=0|1 domain=<n>`, then
// one change event per line, `x <nat> s <nat> v <nat>`.
ApproximationTrace read_trace(std::istream& in, const std::string& name = "<trace>");
ApproximationTrace read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const ApproximationTrace& trace);
void write_trace_file(const std::string& path, const ApproximationTrace& trace);

// Registry files: one process per line, `e <nat> prog <name> args...`, with
// the built-in catalog constant | staircase-down | staircase-up |
// delayed-converge | tracking | divergent.
Registry read_registry(std::istream& in, const std::string& name = "<registry>");
Registry read_registry_file(const std::string& path);

// Stream files: header `x0=<nat>`, then one `grow <y>` line per stage.
Sigma2Stream read_stream(std::istream& in, const std::string& name = "<stream>");
Sigma2Stream read_stream_file(const std::string& path);
void write_stream(std::ostream& out, const Sigma2Stream& stream);

// Graph files: header `directed=0|1 stage=<s> complete=0|1`, then `n <id>
// <stage>` node records and `e <x> <y> <stage>` edges (or `a <from> <to>
// <stage>` arcs). The layout sidecar is written separately on purpose; a
// graph file alone carries no role information.
void write_graph(std::ostream& out, const StagedGraph& g);
void write_graph_file(const std::string& path, const StagedGraph& g);
StagedGraph read_graph(std::istream& in, const std::string& name = "<graph>");
StagedGraph read_graph_file(const std::string& path);

// Layout sidecars: `shape=<s> spokes=<k> u=<id> [v=<id>]` then per spoke a
// `spoke` line and its role id lists.
void write_layout(std::ostream& out, const StagedGraph& g);
void write_layout_file(const std::string& path, const StagedGraph& g);
/// Reads the sidecar back onto a structurally loaded graph.
void read_layout(std::istream& in, StagedGraph& g, const std::string& name = "<layout>");
void read_layout_file(const std::string& path, StagedGraph& g);

// Family files (explicit): one strictly decreasing string per line.
std::vector<DecreasingString> read_family(std::istream& in,
                                          const std::string& name = "<family>");
std::vector<DecreasingString> read_family_file(const std::string& path);

/// DOT rendering; role colors come from the layout sidecar and are clearly
/// non-oracle data.
std::string to_dot(const StagedGraph& g);

/// Distance matrix of the complete snapshot as CSV; refuses graphs above
/// max_nodes.
std::string distance_matrix_csv(const StagedGraph& g, Nat max_nodes);

}  // namespace spokelab
