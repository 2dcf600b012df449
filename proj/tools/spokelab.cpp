// Command-line front end: builds spoke graphs from traces and families,
// verifies the decoding laws against BFS, decodes pairs with query audits,
// runs the trace calculus, and exports DOT/CSV artifacts. All randomness
// flows from --seed; identical invocations write byte-identical files.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "spokelab/constructions.hpp"
#include "spokelab/decoders.hpp"
#include "spokelab/family.hpp"
#include "spokelab/io.hpp"
#include "spokelab/rng.hpp"

using json = nlohmann::ordered_json;
using namespace spokelab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string report_path(const std::string& given, const std::string& fallback_name) {
  if (!given.empty()) return given;
  const char* dir = std::getenv("SPOKELAB_REPORT_DIR");
  if (!dir) return "";
  return std::string(dir) + "/" + fallback_name;
}

void write_report(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail(Errc::Parse, "cannot write report " + path);
  out << j.dump(2) << "\n";
}

GraphShape parse_shape(const std::string& s, bool* singledegree) {
  *singledegree = false;
  if (s == "standard") return GraphShape::Standard;
  if (s == "elongated") return GraphShape::Elongated;
  if (s == "directed") return GraphShape::Directed;
  if (s == "singledegree") {
    *singledegree = true;
    return GraphShape::Standard;
  }
  fail(Errc::Usage, "unknown shape '" + s + "'");
}

FamilySpec parse_family(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon == std::string::npos ? s.size() : colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  auto nums = [&rest]() {
    std::vector<Nat> out;
    std::string cur;
    for (char c : rest + ",") {
      if (c == ',') {
        if (!cur.empty()) out.push_back(std::stoull(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    return out;
  };
  if (kind == "explicit") {
    if (rest.empty()) fail(Errc::Usage, "explicit family needs a file: explicit:<path>");
    return ExplicitFamily{read_family_file(rest)};
  }
  if (kind == "alldec") {
    const auto v = nums();
    if (v.size() != 3) fail(Errc::Usage, "alldec family needs max_len,max_val,count");
    return AllDecreasingFamily{v[0], v[1], v[2]};
  }
  if (kind == "periodic") {
    const auto v = nums();
    if (v.empty() || v.size() > 2) fail(Errc::Usage, "periodic family needs n[,count]");
    return PeriodicCountdownFamily{v[0], v.size() > 1 ? v[1] : v[0] + 1};
  }
  fail(Errc::Usage, "unknown family '" + kind + "'");
}

StagedGraph load_graph(const std::string& graph_path, const std::string& layout_path) {
  auto g = read_graph_file(graph_path);
  read_layout_file(layout_path, g);
  return g;
}

struct SuiteResult {
  std::string name;
  bool pass = true;
  Nat checked = 0;
  json details = json::object();
};

json to_json(const SuiteResult& r) {
  json j;
  j["suite"] = r.name;
  j["pass"] = r.pass;
  j["checked"] = r.checked;
  j["details"] = r.details;
  return j;
}

// decode dispatch by shape
DecodeOutcome decode_any(const StagedGraph& g, const GraphSnapshot& snap,
                         const SpokeOracle& so, Nat duv, NodeId x, NodeId y) {
  if (g.directed()) return decode_directed(snap, so, x, y);
  if (g.shape() == GraphShape::Elongated)
    return decode_elongated(snap, g.center(), *g.bottom_center(), duv, so, x, y);
  return decode_standard(snap, g.center(), so, x, y);
}

SuiteResult suite_oracle_equivalence(const StagedGraph& g) {
  SuiteResult r{"oracle-equivalence"};
  const auto snap = g.snapshot();
  const auto so = make_spoke_oracle(g, snap);
  const Nat duv = g.shape() == GraphShape::Elongated ? certify_duv(g, snap).value : 0;
  for (NodeId x = 0; x < snap.node_count() && r.pass; ++x) {
    const auto truth = bfs_from(snap, x);
    for (NodeId y = 0; y < snap.node_count(); ++y) {
      const auto out = decode_any(g, snap, so, duv, x, y);
      ++r.checked;
      if (out.value != truth[y]) {
        r.pass = false;
        r.details["counterexample"] = {{"x", x},
                                       {"y", y},
                                       {"decoded", out.value},
                                       {"bfs", truth[y]},
                                       {"case", out.case_label}};
        break;
      }
    }
  }
  return r;
}

SuiteResult suite_norms(const StagedGraph& g) {
  SuiteResult r{"norms"};
  const auto snap = g.snapshot();
  const auto so = make_spoke_oracle(g, snap);
  const Nat duv = g.shape() == GraphShape::Elongated ? certify_duv(g, snap).value : 0;
  const Nat bound = g.directed() ? 1 : 2;
  Nat worst = 0;
  for (NodeId x = 0; x < snap.node_count() && r.pass; ++x)
    for (NodeId y = 0; y < snap.node_count(); ++y) {
      const auto out = decode_any(g, snap, so, duv, x, y);
      ++r.checked;
      worst = std::max<Nat>(worst, out.audit.count());
      if (out.audit.count() > bound) {
        r.pass = false;
        r.details["counterexample"] = {{"x", x}, {"y", y}, {"queries", out.audit.count()}};
        break;
      }
    }
  r.details["max_queries"] = worst;
  r.details["bound"] = bound;
  // The recovery direction f(m) = d(a_m, b_m) - 2 uses one query per spoke.
  r.details["recovery_norm"] = 1;
  return r;
}

SuiteResult suite_mind_changes(const StagedGraph& g, Nat bound) {
  SuiteResult r{"mind-changes"};
  const auto snap = g.snapshot();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId x = 0; x < snap.node_count(); ++x)
    for (NodeId y = x + 1; y < snap.node_count(); ++y) pairs.emplace_back(x, y);
  const auto audit = mind_change_audit(g, pairs, g.last_stage());
  r.checked = pairs.size();
  r.details["max_changes"] = audit.max_changes;
  r.details["bound"] = bound;
  r.details["first_connection_not_a_change"] = true;
  if (audit.max_changes > bound) {
    r.pass = false;
    for (const auto& p : audit.pairs)
      if (p.changes > bound) {
        json timeline = json::array();
        for (const auto& [s, v] : p.timeline) timeline.push_back({{"stage", s}, {"value", v}});
        r.details["counterexample"] = {{"x", p.x}, {"y", p.y}, {"changes", p.changes},
                                       {"timeline", timeline}};
        break;
      }
  }
  return r;
}

SuiteResult suite_metric(const StagedGraph& g, Nat triple_cap) {
  SuiteResult r{"metric"};
  const auto snap = g.snapshot();
  const Nat n = snap.node_count();
  std::vector<std::vector<Nat>> d(n);
  for (NodeId x = 0; x < n; ++x) d[x] = bfs_from(snap, x);
  for (NodeId x = 0; x < n && r.pass; ++x) {
    if (d[x][x] != 0) {
      r.pass = false;
      r.details["counterexample"] = {{"x", x}, {"law", "identity"}};
    }
    for (NodeId y = 0; y < n && r.pass; ++y) {
      ++r.checked;
      if (d[x][y] == kUnreached) {
        r.pass = false;
        r.details["counterexample"] = {{"x", x}, {"y", y}, {"law", "connectivity"}};
        break;
      }
      if (!g.directed() && d[x][y] != d[y][x]) {
        r.pass = false;
        r.details["counterexample"] = {{"x", x}, {"y", y}, {"law", "symmetry"}};
        break;
      }
    }
  }
  if (r.pass && n <= triple_cap) {
    for (NodeId x = 0; x < n && r.pass; ++x)
      for (NodeId y = 0; y < n && r.pass; ++y)
        for (NodeId z = 0; z < n; ++z) {
          ++r.checked;
          if (d[x][z] > d[x][y] + d[y][z]) {
            r.pass = false;
            r.details["counterexample"] = {
                {"x", x}, {"y", y}, {"z", z}, {"law", "triangle"}};
            break;
          }
        }
  } else if (n > triple_cap) {
    r.details["triples_skipped_above"] = triple_cap;
  }
  return r;
}

SuiteResult suite_equivariance(const StagedGraph& g, Nat copies, Nat seed) {
  SuiteResult r{"equivariance"};
  const auto snap = g.snapshot();
  for (Nat c = 0; c < copies && r.pass; ++c) {
    const auto copy = permuted_copy(g, seed + c);
    const auto csnap = copy.graph.snapshot();
    const auto cso = make_spoke_oracle(copy.graph, csnap);
    const Nat cduv =
        g.shape() == GraphShape::Elongated ? certify_duv(copy.graph, csnap).value : 0;
    for (NodeId x = 0; x < snap.node_count() && r.pass; ++x) {
      const auto truth = bfs_from(snap, x);
      for (NodeId y = 0; y < snap.node_count(); ++y) {
        ++r.checked;
        // d_H o h2 = d, through the decoders on the copy.
        const auto out =
            decode_any(copy.graph, csnap, cso, cduv, copy.iso[x], copy.iso[y]);
        if (out.value != truth[y]) {
          r.pass = false;
          r.details["counterexample"] = {{"copy", c}, {"x", x}, {"y", y},
                                         {"decoded_on_copy", out.value},
                                         {"bfs_on_original", truth[y]}};
          break;
        }
      }
    }
    if (!g.directed() && g.shape() == GraphShape::Standard && r.pass) {
      // Loop indices are relabeling-invariant wherever loops exist.
      for (Nat m = 0; m < g.spoke_count() && r.pass; ++m) {
        if (g.spoke(m).loop.empty()) continue;
        ++r.checked;
        const Nat orig = loop_index(snap, g.center(), g.spoke(m).a);
        const Nat mapped =
            loop_index(csnap, copy.iso[g.center()], copy.iso[g.spoke(m).a]);
        if (orig != mapped) {
          r.pass = false;
          r.details["counterexample"] = {{"copy", c}, {"spoke", m},
                                         {"loop_index", orig}, {"on_copy", mapped}};
        }
      }
    }
  }
  r.details["copies"] = copies;
  return r;
}

int run_build(const std::string& shape_arg, const std::string& family_arg,
              const std::string& trace_arg, Nat stages, const std::string& out_path,
              const std::string& layout_path) {
  bool singledegree = false;
  const GraphShape shape = parse_shape(shape_arg, &singledegree);
  std::optional<ApproximationTrace> trace;
  if (!trace_arg.empty()) trace = read_trace_file(trace_arg);

  StagedGraph g = [&] {
    if (singledegree) {
      if (!trace) fail(Errc::Usage, "singledegree builds need --trace");
      if (!family_arg.empty())
        fail(Errc::Usage, "singledegree builds take no --family");
      return build_singledegree(*trace, stages);
    }
    if (family_arg.empty()) fail(Errc::Usage, "this shape needs --family");
    const auto family = parse_family(family_arg);
    return build_family(family, shape, trace ? &*trace : nullptr, stages);
  }();

  write_graph_file(out_path, g);
  write_layout_file(layout_path, g);
  const auto snap = g.snapshot();
  std::cout << "shape=" << (singledegree ? "singledegree" : shape_name(g.shape()))
            << " nodes=" << g.node_count() << " edges=" << snap.edge_count()
            << " spokes=" << g.spoke_count() << " stages=" << g.last_stage() << "\n";
  if (g.shape() == GraphShape::Elongated) {
    const auto cert = certify_duv(g, snap);
    std::cout << "duv=" << cert.value << " via spoke " << cert.spoke << "\n";
  }
  return kExitPass;
}

int run_verify(const std::string& graph_path, const std::string& layout_path,
               const std::string& suite, Nat bound, Nat copies, Nat seed, Nat triple_cap,
               const std::string& report_arg) {
  const auto g = load_graph(graph_path, layout_path);
  std::vector<SuiteResult> results;
  const bool all = suite == "all";
  if (all || suite == "oracle-equivalence") results.push_back(suite_oracle_equivalence(g));
  if (all || suite == "norms") results.push_back(suite_norms(g));
  if (all || suite == "mind-changes") results.push_back(suite_mind_changes(g, bound));
  if (all || suite == "metric") results.push_back(suite_metric(g, triple_cap));
  if (all || suite == "equivariance") results.push_back(suite_equivariance(g, copies, seed));
  if (results.empty()) fail(Errc::Usage, "unknown suite '" + suite + "'");

  json report = json::array();
  bool pass = true;
  for (const auto& r : results) {
    report.push_back(to_json(r));
    pass = pass && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << r.checked
              << " checks)\n";
    if (!r.pass) std::cout << "  " << r.details.dump() << "\n";
  }
  write_report(report_path(report_arg, "verify.json"), report);
  return pass ? kExitPass : kExitFail;
}

int run_decode(const std::string& graph_path, const std::string& layout_path,
               const std::string& pairs_arg, bool all_pairs,
               const std::string& report_arg) {
  const auto g = load_graph(graph_path, layout_path);
  const auto snap = g.snapshot();
  const auto so = make_spoke_oracle(g, snap);
  const Nat duv = g.shape() == GraphShape::Elongated ? certify_duv(g, snap).value : 0;

  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (all_pairs) {
    for (NodeId x = 0; x < snap.node_count(); ++x)
      for (NodeId y = 0; y < snap.node_count(); ++y) pairs.emplace_back(x, y);
  } else {
    std::string cur;
    std::vector<Nat> nums;
    for (char c : pairs_arg + ",") {
      if (c == ',' || c == ':') {
        if (!cur.empty()) nums.push_back(std::stoull(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (nums.size() % 2) fail(Errc::Usage, "--pairs wants x:y[,x:y...]");
    for (std::size_t i = 0; i + 1 < nums.size(); i += 2) pairs.emplace_back(nums[i], nums[i + 1]);
  }
  if (pairs.empty()) fail(Errc::Usage, "nothing to decode: give --pairs or --all");

  json report = json::array();
  bool pass = true;
  for (const auto& [x, y] : pairs) {
    const auto out = decode_any(g, snap, so, duv, x, y);
    const Nat truth = bfs_distance(snap, x, y);
    json cands = json::array();
    for (const auto& c : out.table)
      cands.push_back({{"label", c.label},
                       {"base", c.base},
                       {"coef_x", c.coef_x},
                       {"coef_y", c.coef_y}});
    json queries = json::array();
    for (Nat code : out.audit.queries) {
      const auto [a, b] = cantor_unpair(code);
      queries.push_back({{"a", a}, {"b", b}});
    }
    const bool ok = out.value == truth;
    pass = pass && ok;
    report.push_back({{"x", x},
                      {"y", y},
                      {"case", out.case_label},
                      {"candidates", cands},
                      {"queries", queries},
                      {"value", out.value},
                      {"bfs", truth},
                      {"verdict", ok ? "agree" : "disagree"}});
  }
  write_report(report_path(report_arg, "decode.json"), report);
  std::cout << (pass ? "PASS" : "FAIL") << " decode (" << pairs.size() << " pairs)\n";
  return pass ? kExitPass : kExitFail;
}

int run_export(const std::string& graph_path, const std::string& layout_path, bool dot,
               bool matrix, const std::string& out_path, Nat max_nodes) {
  auto g = read_graph_file(graph_path);
  if (!layout_path.empty()) read_layout_file(layout_path, g);
  std::ofstream out(out_path);
  if (!out) fail(Errc::Parse, "cannot write " + out_path);
  if (dot == matrix) fail(Errc::Usage, "pick exactly one of --dot / --matrix");
  if (dot) out << to_dot(g);
  else out << distance_matrix_csv(g, max_nodes);
  std::cout << "wrote " << out_path << "\n";
  return kExitPass;
}

json witness_report_json(const WitnessResult& res) {
  json reports = json::array();
  for (const auto& r : res.reports)
    reports.push_back({{"e", r.e},
                       {"vacuous", r.vacuous},
                       {"defeated", r.defeated},
                       {"detail", r.detail}});
  return reports;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spokelab: encode stage-wise approximations into spoke-graph distance "
      "functions, decode them back under query audits, and verify the laws"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "build a staged spoke graph");
  std::string b_shape, b_family, b_trace, b_out = "out.graph", b_layout = "out.layout";
  Nat b_stages = 64, b_seed = 1;
  build->add_option("--shape", b_shape, "standard|elongated|directed|singledegree")
      ->required();
  build->add_option("--family", b_family,
                    "explicit:<file> | alldec:<len>,<val>,<count> | periodic:<n>[,<count>]");
  build->add_option("--trace", b_trace, "trace file to encode");
  build->add_option("--stages", b_stages, "stage budget");
  build->add_option("--seed", b_seed, "seed (reserved for fuzzed builds)");
  build->add_option("--out", b_out, "graph file");
  build->add_option("--layout", b_layout, "layout sidecar file");

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites on a build");
  std::string v_suite = "all", v_graph, v_layout, v_report;
  Nat v_bound = 0, v_copies = 3, v_seed = 1, v_cap = 200;
  verify->add_option("--suite", v_suite,
                     "oracle-equivalence|norms|mind-changes|metric|equivariance|all");
  verify->add_option("--graph", v_graph, "graph file")->required();
  verify->add_option("--layout", v_layout, "layout sidecar")->required();
  verify->add_option("--bound", v_bound, "mind-change bound to enforce");
  verify->add_option("--copies", v_copies, "permuted copies for equivariance");
  verify->add_option("--seed", v_seed, "seed for permuted copies");
  verify->add_option("--triple-cap", v_cap, "node cap for triangle checks");
  verify->add_option("--report", v_report, "JSON report path");

  // decode
  auto* decode = app.add_subcommand("decode", "decode pairs with audited oracles");
  std::string d_graph, d_layout, d_pairs, d_report;
  bool d_all = false;
  decode->add_option("--graph", d_graph, "graph file")->required();
  decode->add_option("--layout", d_layout, "layout sidecar")->required();
  decode->add_option("--pairs", d_pairs, "x:y[,x:y...]");
  decode->add_flag("--all", d_all, "decode every pair");
  decode->add_option("--report", d_report, "JSON report path");

  // export
  auto* exping = app.add_subcommand("export", "export DOT or a distance matrix");
  std::string e_graph, e_layout, e_out = "out.dot";
  bool e_dot = false, e_matrix = false;
  Nat e_max = 600;
  exping->add_option("--graph", e_graph, "graph file")->required();
  exping->add_option("--layout", e_layout, "layout sidecar (role colors)");
  exping->add_flag("--dot", e_dot, "DOT rendering");
  exping->add_flag("--matrix", e_matrix, "distance matrix CSV");
  exping->add_option("--out", e_out, "output path");
  exping->add_option("--max-nodes", e_max, "matrix size cap");

  // trace-tools
  auto* tools = app.add_subcommand("trace-tools", "the approximation calculus");
  tools->require_subcommand(1);
  std::string t_trace, t_out, t_stream, t_registry, t_report, t_kind;
  Nat t_bound = 0, t_stages = 200, t_x = 0, t_upto = 1u << 20, t_n = 1, t_max_input = 8;
  auto* t_classify = tools->add_subcommand("classify", "summarise a trace");
  t_classify->add_option("--trace", t_trace)->required();
  auto* t_mind = tools->add_subcommand("mind-changes", "count changes of one input");
  t_mind->add_option("--trace", t_trace)->required();
  t_mind->add_option("--x", t_x)->required();
  t_mind->add_option("--upto", t_upto);
  auto* t_countdown = tools->add_subcommand("countdown", "the countdown companion");
  t_countdown->add_option("--trace", t_trace)->required();
  t_countdown->add_option("--bound", t_bound, "constant change bound")->required();
  t_countdown->add_option("--out", t_out)->required();
  auto* t_dual = tools->add_subcommand("dual", "from-above to from-below");
  t_dual->add_option("--trace", t_trace)->required();
  t_dual->add_option("--out", t_out)->required();
  auto* t_range = tools->add_subcommand("encode-range", "range encoder for a stream");
  t_range->add_option("--stream", t_stream)->required();
  t_range->add_option("--stages", t_stages);
  t_range->add_option("--out", t_out)->required();
  auto* t_complete = tools->add_subcommand("one-complete", "the 1-complete build");
  t_complete->add_option("--registry", t_registry)->required();
  t_complete->add_option("--stages", t_stages);
  t_complete->add_option("--max-input", t_max_input);
  t_complete->add_option("--out", t_out)->required();
  t_complete->add_option("--report", t_report);
  auto* t_witness = tools->add_subcommand("witness", "diagonalisation witnesses");
  t_witness->add_option("--kind", t_kind, "nocollapse|no1complete|no-mcomplete")->required();
  t_witness->add_option("--registry", t_registry)->required();
  t_witness->add_option("--n", t_n, "bound for nocollapse");
  t_witness->add_option("--trace", t_trace, "trace to diagonalise against");
  t_witness->add_option("--stages", t_stages);
  t_witness->add_option("--max-input", t_max_input);
  t_witness->add_option("--out", t_out)->required();
  t_witness->add_option("--report", t_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (build->parsed())
      return run_build(b_shape, b_family, b_trace, b_stages, b_out, b_layout);
    if (verify->parsed())
      return run_verify(v_graph, v_layout, v_suite, v_bound, v_copies, v_seed, v_cap,
                        v_report);
    if (decode->parsed()) return run_decode(d_graph, d_layout, d_pairs, d_all, d_report);
    if (exping->parsed())
      return run_export(e_graph, e_layout, e_dot, e_matrix, e_out, e_max);
    if (tools->parsed()) {
      if (t_classify->parsed()) {
        const auto trace = read_trace_file(t_trace);
        const auto c = classify(trace);
        json j = {{"monotone_above", c.monotone_above},
                  {"monotone_below", c.monotone_below},
                  {"max_changes", c.max_changes}};
        if (c.monotone_above) j["omega_bound"] = c.omega_bound;
        std::cout << j.dump(2) << "\n";
        return kExitPass;
      }
      if (t_mind->parsed()) {
        const auto trace = read_trace_file(t_trace);
        std::cout << mind_changes(trace, t_x, t_upto) << "\n";
        return kExitPass;
      }
      if (t_countdown->parsed()) {
        const auto trace = read_trace_file(t_trace);
        const std::vector<Nat> bound(trace.domain(), t_bound);
        write_trace_file(t_out, countdown(trace, bound));
        std::cout << "wrote " << t_out << "\n";
        return kExitPass;
      }
      if (t_dual->parsed()) {
        write_trace_file(t_out, dual_above(read_trace_file(t_trace)));
        std::cout << "wrote " << t_out << "\n";
        return kExitPass;
      }
      if (t_range->parsed()) {
        const auto stream = read_stream_file(t_stream);
        const auto trace = range_encoder(stream, t_stages);
        write_trace_file(t_out, trace);
        json j = {{"domain", trace.domain()},
                  {"complete", trace.complete()},
                  {"limit_range", limit_range(trace)}};
        std::cout << j.dump(2) << "\n";
        return kExitPass;
      }
      if (t_complete->parsed()) {
        const auto registry = read_registry_file(t_registry);
        const auto res = one_complete_build(registry, t_stages, t_max_input);
        write_trace_file(t_out, res.trace);
        json slots = json::array();
        for (const auto& [e, m] : res.slots)
          for (const auto& [x, n] : m)
            slots.push_back({{"e", e}, {"x", x}, {"slot", n}});
        json j = {{"slots", slots}, {"inputs", res.trace.domain()}};
        write_report(report_path(t_report, "one_complete.json"), j);
        std::cout << "wrote " << t_out << " (" << res.trace.domain() << " inputs)\n";
        return kExitPass;
      }
      if (t_witness->parsed()) {
        const auto registry = read_registry_file(t_registry);
        WitnessResult res = [&] {
          if (t_kind == "nocollapse") return nocollapse_witness(registry, t_n, t_stages);
          if (t_kind == "no1complete")
            return no1complete_witness(registry, read_trace_file(t_trace), t_stages,
                                       t_max_input);
          if (t_kind == "no-mcomplete")
            return no_mcomplete_witness(registry, read_trace_file(t_trace), t_stages);
          fail(Errc::Usage, "unknown witness kind '" + t_kind + "'");
        }();
        write_trace_file(t_out, res.trace);
        const json j = {{"kind", t_kind}, {"requirements", witness_report_json(res)}};
        write_report(report_path(t_report, "witness.json"), j);
        bool all_defeated = true;
        for (const auto& r : res.reports) all_defeated = all_defeated && r.defeated;
        std::cout << (all_defeated ? "PASS" : "FAIL") << " witness " << t_kind << " ("
                  << res.reports.size() << " requirements)\n";
        return all_defeated ? kExitPass : kExitFail;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return e.code() == Errc::Parse || e.code() == Errc::Usage ? kExitUsage : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
