#include "spokelab/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "spokelab/distance.hpp"

namespace spokelab {

namespace {

[[noreturn]] void parse_fail(const std::string& name, Nat line, const std::string& what) {
  std::ostringstream os;
  os << name << ":" << line << ": " << what;
  fail(Errc::Parse, os.str());
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Parse, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::Parse, "cannot write " + path);
  return out;
}

// Splits `key=value` tokens of a header line into a map.
std::map<std::string, std::string> header_fields(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream is(line);
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

Nat to_nat(const std::string& s, const std::string& name, Nat line) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(name, line, "expected a natural number, got '" + s + "'");
  }
}

}  // namespace

ApproximationTrace read_trace(std::istream& in, const std::string& name) {
  std::string line;
  Nat lineno = 1;
  if (!std::getline(in, line)) parse_fail(name, 1, "missing header");
  const auto fields = header_fields(line);
  if (!fields.count("kind") || !fields.count("domain") || !fields.count("complete"))
    parse_fail(name, 1, "header needs kind=, complete= and domain=");
  TraceKind kind;
  const std::string& k = fields.at("kind");
  if (k == "above") kind = TraceKind::FromAbove;
  else if (k == "below") kind = TraceKind::FromBelow;
  else if (k == "free") kind = TraceKind::Free;
  else parse_fail(name, 1, "unknown kind '" + k + "'");
  ApproximationTrace trace(kind, to_nat(fields.at("domain"), name, 1),
                           to_nat(fields.at("complete"), name, 1) != 0);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string xs, ss, vs, tag;
    Nat x, s, v;
    if (!(is >> tag) || tag != "x" || !(is >> xs) || !(is >> tag) || tag != "s" ||
        !(is >> ss) || !(is >> tag) || tag != "v" || !(is >> vs))
      parse_fail(name, lineno, "expected 'x <nat> s <nat> v <nat>'");
    x = to_nat(xs, name, lineno);
    s = to_nat(ss, name, lineno);
    v = to_nat(vs, name, lineno);
    try {
      trace.append(x, s, v);
    } catch (const Error& e) {
      parse_fail(name, lineno, e.what());
    }
  }
  for (Nat x = 0; x < trace.domain(); ++x)
    if (!trace.has_initial(x)) {
      std::ostringstream os;
      os << "input " << x << " has no stage-0 event";
      fail(Errc::Parse, name + ": " + os.str());
    }
  return trace;
}

ApproximationTrace read_trace_file(const std::string& path) {
  auto in = open_in(path);
  return read_trace(in, path);
}

void write_trace(std::ostream& out, const ApproximationTrace& trace) {
  out << "kind=" << trace_kind_name(trace.kind()) << " complete=" << (trace.complete() ? 1 : 0)
      << " domain=" << trace.domain() << "\n";
  for (Nat x = 0; x < trace.domain(); ++x)
    for (const auto& e : trace.events(x))
      out << "x " << x << " s " << e.stage << " v " << e.value << "\n";
}

void write_trace_file(const std::string& path, const ApproximationTrace& trace) {
  auto out = open_out(path);
  write_trace(out, trace);
}

Registry read_registry(std::istream& in, const std::string& name) {
  Registry registry;
  std::string line;
  Nat lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string tag, prog;
    std::string es;
    if (!(is >> tag) || tag != "e" || !(is >> es) || !(is >> tag) || tag != "prog" ||
        !(is >> prog))
      parse_fail(name, lineno, "expected 'e <nat> prog <builtin> args...'");
    const Nat e = to_nat(es, name, lineno);
    std::vector<Nat> args;
    std::string arg;
    while (is >> arg) args.push_back(to_nat(arg, name, lineno));
    auto want = [&](std::size_t n) {
      if (args.size() < n) parse_fail(name, lineno, prog + " needs more arguments");
    };
    if (prog == "constant") {
      want(1);
      registry.push_back(make_constant(e, args[0]));
    } else if (prog == "staircase-down") {
      want(1);
      registry.push_back(make_staircase_down(e, args[0], args.size() > 1 ? args[1] : 0));
    } else if (prog == "staircase-up") {
      want(1);
      registry.push_back(make_staircase_up(e, args[0]));
    } else if (prog == "delayed-converge") {
      want(2);
      registry.push_back(make_delayed_converge(e, args[0], args[1]));
    } else if (prog == "tracking") {
      registry.push_back(make_tracking(e, args.empty() ? 0 : args[0]));
    } else if (prog == "divergent") {
      registry.push_back(make_divergent(e));
    } else {
      parse_fail(name, lineno, "unknown builtin '" + prog + "'");
    }
  }
  return registry;
}

Registry read_registry_file(const std::string& path) {
  auto in = open_in(path);
  return read_registry(in, path);
}

Sigma2Stream read_stream(std::istream& in, const std::string& name) {
  Sigma2Stream stream;
  std::string line;
  if (!std::getline(in, line)) parse_fail(name, 1, "missing x0= header");
  const auto fields = header_fields(line);
  if (!fields.count("x0")) parse_fail(name, 1, "header needs x0=");
  stream.x0 = to_nat(fields.at("x0"), name, 1);
  Nat lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string tag, ys;
    if (!(is >> tag) || tag != "grow" || !(is >> ys))
      parse_fail(name, lineno, "expected 'grow <y>'");
    stream.events.push_back(to_nat(ys, name, lineno));
  }
  return stream;
}

Sigma2Stream read_stream_file(const std::string& path) {
  auto in = open_in(path);
  return read_stream(in, path);
}

void write_stream(std::ostream& out, const Sigma2Stream& stream) {
  out << "x0=" << stream.x0 << "\n";
  for (Nat y : stream.events) out << "grow " << y << "\n";
}

void write_graph(std::ostream& out, const StagedGraph& g) {
  out << "directed=" << (g.directed() ? 1 : 0) << " stage=" << g.last_stage()
      << " complete=" << (g.complete() ? 1 : 0) << "\n";
  // Events in log order: nodes and edges interleaved by stage, nodes first
  // within a stage (ids are allocated in this order).
  Nat next_node = 0;
  std::size_t next_edge = 0;
  const auto edges = g.edges();
  auto emit_nodes_upto = [&](Nat stage) {
    while (next_node < g.node_count() && g.node_stage(next_node) <= stage) {
      out << "n " << next_node << " " << g.node_stage(next_node) << "\n";
      ++next_node;
    }
  };
  while (next_edge < edges.size()) {
    const auto& [x, y, st] = edges[next_edge];
    emit_nodes_upto(st);
    out << (g.directed() ? "a " : "e ") << x << " " << y << " " << st << "\n";
    ++next_edge;
  }
  emit_nodes_upto(g.last_stage());
}

void write_graph_file(const std::string& path, const StagedGraph& g) {
  auto out = open_out(path);
  write_graph(out, g);
}

StagedGraph read_graph(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) parse_fail(name, 1, "missing header");
  const auto fields = header_fields(line);
  if (!fields.count("directed")) parse_fail(name, 1, "header needs directed=");
  const bool directed = to_nat(fields.at("directed"), name, 1) != 0;
  // The shape is refined by the layout sidecar; a bare graph file loads as
  // standard/directed and may be re-tagged elongated by read_layout.
  StagedGraph g(directed ? GraphShape::Directed : GraphShape::Standard, 0);
  bool first_node = true;
  Nat lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag == "n") {
      std::string ids, ss;
      if (!(is >> ids) || !(is >> ss)) parse_fail(name, lineno, "expected 'n <id> <stage>'");
      const Nat id = to_nat(ids, name, lineno);
      const Nat stage = to_nat(ss, name, lineno);
      if (first_node) {
        // id 0 was created by the constructor; just check consistency.
        if (id != 0) parse_fail(name, lineno, "node ids must start at 0");
        first_node = false;
        continue;
      }
      if (id != g.node_count()) parse_fail(name, lineno, "node ids must be sequential");
      try {
        g.add_node(NodeRole::PathNode, stage);
      } catch (const Error& e) {
        parse_fail(name, lineno, e.what());
      }
    } else if (tag == "e" || tag == "a") {
      std::string xs, ys, ss;
      if (!(is >> xs) || !(is >> ys) || !(is >> ss))
        parse_fail(name, lineno, "expected 'e <x> <y> <stage>'");
      try {
        g.add_edge(to_nat(xs, name, lineno), to_nat(ys, name, lineno),
                   to_nat(ss, name, lineno));
      } catch (const Error& e) {
        parse_fail(name, lineno, e.what());
      }
    } else {
      parse_fail(name, lineno, "unknown record '" + tag + "'");
    }
  }
  if (fields.count("complete")) g.set_complete(to_nat(fields.at("complete"), name, 1) != 0);
  return g;
}

StagedGraph read_graph_file(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in, path);
}

namespace {

void write_ids(std::ostream& out, const char* tag, Nat m, const std::vector<NodeId>& ids) {
  if (ids.empty()) return;
  out << tag << " " << m;
  for (NodeId id : ids) out << " " << id;
  out << "\n";
}

}  // namespace

void write_layout(std::ostream& out, const StagedGraph& g) {
  out << "shape=" << shape_name(g.shape()) << " spokes=" << g.spoke_count()
      << " u=" << g.center();
  if (g.bottom_center()) out << " v=" << *g.bottom_center();
  out << "\n";
  for (Nat m = 0; m < g.spoke_count(); ++m) {
    const auto& s = g.spoke(m);
    out << "spoke " << m << " a " << s.a << " b " << s.b << " l " << s.elongation << " type";
    for (Nat v : s.type) out << " " << v;
    if (s.trace_input) out << " input " << *s.trace_input;
    out << "\n";
    for (std::size_t i = 0; i < s.paths.size(); ++i) {
      out << "path " << m << " " << i;
      for (NodeId id : s.paths[i]) out << " " << id;
      out << "\n";
    }
    write_ids(out, "chainu", m, s.chain_u);
    write_ids(out, "chainv", m, s.chain_v);
    write_ids(out, "loop", m, s.loop);
    write_ids(out, "return", m, s.return_path);
  }
}

void write_layout_file(const std::string& path, const StagedGraph& g) {
  auto out = open_out(path);
  write_layout(out, g);
}

void read_layout(std::istream& in, StagedGraph& g, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) parse_fail(name, 1, "missing header");
  const auto fields = header_fields(line);
  if (!fields.count("shape") || !fields.count("spokes"))
    parse_fail(name, 1, "header needs shape= and spokes=");
  const std::string shape = fields.at("shape");
  if ((shape == "directed") != g.directed())
    parse_fail(name, 1, "layout directedness disagrees with the graph file");
  if (shape == "elongated") {
    if (!fields.count("v")) parse_fail(name, 1, "elongated layout needs v=");
    g.shape_ = GraphShape::Elongated;
    g.bottom_ = to_nat(fields.at("v"), name, 1);
  }
  const Nat spoke_count = to_nat(fields.at("spokes"), name, 1);
  g.spokes_.assign(spoke_count, SpokeLayout{});
  Nat lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    auto rest = [&]() {
      std::vector<Nat> out;
      std::string t;
      while (is >> t) out.push_back(to_nat(t, name, lineno));
      return out;
    };
    if (tag == "spoke") {
      std::string ms;
      is >> ms;
      const Nat m = to_nat(ms, name, lineno);
      if (m >= spoke_count) parse_fail(name, lineno, "spoke index out of range");
      auto& s = g.spokes_[m];
      std::string key;
      while (is >> key) {
        if (key == "a") {
          std::string v;
          is >> v;
          s.a = to_nat(v, name, lineno);
        } else if (key == "b") {
          std::string v;
          is >> v;
          s.b = to_nat(v, name, lineno);
        } else if (key == "l") {
          std::string v;
          is >> v;
          s.elongation = to_nat(v, name, lineno);
        } else if (key == "input") {
          std::string v;
          is >> v;
          s.trace_input = to_nat(v, name, lineno);
        } else if (key == "type") {
          std::string v;
          while (is >> v) {
            if (v == "input") {
              std::string w;
              is >> w;
              s.trace_input = to_nat(w, name, lineno);
              break;
            }
            s.type.push_back(to_nat(v, name, lineno));
          }
        } else {
          parse_fail(name, lineno, "unknown spoke field '" + key + "'");
        }
      }
    } else if (tag == "path") {
      std::string ms, is2;
      is >> ms >> is2;
      const Nat m = to_nat(ms, name, lineno);
      auto ids = rest();
      if (m >= spoke_count) parse_fail(name, lineno, "spoke index out of range");
      g.spokes_[m].paths.push_back(ids);
    } else if (tag == "chainu" || tag == "chainv" || tag == "loop" || tag == "return") {
      std::string ms;
      is >> ms;
      const Nat m = to_nat(ms, name, lineno);
      if (m >= spoke_count) parse_fail(name, lineno, "spoke index out of range");
      auto ids = rest();
      auto& s = g.spokes_[m];
      if (tag == "chainu") s.chain_u = ids;
      else if (tag == "chainv") s.chain_v = ids;
      else if (tag == "loop") s.loop = ids;
      else s.return_path = ids;
    } else {
      parse_fail(name, lineno, "unknown record '" + tag + "'");
    }
  }
  // Restore node roles from the layout so renders of loaded graphs match
  // builder-made ones.
  auto set_role = [&g](NodeId id, NodeRole role) {
    if (id < g.node_count()) g.node_role_[id] = role;
  };
  set_role(g.center(), NodeRole::Center);
  if (g.bottom_center()) set_role(*g.bottom_center(), NodeRole::BottomCenter);
  for (const auto& s : g.spokes_) {
    if (s.a != g.center()) set_role(s.a, NodeRole::SpokeA);
    set_role(s.b, NodeRole::SpokeB);
    for (const auto& p : s.paths)
      for (NodeId id : p) set_role(id, NodeRole::PathNode);
    for (NodeId id : s.chain_u) set_role(id, NodeRole::ChainNode);
    for (NodeId id : s.chain_v) set_role(id, NodeRole::ChainNode);
    for (NodeId id : s.loop) set_role(id, NodeRole::LoopNode);
    for (NodeId id : s.return_path) set_role(id, NodeRole::ReturnNode);
  }
}

void read_layout_file(const std::string& path, StagedGraph& g) {
  auto in = open_in(path);
  read_layout(in, g, path);
}

std::vector<DecreasingString> read_family(std::istream& in, const std::string& name) {
  std::vector<DecreasingString> out;
  std::string line;
  Nat lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::vector<Nat> values;
    std::string v;
    while (is >> v) values.push_back(to_nat(v, name, lineno));
    if (values.empty()) continue;
    try {
      out.emplace_back(std::move(values));
    } catch (const Error& e) {
      parse_fail(name, lineno, e.what());
    }
  }
  if (out.empty()) fail(Errc::Parse, name + ": family file lists no strings");
  return out;
}

std::vector<DecreasingString> read_family_file(const std::string& path) {
  auto in = open_in(path);
  return read_family(in, path);
}

std::string to_dot(const StagedGraph& g) {
  std::ostringstream os;
  os << (g.directed() ? "digraph" : "graph") << " spokes {\n";
  os << "  node [shape=circle width=0.25 fixedsize=true fontsize=9];\n";
  auto color = [&](NodeId n) -> const char* {
    switch (g.node_role(n)) {
      case NodeRole::Center: return "gold";
      case NodeRole::BottomCenter: return "orange";
      case NodeRole::SpokeA: return "skyblue";
      case NodeRole::SpokeB: return "salmon";
      case NodeRole::LoopNode: return "palegreen";
      case NodeRole::ChainNode: return "lavender";
      case NodeRole::ReturnNode: return "khaki";
      case NodeRole::PathNode: return "white";
    }
    return "white";
  };
  for (NodeId n = 0; n < g.node_count(); ++n)
    os << "  " << n << " [style=filled fillcolor=" << color(n) << "];\n";
  for (const auto& [x, y, st] : g.edges())
    os << "  " << x << (g.directed() ? " -> " : " -- ") << y << ";\n";
  os << "}\n";
  return os.str();
}

std::string distance_matrix_csv(const StagedGraph& g, Nat max_nodes) {
  if (g.node_count() > max_nodes) {
    std::ostringstream os;
    os << "graph has " << g.node_count() << " nodes; matrix export is capped at " << max_nodes;
    fail(Errc::Size, os.str());
  }
  const auto snap = g.snapshot();
  std::ostringstream os;
  for (NodeId x = 0; x < snap.node_count(); ++x) {
    const auto row = bfs_from(snap, x);
    for (NodeId y = 0; y < snap.node_count(); ++y) {
      if (y) os << ",";
      if (row[y] == kUnreached) os << "inf";
      else os << row[y];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace spokelab
