// Drives the installed CLI end to end: build artifacts, verify suites,
// decode reports, exports, determinism, and the exit-code contract.
// argv[1] = path to the spokelab binary, argv[2] = scratch directory.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok" : "FAIL") << " - " << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: test_cli <spokelab-binary> <scratch-dir>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path dir = argv[2];
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto at = [&](const std::string& name) { return (dir / name).string(); };

  // A small from-above trace.
  {
    std::ofstream t(at("t.txt"));
    t << "kind=above complete=1 domain=2\n"
      << "x 0 s 0 v 3\nx 0 s 2 v 1\nx 1 s 0 v 2\nx 1 s 4 v 0\n";
  }

  check(run(bin + " build --shape elongated --family periodic:2 --trace " + at("t.txt") +
            " --stages 50 --out " + at("g.graph") + " --layout " + at("g.layout")) == 0,
        "elongated periodic build succeeds");
  check(run(bin + " verify --suite all --graph " + at("g.graph") + " --layout " +
            at("g.layout") + " --bound 2 --report " + at("verify.json")) == 0,
        "verify all suites passes with the countdown bound");
  check(fs::exists(at("verify.json")), "verify writes its JSON report");

  check(run(bin + " build --shape standard --family explicit:" + at("missing.txt") +
            " --out " + at("x.graph") + " --layout " + at("x.layout")) == 2,
        "missing family file exits 2");
  {
    std::ofstream f(at("bad.txt"));
    f << "1 2\n";  // not strictly decreasing
  }
  check(run(bin + " build --shape standard --family explicit:" + at("bad.txt") +
            " --out " + at("x.graph") + " --layout " + at("x.layout")) == 2,
        "malformed family file exits 2");
  {
    std::ofstream f(at("empty.txt"));
  }
  check(run(bin + " build --shape standard --family explicit:" + at("empty.txt") +
            " --out " + at("x.graph") + " --layout " + at("x.layout")) == 2,
        "empty family file exits 2");

  // Determinism: identical commands write byte-identical artifacts.
  check(run(bin + " build --shape singledegree --trace " + at("t.txt") +
            " --stages 20 --out " + at("s1.graph") + " --layout " + at("s1.layout")) == 0,
        "singledegree build succeeds");
  check(run(bin + " build --shape singledegree --trace " + at("t.txt") +
            " --stages 20 --out " + at("s2.graph") + " --layout " + at("s2.layout")) == 0,
        "second singledegree build succeeds");
  check(slurp(at("s1.graph")) == slurp(at("s2.graph")) &&
            slurp(at("s1.layout")) == slurp(at("s2.layout")),
        "repeated builds are byte-identical");

  check(run(bin + " verify --suite equivariance --copies 4 --graph " + at("s1.graph") +
            " --layout " + at("s1.layout") + " --report " + at("eq1.json")) == 0,
        "equivariance suite passes on the singledegree build");
  check(run(bin + " verify --suite equivariance --copies 4 --graph " + at("s1.graph") +
            " --layout " + at("s1.layout") + " --report " + at("eq2.json")) == 0,
        "equivariance suite reruns");
  check(slurp(at("eq1.json")) == slurp(at("eq2.json")),
        "verification reports are byte-identical across runs");

  // Corrupt the graph file (drop an edge line): verification must fail with 1.
  {
    std::ifstream in(at("s1.graph"));
    std::ofstream out(at("corrupt.graph"));
    std::string line;
    bool dropped = false;
    while (std::getline(in, line)) {
      if (!dropped && line[0] == 'e') {
        dropped = true;
        continue;
      }
      out << line << "\n";
    }
  }
  check(run(bin + " verify --suite metric --graph " + at("corrupt.graph") + " --layout " +
            at("s1.layout")) == 1,
        "corrupted graph fails verification with exit 1");

  check(run(bin + " verify --suite nonsense --graph " + at("s1.graph") + " --layout " +
            at("s1.layout")) == 2,
        "unknown suite exits 2");

  // Decode and exports.
  check(run(bin + " decode --all --graph " + at("s1.graph") + " --layout " +
            at("s1.layout") + " --report " + at("decode.json")) == 0,
        "decode --all agrees with BFS");
  check(run(bin + " export --dot --graph " + at("g.graph") + " --layout " + at("g.layout") +
            " --out " + at("g.dot")) == 0,
        "dot export succeeds");
  check(slurp(at("g.dot")).find("graph") == 0, "dot output looks like DOT");
  check(run(bin + " export --matrix --graph " + at("s1.graph") + " --layout " +
            at("s1.layout") + " --out " + at("m.csv")) == 0,
        "matrix export succeeds");
  check(run(bin + " export --matrix --max-nodes 3 --graph " + at("s1.graph") +
            " --layout " + at("s1.layout") + " --out " + at("m2.csv")) == 2,
        "oversized matrix export exits 2");

  // Trace tools.
  check(run(bin + " trace-tools classify --trace " + at("t.txt")) == 0, "classify runs");
  check(run(bin + " trace-tools countdown --trace " + at("t.txt") + " --bound 2 --out " +
            at("c.txt")) == 0,
        "countdown runs");
  check(run(bin + " trace-tools dual --trace " + at("t.txt") + " --out " + at("d.txt")) == 0,
        "dual runs");
  {
    std::ofstream s(at("s.txt"));
    s << "x0=2\ngrow 5\ngrow 3\ngrow 5\n";
  }
  check(run(bin + " trace-tools encode-range --stream " + at("s.txt") + " --out " +
            at("r.txt")) == 0,
        "range encoder runs");
  {
    std::ofstream r(at("reg.txt"));
    r << "e 0 prog constant 5\ne 1 prog staircase-down 3 1\ne 2 prog tracking\n";
  }
  check(run(bin + " trace-tools one-complete --registry " + at("reg.txt") +
            " --stages 100 --max-input 5 --out " + at("f.txt")) == 0,
        "one-complete runs");
  check(run(bin + " trace-tools witness --kind nocollapse --registry " + at("reg.txt") +
            " --n 2 --stages 60 --out " + at("w.txt")) == 0,
        "nocollapse witness defeats the registry");

  // The directed shape end to end.
  check(run(bin + " build --shape directed --family alldec:2,3,4 --trace " + at("t.txt") +
            " --stages 30 --out " + at("dg.graph") + " --layout " + at("dg.layout")) == 0,
        "directed build succeeds");
  check(run(bin + " verify --suite all --bound 4 --graph " + at("dg.graph") + " --layout " +
            at("dg.layout")) == 0,
        "directed verify passes");

  std::cout << (failures == 0 ? "ALL OK" : "FAILURES") << "\n";
  return failures == 0 ? 0 : 1;
}
