#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dagpart/cli/commands.hpp"
#include "dagpart/cli/two_pass.hpp"
#include "dagpart/errors.hpp"
#include "dagpart/graph_io.hpp"
#include "dagpart/instances.hpp"
#include "oracles.hpp"

using namespace dagpart;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("dagpart_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

const Scratch& scratch() {
  static const Scratch s;
  return s;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string write_graph_file(const std::string& name, const WeightedDigraph& g) {
  const std::string path = scratch() / name;
  save_graph(path, g);
  return path;
}

std::string write_text(const std::string& name, const std::string& text) {
  const std::string path = scratch() / name;
  std::ofstream(path) << text;
  return path;
}

// Bidirectional block edges under {0,3},{1,2}.
WeightedDigraph two_edges() { return oracle::make_graph({1, 1, 1, 1}, {{0, 1, 1}, {2, 3, 1}}); }

}  // namespace

TEST_CASE("exit code mapping") {
  std::ostringstream err;
  CHECK(cli::guarded([] { return 0; }, err) == 0);
  CHECK(cli::guarded([]() -> int { throw ParseError("x", 3); }, err) == 2);
  CHECK(cli::guarded([]() -> int { throw ConfigError("x"); }, err) == 2);
  CHECK(cli::guarded([]() -> int { throw CycleError("x", {}); }, err) == 2);
  CHECK(cli::guarded([]() -> int { throw InfeasibleError("x"); }, err) == 1);
  CHECK(cli::guarded([]() -> int { throw ConstructionInfeasibleError("x"); }, err) == 1);
  CHECK(cli::guarded([]() -> int { throw InvariantViolation("x"); }, err) == 3);
  CHECK(cli::guarded([]() -> int { throw std::logic_error("x"); }, err) == 3);
  CHECK(err.str().find("(line 3)") != std::string::npos);
}

TEST_CASE("input errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"nope"}).code == 2);
  CHECK(invoke({"partition", scratch() / "missing.graph", "-k", "2"}).code == 2);
  const std::string bad = write_text("bad.graph", "3 2 11\n1 2 1\n1 x\n1\n");
  const auto r = invoke({"partition", bad, "-k", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
  const std::string cyclic = write_text("cyclic.graph", "2 2 11\n1 1 1\n1 0 1\n");
  const auto c = invoke({"partition", cyclic, "-k", "2"});
  CHECK(c.code == 2);
  CHECK(c.err.find("cycl") != std::string::npos);
  const std::string g = write_graph_file("chain.graph", oracle::chain({1, 1, 1, 1}, {1, 1, 1}));
  CHECK(invoke({"partition", g, "-k", "2", "--heuristic", "xx"}).code == 2);
  CHECK(invoke({"partition", g, "-k", "2", "--restarts", "2", "--budget-ms", "5"}).code == 2);
  CHECK(invoke({"verify", g, write_text("short.part", "0\n1\n"), "-k", "2"}).code == 2);
  CHECK(invoke({"gen", "three-partition", "-o", scratch() / "t.graph", "--values", "1,2,3", "--threshold", "6"}).code ==
        2);
}

TEST_CASE("heavy node is infeasible") {
  const std::string g = write_graph_file("heavy.graph", oracle::chain({100, 1, 1, 1}, {1, 1, 1}));
  const auto r = invoke({"partition", g, "-k", "2", "-e", "0.03"});
  CHECK(r.code == 1);
  CHECK(r.err.find("infeasible") != std::string::npos);
  CHECK(invoke({"exact", g, "-k", "2"}).code == 1);
}

TEST_CASE("partition with a fixed restart count is deterministic") {
  const std::string g = write_graph_file("layered.graph", gen_layered({.n = 60, .seed = 5}).graph);
  const auto run = [&](const std::string& tag) {
    const auto r = invoke({"partition", g, "-k", "4", "-e", "0.03", "--heuristic", "fm", "--restarts", "100", "--seed",
                        "7", "-o", scratch() / ("det" + tag + ".part")});
    REQUIRE(r.code == 0);
    auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 1);
    lines[0].erase("wall_ms");
    return std::make_pair(lines[0], slurp(scratch() / ("det" + tag + ".part")));
  };
  const auto a = run("a");
  const auto b = run("b");
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  CHECK(a.first["restarts"] == 100);
  CHECK(a.first["budget"] == json{{"restarts", 100}});
  CHECK(a.first["feasible"] == true);
  CHECK(a.first["instance"] == "layered");
}

TEST_CASE("all heuristics write one report and one file each, consistent with verify") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 6; ++t) {
    const WeightedDigraph graph = oracle::random_dag(rng, 30, 0.15);
    const std::string g = write_graph_file("all" + std::to_string(t) + ".graph", graph);
    const std::string k = std::to_string(2 + t % 3);
    const std::string out = scratch() / ("all" + std::to_string(t) + ".part");
    const auto r = invoke({"partition", g, "-k", k, "-e", "0.3", "--heuristic", "all", "--budget-ms", "5", "-o", out});
    REQUIRE(r.code == 0);
    const auto reports = json_lines(r.out);
    REQUIRE(reports.size() == 4);
    const char* ids[] = {"sm", "am", "gm", "fm"};
    for (int i = 0; i < 4; ++i) {
      CHECK(reports[i]["heuristic"] == ids[i]);
      CHECK(reports[i]["budget"] == json{{"ms", 5.0}});
      const std::string part = out + "." + ids[i];
      REQUIRE(fs::exists(part));
      const auto v = invoke({"verify", g, part, "-k", k, "-e", "0.3", "--json"});
      const json verdict = json::parse(v.out);
      CHECK(reports[i]["feasible"] == (verdict["verdict"] == "feasible"));
      CHECK(reports[i]["best_cut"] == verdict["cut"]);
      CHECK(reports[i]["block_weights"] == verdict["block_weights"]);
      CHECK(v.code == 0);
    }
  }
}

TEST_CASE("report file option") {
  const std::string g = write_graph_file("rep.graph", oracle::chain({1, 1, 1, 1}, {1, 1, 1}));
  const auto r = invoke({"partition", g, "-k", "2", "-e", "0", "--report", scratch() / "rep.jsonl", "--instance", "toy"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto lines = json_lines(slurp(scratch() / "rep.jsonl"));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["instance"] == "toy");
  CHECK(lines[0]["best_cut"] == 1);
  CHECK(lines[0]["l_max"] == 2);
}

TEST_CASE("verify verdicts") {
  const std::string g = write_graph_file("two.graph", two_edges());
  const auto cyclic = invoke({"verify", g, write_text("cyc.part", "0\n1\n1\n0\n"), "-k", "2", "-e", "0"});
  CHECK(cyclic.code == 4);
  CHECK(cyclic.out.find("acyclic no\n") != std::string::npos);
  CHECK(cyclic.out.find("verdict cyclic\n") != std::string::npos);
  CHECK((cyclic.out.find("cycle 0 1\n") != std::string::npos || cyclic.out.find("cycle 1 0\n") != std::string::npos));
  CHECK(cyclic.out.find("cut 2\n") != std::string::npos);

  const auto ok = invoke({"verify", g, write_text("ok.part", "0\n1\n0\n1\n"), "-k", "2", "-e", "0"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "cut 2\nl_max 2\nblock_weights 2 2\nbalanced yes\nacyclic yes\nverdict feasible\n");

  const std::string one = write_text("one.part", "0\n0\n0\n0\n");
  const auto k1 = invoke({"verify", g, one, "-k", "1"});
  CHECK(k1.code == 0);
  CHECK(k1.out.find("cut 0\n") != std::string::npos);
  CHECK(invoke({"verify", g, one, "-k", "1", "--l-max", "3"}).code == 1);
  CHECK(invoke({"verify", g, one, "-k", "1", "--l-max", "4"}).code == 0);

  const auto heavy = invoke({"verify", g, one, "-k", "2", "-e", "0"});
  CHECK(heavy.code == 1);
  CHECK(heavy.out.find("overloaded 0\n") != std::string::npos);
  CHECK(heavy.out.find("empty 1\n") != std::string::npos);
  CHECK(heavy.out.find("verdict imbalanced\n") != std::string::npos);
  CHECK(invoke({"verify", g, one, "-k", "2", "--l-max", "4", "--allow-empty"}).code == 0);
  CHECK(invoke({"verify", g, write_text("range.part", "0\n1\n2\n0\n"), "-k", "2"}).code == 2);
}

TEST_CASE("toy two-pass grouping") {
  // Six unit kernels, two per program, two programs per gang.
  const WeightedDigraph g = oracle::make_graph(
      {1, 1, 1, 1, 1, 1}, {{0, 1, 3}, {1, 2, 1}, {2, 3, 3}, {3, 4, 1}, {4, 5, 3}, {0, 2, 1}, {3, 5, 1}});
  cli::TwoPassConfig cfg;
  cfg.program_memory = 2;
  cfg.pe_count = 2;
  for (Heuristic h : kAllHeuristics) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const cli::TwoPassResult r = cli::run_two_pass(g, cfg, h, Budget::restarts(3), seed, "toy");
      CHECK(r.gangs_acyclic);
      CHECK(r.pass1.feasible);
      CHECK(r.pass2.feasible);
      CHECK(r.two_level_cut <= r.one_level_cut);
      for (NodeId v = 0; v < 6; ++v)
        for (const Edge& e : g.out_edges(v)) {
          CHECK(r.gang_of[r.program_of[v]] <= r.gang_of[r.program_of[e.target]]);
        }
    }
  }
  const std::string path = write_graph_file("toy.graph", g);
  const auto r = invoke({"two-pass", path, "--program-memory", "2", "--pes", "2", "--heuristic", "all", "--restarts", "2",
                      "--output-prefix", scratch() / "toy"});
  REQUIRE(r.code == 0);
  const auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0]["method"] == "naive");
  for (const json& j : lines) {
    CHECK(j["gangs_acyclic"] == true);
    CHECK(j["two_level_cut"] <= j["one_level_cut"]);
  }
  CHECK(fs::exists(scratch() / "toy.fm.gangs"));
  CHECK(fs::exists(scratch() / "toy.naive.programs"));
}

TEST_CASE("csv headers are stable") {
  const std::string g = write_graph_file("ex.graph", oracle::chain({1, 2, 3, 4}, {1, 1, 1}));
  const auto ex = invoke({"exact", g, "-k", "2", "-e", "0.5"});
  CHECK(ex.code == 0);
  CHECK(first_line(ex.out) == "instance,k,epsilon,opt_cut,proven,explored");
  CHECK(ex.out.find("\nex,2,0.5,1,1,") != std::string::npos);
  CHECK(invoke({"exact", g, "-k", "2", "-e", "0.5", "--no-header"}).out.rfind("ex,2,0.5,1,1,", 0) == 0);

  const std::string dir = scratch() / "suite";
  REQUIRE(invoke({"gen", "suite", "--out-dir", dir, "--per-combination", "1"}).code == 0);
  const auto manifest = json_lines(slurp(dir + "/manifest.jsonl"));
  REQUIRE(manifest.size() == 8);
  CHECK(manifest[0]["path"] == manifest[0]["id"].get<std::string>() + ".graph");
  const auto t1 = invoke({"bench-table1", "--manifest", dir + "/manifest.jsonl", "--k", "2", "--epsilon", "0.5",
                       "--restarts", "2", "--threads", "1", "--summary", scratch() / "sum.csv", "--details",
                       scratch() / "det.csv", "--exact-cache", scratch() / "cache.jsonl"});
  REQUIRE(t1.code == 0);
  CHECK(first_line(t1.out) == "k,epsilon,sm,am,gm,fm");
  CHECK(first_line(slurp(scratch() / "sum.csv")) ==
        "k,epsilon,heuristic,instances,mean_gap_percent,min_gap_percent,zero_opt_instances,zero_opt_hits,"
        "infeasible,heuristic_failures");
  CHECK(first_line(slurp(scratch() / "det.csv")) == "instance,n,m,k,epsilon,opt_cut,heuristic,found,cut,restarts");
  CHECK(json_lines(slurp(scratch() / "cache.jsonl")).size() == 8);
  // A second run is served from the cache and reproduces the table.
  const auto again = invoke({"bench-table1", "--manifest", dir + "/manifest.jsonl", "--k", "2", "--epsilon", "0.5",
                          "--restarts", "2", "--threads", "1", "--exact-cache", scratch() / "cache.jsonl"});
  CHECK(again.out == t1.out);
  CHECK(again.err.find("0 exact solves") != std::string::npos);

  const auto sc = invoke({"bench-scaling", "--exponents", "6,7", "--passes", "2"});
  REQUIRE(sc.code == 0);
  CHECK(first_line(sc.out) ==
        "exponent,n,m,heuristic,passes,mean_ms_per_pass,mean_construct_ms,mean_cut,best_cut,relative_cut_reduction_vs_sm");
  std::istringstream rows(sc.out);
  std::string line;
  int count = 0;
  while (std::getline(rows, line)) ++count;
  CHECK(count == 1 + 2 * 4);
}

TEST_CASE("gen writes parseable graphs and manifest lines") {
  const std::string man = scratch() / "gen.jsonl";
  std::ofstream(man, std::ios::trunc);
  CHECK(invoke({"gen", "layered", "-o", scratch() / "l.graph", "--n", "30", "--seed", "4", "--manifest", man}).code == 0);
  CHECK(invoke({"gen", "rgg", "-o", scratch() / "r.graph", "--exponent", "8", "--manifest", man}).code == 0);
  CHECK(invoke({"gen", "subset-sum", "-o", scratch() / "s.graph", "--values", "1,2,3", "--manifest", man}).code == 0);
  CHECK(invoke({"gen", "pipeline", "-o", scratch() / "p.graph", "--manifest", man, "--id", "pipe"}).code == 0);
  const auto lines = json_lines(slurp(man));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0]["kind"] == "layered");
  CHECK(lines[0]["n"] == 30);
  CHECK(lines[2]["n"] == 5);
  CHECK(lines[2]["m"] == 6);
  CHECK(lines[3]["id"] == "pipe");
  CHECK(lines[3]["m"] == 93);
  CHECK(load_graph(scratch() / "l.graph") == gen_layered({.n = 30, .seed = 4}).graph);
  CHECK(load_graph(scratch() / "p.graph") == gen_pipeline_stand_in());
}

TEST_CASE("installed binary exit codes and thread variable") {
  const char* bin = std::getenv("DAGPART_BIN");
  if (!bin) {
    MESSAGE("DAGPART_BIN not set; skipping subprocess checks");
    return;
  }
  const auto status = [&](const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" + std::string(bin) + "' " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(raw));
    return WEXITSTATUS(raw);
  };
  const std::string g = write_graph_file("bin.graph", two_edges());
  const std::string heavy = write_graph_file("binheavy.graph", oracle::chain({100, 1, 1, 1}, {1, 1, 1}));
  CHECK(status("partition " + g + " -k 2") == 0);
  CHECK(status("partition " + heavy + " -k 2") == 1);
  CHECK(status("partition " + write_text("bin.bad", "zz\n") + " -k 2") == 2);
  CHECK(status("verify " + g + " " + write_text("bin.part", "0\n1\n1\n0\n") + " -k 2 -e 0") == 4);
  CHECK(status("--help") == 0);
  const std::string dir = scratch() / "suite";
  if (!fs::exists(dir + "/manifest.jsonl")) invoke({"gen", "suite", "--out-dir", dir, "--per-combination", "1"});
  const std::string t1 = "bench-table1 --manifest " + dir + "/manifest.jsonl --k 2 --epsilon 0.5 --restarts 1";
  CHECK(status(t1, "DAGPART_THREADS=abc") == 2);
  CHECK(status(t1, "DAGPART_THREADS=0") == 2);
  CHECK(status(t1, "DAGPART_THREADS=2") == 0);
}
