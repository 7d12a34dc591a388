#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cssg/automaton.hpp"
#include "cssg/cli.hpp"
#include "cssg/cocycle.hpp"
#include "cssg/io.hpp"
#include "oracles.hpp"

using namespace cssg;
using nlohmann::json;

namespace {

struct CliResult {
  int rc;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int rc = cli::run(std::move(args), o, e);
  return {rc, o.str(), e.str()};
}

}  // namespace

TEST_CASE("automaton JSON round trip") {
  auto a = load_automaton(orc::fx("c2-top.json"));
  auto b = automaton_from_json(automaton_to_json(*a));
  REQUIRE(b->degree() == a->degree());
  REQUIRE(b->num_states() == a->num_states());
  CHECK(b->identity() == a->identity());
  for (int q = 0; q < a->num_states(); ++q) {
    CHECK(b->state_name(q) == a->state_name(q));
    CHECK(b->inverse(q) == a->inverse(q));
    for (int i = 0; i < a->degree(); ++i) {
      CHECK(b->perm(q, i) == a->perm(q, i));
      CHECK(b->section(q, i) == a->section(q, i));
    }
    for (int p = 0; p < a->num_states(); ++p)
      CHECK(b->product(p, q) == a->product(p, q));
  }

  // top swap and mirror swap differ exactly in the sections of t
  auto m = load_automaton(orc::fx("c2-mirror.json"));
  int ta = a->state_by_name("t"), tm = m->state_by_name("t");
  CHECK(a->perm(ta, 0) == m->perm(tm, 0));
  CHECK(a->section(ta, 0) != m->section(tm, 0));
}

TEST_CASE("matrix and vector JSON") {
  TransitionMatrix m = load_matrix(orc::fx("golden-mean-matrix.json"));
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK_THROWS_WITH_AS(matrix_from_json("nonsense"), doctest::Contains("parse-error"),
                       Error);
  CHECK_THROWS_WITH_AS(matrix_from_json("{\"a\": 1}"),
                       doctest::Contains("bad-presentation"), Error);

  auto bin = orc::space("binary");
  Element g0 = load_element(orc::fx("g0.json"), bin);
  json v = json::parse(vector_to_json(*bin, cocycle_vector(g0)));
  REQUIRE(v.is_array());
  REQUIRE(v.size() == 2);
  std::vector<long long> coeffs;
  for (const auto& entry : v) {
    CHECK(entry.contains("class"));
    CHECK(entry["class"].contains("base"));
    CHECK(entry["class"].contains("regions"));
    coeffs.push_back(entry["coeff"].get<long long>());
  }
  std::sort(coeffs.begin(), coeffs.end());
  CHECK(coeffs == std::vector<long long>{-1, 1});
}

TEST_CASE("malformed inputs carry their error codes") {
  CHECK_THROWS_WITH_AS(read_file("/nonexistent/nowhere.json"),
                       doctest::Contains("io-error"), Error);
  CHECK_THROWS_WITH_AS(space_from_json("{"), doctest::Contains("parse-error"), Error);
  CHECK_THROWS_WITH_AS(space_from_json("[1]"), doctest::Contains("bad-presentation"),
                       Error);
  CHECK_THROWS_WITH_AS(
      space_from_json(R"({"symbols": ["x", "x"], "children": {"x": ["x", "x"]},
                          "root": "x", "terminals": []})"),
      doctest::Contains("bad-presentation"), Error);
  CHECK_THROWS_WITH_AS(
      space_from_json(R"({"symbols": ["x"], "children": {"x": ["y", "x"]},
                          "root": "x", "terminals": []})"),
      doctest::Contains("bad-presentation"), Error);
  CHECK_THROWS_WITH_AS(automaton_from_json("[]"), doctest::Contains("bad-automaton"),
                       Error);
}

TEST_CASE("space check transcripts") {
  auto r = run_cli({"space", "check", orc::fx("binary.json")});
  CHECK(r.rc == 0);
  CHECK(r.err.empty());
  CHECK(r.out ==
        "space: binary\n"
        "symbols: 1  classes: 1\n"
        "minimal partition: [\"0\",\"1\"]\n"
        "FSS*: PASS\n");

  auto g = run_cli({"space", "check", orc::fx("golden-mean.json")});
  CHECK(g.rc == 0);
  CHECK(g.out ==
        "space: golden-mean\n"
        "symbols: 3  classes: 2\n"
        "minimal partition: [\"0\",\"1\"]\n"
        "FSS*: PASS\n");

  auto q = run_cli({"space", "check", orc::fx("qaut.json")});
  CHECK(q.rc == 0);
  CHECK(q.out ==
        "space: qaut\n"
        "symbols: 2  classes: 2\n"
        "minimal partition: [\"0\",\"1\",\"2\"]\n"
        "FSS*: PASS\n");

  auto h = run_cli({"space", "check", orc::fx("houghton-H2.json")});
  CHECK(h.rc == 0);  // reporting command: the verdict is the report
  CHECK(h.out ==
        "space: houghton-H2\n"
        "symbols: 4  classes: 4\n"
        "minimal partition: [\"0\",\"1\"]\n"
        "FSS*: FAIL (both conditions)\n"
        "  symbol x1 reaches no symbol with two infinite children\n"
        "  symbol x2 reaches no symbol with two infinite children\n"
        "  class of x1 unreachable from x2\n"
        "  class of x2 unreachable from x1\n");
}

TEST_CASE("element arithmetic transcripts") {
  std::string g0 = orc::fx("g0.json"), s = orc::fx("s.json");

  auto c = run_cli({"elem", "compose", g0, g0});
  CHECK(c.rc == 0);
  CHECK(c.out ==
        "\"000\" -> \"0\"\n"
        "\"001\" -> \"10\"\n"
        "\"01\" -> \"110\"\n"
        "\"1\" -> \"111\"\n");

  auto i = run_cli({"elem", "inverse", g0});
  CHECK(i.rc == 0);
  CHECK(i.out ==
        "\"0\" -> \"00\"\n"
        "\"10\" -> \"01\"\n"
        "\"11\" -> \"1\"\n");

  auto a = run_cli({"elem", "apply", g0, "011"});
  CHECK(a.rc == 0);
  CHECK(a.out == "101\n");

  auto shallow = run_cli({"elem", "apply", g0, "0"});
  CHECK(shallow.rc == 2);
  CHECK(shallow.err.find("insufficient-depth") != std::string::npos);

  auto eq = run_cli({"elem", "eq", g0, g0});
  CHECK(eq.rc == 0);
  CHECK(eq.out == "equal\n");
  auto ne = run_cli({"elem", "eq", g0, s});
  CHECK(ne.rc == 1);
  CHECK(ne.out == "distinct\n");

  // reduction merges a split identity back to the root region
  std::string unred = "/tmp/cssg_unreduced.json";
  write_file(unred, R"({"space": "binary", "regions": [
    {"src": "0", "dst": "0", "label": "canonical"},
    {"src": "1", "dst": "1", "label": "canonical"}]})");
  auto red = run_cli({"elem", "reduce", unred, "--space", orc::fx("binary.json")});
  CHECK(red.rc == 0);
  std::string root_str = Ball().str();
  CHECK(red.out == "\"" + root_str + "\" -> \"" + root_str + "\"\n");

  // -o writes a loadable file
  std::string outf = "/tmp/cssg_composed.json";
  auto co = run_cli({"elem", "compose", g0, g0, "-o", outf});
  CHECK(co.rc == 0);
  auto bin = orc::space("binary");
  Element gg = load_element(outf, bin);
  CHECK(equals(gg, compose(load_element(g0, bin), load_element(g0, bin))));
}

TEST_CASE("cocycle transcripts") {
  auto n = run_cli({"cocycle", "norm", orc::fx("g0.json")});
  CHECK(n.rc == 0);
  CHECK(n.out == "2\n");
  auto z = run_cli({"cocycle", "norm", orc::fx("s.json")});
  CHECK(z.rc == 0);
  CHECK(z.out == "0\n");

  auto v = run_cli({"cocycle", "vector", orc::fx("g0.json")});
  CHECK(v.rc == 0);
  CHECK(v.out ==
        "-1  [base \"0\", 1 regions]\n"
        "+1  [base \"0\", 2 regions]\n");

  auto ver = run_cli({"cocycle", "verify", "--space", orc::fx("binary.json"),
                      "--pairs", "25", "--seed", "1"});
  CHECK(ver.rc == 0);
  CHECK(ver.out == "25/25 pass\n");
}

TEST_CASE("shift and verification transcripts") {
  auto s = run_cli({"sft", "check", orc::fx("golden-mean-matrix.json")});
  CHECK(s.rc == 0);
  CHECK(s.out ==
        "dimension: 2\n"
        "irreducible: yes\n"
        "two-followed symbols: [0]\n"
        "FSS*: PASS\n");

  auto f = run_cli({"fuzz", "group-laws", "--space", orc::fx("binary.json"), "--n",
                    "20", "--seed", "1"});
  CHECK(f.rc == 0);
  CHECK(f.out == "20/20 pass\n");

  auto pp = run_cli({"pingpong", "verify", "--space", orc::fx("binary.json"),
                     "--seed", "7", "--maxlen", "4"});
  CHECK(pp.rc == 0);
  CHECK(pp.out ==
        "containments: hold\n"
        "words: 160  at maxlen: 108\n"
        "identities: 0\n");

  auto pv = run_cli({"paradox", "verify", "--space", orc::fx("binary.json"),
                     "--samples", "5", "--seed", "7"});
  CHECK(pv.rc == 0);
  CHECK(pv.out.find("strata: 6\n") != std::string::npos);
  CHECK(pv.out.find("violations: 0\n") != std::string::npos);
  CHECK(pv.out.find("merges: ") != std::string::npos);

  auto m = run_cli({"malnormal", "test", "--space", orc::fx("binary.json"),
                    "--ball", "0", "--samples", "50", "--seed", "2"});
  CHECK(m.rc == 0);
  CHECK(m.out == "samples: 50\ncounterexamples: 0\n");

  auto pc = run_cli({"probe", "centralizer", "--space", orc::fx("binary.json"),
                     "--ball", "0", "--samples", "50", "--seed", "3"});
  CHECK(pc.rc == 0);
  CHECK(pc.out == "50/50 pass\n");

  auto pf = run_cli({"probe", "finite-support", "--space", orc::fx("binary.json"),
                     "--samples", "50", "--seed", "5"});
  CHECK(pf.rc == 0);
  CHECK(pf.out == "finite-support subgroup: trivial\n50/50 pass\n");

  auto pq = run_cli({"probe", "finite-support", "--space", orc::fx("qaut.json"),
                     "--samples", "50", "--seed", "5"});
  CHECK(pq.rc == 0);
  CHECK(pq.out == "finite-support classes: 1\n50/50 pass\n");
}

TEST_CASE("JSON format reports parse and carry the verdicts") {
  auto r = run_cli({"--format", "json", "space", "check", orc::fx("binary.json")});
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  CHECK(j["space"] == "binary");
  CHECK(j["classes"] == 1);
  CHECK(j["decorated"] == false);
  CHECK(j["css_star"]["pass"] == true);

  auto pv = run_cli({"--format", "json", "paradox", "verify", "--space",
                     orc::fx("binary.json"), "--samples", "5", "--seed", "7"});
  json pj = json::parse(pv.out);
  CHECK(pj["violations"] == 0);
  CHECK(pj["merges"].is_number());
  CHECK(pj["samples"].get<long long>() > 0);

  auto t = run_cli({"--format", "json", "--timing", "cocycle", "norm",
                    orc::fx("g0.json")});
  json tj = json::parse(t.out);
  CHECK(tj.contains("wall_ms"));
  CHECK(tj["norm_sq"] == 2);
}

TEST_CASE("reports are byte deterministic for a fixed seed") {
  std::vector<std::string> rand_cmd{"elem", "random", "--space",
                                    orc::fx("binary.json"), "--seed", "9"};
  auto r1 = run_cli(rand_cmd);
  auto r2 = run_cli(rand_cmd);
  CHECK(r1.rc == 0);
  CHECK(r1.out == r2.out);
  CHECK_FALSE(r1.out.empty());

  std::vector<std::string> pv_cmd{"paradox",   "verify", "--space",
                                  orc::fx("golden-mean.json"), "--samples", "10",
                                  "--seed",    "3"};
  auto p1 = run_cli(pv_cmd);
  auto p2 = run_cli(pv_cmd);
  CHECK(p1.rc == 0);
  CHECK(p1.out == p2.out);

  // different seed, different element
  auto r3 = run_cli({"elem", "random", "--space", orc::fx("binary.json"),
                     "--seed", "10"});
  CHECK(r3.out != r1.out);
}

TEST_CASE("CLI error paths") {
  auto miss = run_cli({"space", "check", "/nonexistent/nowhere.json"});
  CHECK(miss.rc == 2);
  CHECK(miss.err.find("io-error") != std::string::npos);

  auto mism = run_cli({"elem", "eq", orc::fx("g0.json"), orc::fx("s.json"),
                       "--space", orc::fx("golden-mean.json")});
  CHECK(mism.rc == 2);
  CHECK(mism.err.find("space-mismatch") != std::string::npos);

  auto usage = run_cli({"no-such-command"});
  CHECK(usage.rc != 0);
}
