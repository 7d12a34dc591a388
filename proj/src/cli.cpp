#include "cssg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cssg/automaton.hpp"
#include "cssg/batch.hpp"
#include "cssg/builders.hpp"
#include "cssg/checks.hpp"
#include "cssg/cocycle.hpp"
#include "cssg/io.hpp"
#include "cssg/random.hpp"

namespace cssg::cli {
namespace {

using nlohmann::json;

struct Ctx {
  std::string format = "text";
  bool timing = false;
  std::ostream* out = nullptr;
  std::chrono::steady_clock::time_point t0;
};

using TextFn = std::function<void(std::ostream&, const json&)>;

void default_text(std::ostream& o, const json& rep) {
  for (auto it = rep.begin(); it != rep.end(); ++it) {
    o << it.key() << ": ";
    if (it.value().is_string())
      o << it.value().get<std::string>();
    else
      o << it.value().dump();
    o << "\n";
  }
}

void emit(Ctx& cx, json rep, const TextFn& text = {}) {
  if (cx.timing) {
    auto dt = std::chrono::steady_clock::now() - cx.t0;
    rep["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
  }
  if (cx.format == "json") {
    *cx.out << rep.dump(2) << "\n";
  } else if (text) {
    text(*cx.out, rep);
  } else {
    default_text(*cx.out, rep);
  }
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("parse-error", e.what());
  }
}

json element_as_json(const Element& e) {
  return parse_json_text(element_to_json(e));
}

void element_text(std::ostream& o, const json& elem) {
  for (const auto& r : elem.at("regions")) {
    o << '"' << r.at("src").get<std::string>() << "\" -> \""
      << r.at("dst").get<std::string>() << '"';
    if (r.at("label").is_object())
      o << " | " << r.at("label").at("state").get<std::string>();
    o << "\n";
  }
}

// Options storage shared by all subcommands (each uses its slice).
struct Opts {
  std::string space, automaton, out_file, name = "sft";
  std::string file1, file2, addr, ball = "0";
  int n = 0, pairs = 0, samples = 0, count = 25, maxlen = 8;
  int depth = 5, regions = 4;
  std::uint64_t seed = 0;
  bool parallel = false;
};

SpacePtr resolve_space(const Opts& o, const std::string& elem_hint = "") {
  if (!o.space.empty()) return load_space(o.space, o.automaton);
  if (elem_hint.empty()) fail("bad-request", "no --space given");
  json j = parse_json_text(read_file(elem_hint));
  if (!j.is_object() || !j.contains("space") || !j["space"].is_string())
    fail("bad-request", "cannot infer a space from " + elem_hint +
                            "; pass --space");
  std::filesystem::path p = std::filesystem::path(elem_hint).parent_path() /
                            (j["space"].get<std::string>() + ".json");
  if (!std::filesystem::exists(p))
    fail("bad-request", "space file not found: " + p.string() +
                            "; pass --space");
  return load_space(p.string(), o.automaton);
}

void print_element(Ctx& cx, const Opts& o, const Element& e) {
  std::string text = element_to_json(e);
  if (!o.out_file.empty()) write_file(o.out_file, text);
  if (cx.format == "json")
    *cx.out << text;
  else
    element_text(*cx.out, parse_json_text(text));
}

json css_star_json(const CssStarReport& r) {
  return json{{"splitting", r.splitting},
              {"reaching", r.reaching},
              {"witnesses", r.witnesses},
              {"pass", r.pass()}};
}

std::string css_star_verdict(const CssStarReport& r) {
  if (r.pass()) return "PASS";
  if (!r.splitting && !r.reaching) return "FAIL (both conditions)";
  return r.splitting ? "FAIL (reaching)" : "FAIL (splitting)";
}

json batch_json(const char* counter, const BatchReport& r) {
  return json{{counter, r.samples},
              {"failures", r.failures},
              {"notes", r.notes}};
}

// ---- subcommand bodies; each returns the process exit code ----

int cmd_space_check(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.file1, o.automaton);
  json rep;
  rep["command"] = "space check";
  rep["space"] = sp->name();
  json syms = json::array();
  for (int s = 0; s < sp->num_symbols(); ++s)
    syms.push_back(json{{"name", sp->symbol_name(s)},
                        {"class", sp->type_class(s)},
                        {"finite", sp->finite_type(s)}});
  rep["symbols"] = syms;
  rep["root"] = sp->symbol_name(sp->root_symbol());
  rep["classes"] = sp->num_type_classes();
  rep["decorated"] = sp->decorated();
  json cells = json::array();
  for (const Ball& b : sp->minimal_ball_partition()) cells.push_back(b.str());
  rep["minimal_partition"] = cells;
  CssStarReport css = verify_css_star(sp);
  rep["css_star"] = css_star_json(css);
  std::string verdict = css_star_verdict(css);
  emit(cx, rep, [&](std::ostream& out, const json& r) {
    out << "space: " << r["space"].get<std::string>() << "\n";
    out << "symbols: " << r["symbols"].size() << "  classes: "
        << r["classes"].get<int>() << "\n";
    out << "minimal partition: " << r["minimal_partition"].dump() << "\n";
    out << "FSS*: " << verdict << "\n";
    for (const auto& w : r["css_star"]["witnesses"])
      out << "  " << w.get<std::string>() << "\n";
  });
  return 0;
}

int cmd_sft_build(Ctx& cx, const Opts& o) {
  TransitionMatrix m = load_matrix(o.file1);
  SpacePtr sp = sft_from_matrix(m, o.name);
  std::string text = space_to_json(*sp);
  if (!o.out_file.empty()) write_file(o.out_file, text);
  if (cx.format == "json") {
    *cx.out << text;
  } else {
    *cx.out << "symbols: " << sp->num_symbols() << "\n";
    *cx.out << text;
  }
  (void)cx;
  return 0;
}

int cmd_sft_check(Ctx& cx, const Opts& o) {
  TransitionMatrix m = load_matrix(o.file1);
  validate_matrix(m);
  json rep;
  rep["command"] = "sft check";
  rep["dimension"] = (long long)m.size();
  bool irr = is_irreducible(m);
  rep["irreducible"] = irr;
  rep["two_followed"] = two_followed_symbols(m);
  SpacePtr sp = sft_from_matrix(m, o.name);
  CssStarReport css = verify_css_star(sp);
  rep["css_star"] = css_star_json(css);
  std::string verdict = css_star_verdict(css);
  emit(cx, rep, [&](std::ostream& out, const json& r) {
    out << "dimension: " << r["dimension"].get<long long>() << "\n";
    out << "irreducible: " << (irr ? "yes" : "no") << "\n";
    out << "two-followed symbols: " << r["two_followed"].dump() << "\n";
    out << "FSS*: " << verdict << "\n";
  });
  return 0;
}

int cmd_elem_compose(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  Element a = load_element(o.file1, sp);
  Element b = load_element(o.file2, sp);
  print_element(cx, o, compose(a, b));
  return 0;
}

int cmd_elem_inverse(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  print_element(cx, o, inverse(load_element(o.file1, sp)));
  return 0;
}

int cmd_elem_reduce(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  print_element(cx, o, load_element(o.file1, sp));
  return 0;
}

int cmd_elem_eq(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  Element a = load_element(o.file1, sp);
  Element b = load_element(o.file2, sp);
  bool eq = equals(a, b);
  json rep{{"command", "elem eq"}, {"equal", eq}};
  emit(cx, rep, [&](std::ostream& out, const json&) {
    out << (eq ? "equal" : "distinct") << "\n";
  });
  return eq ? 0 : 1;
}

int cmd_elem_apply(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  Element f = load_element(o.file1, sp);
  Ball img = apply(f, Ball::parse(o.addr));
  json rep{{"command", "elem apply"},
           {"address", o.addr},
           {"image", img.str()}};
  emit(cx, rep, [&](std::ostream& out, const json& r) {
    out << r["image"].get<std::string>() << "\n";
  });
  return 0;
}

int cmd_elem_random(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  Rng rng(o.seed);
  print_element(cx, o, random_element(sp, rng, o.regions, o.depth));
  return 0;
}

int cmd_cocycle_norm(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  long long n2 = cocycle_norm_sq(load_element(o.file1, sp));
  json rep{{"command", "cocycle norm"}, {"norm_sq", n2}};
  emit(cx, rep, [&](std::ostream& out, const json& r) {
    out << r["norm_sq"].get<long long>() << "\n";
  });
  return 0;
}

int cmd_cocycle_vector(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  CocycleVector v = cocycle_vector(load_element(o.file1, sp));
  std::string text = vector_to_json(*sp, v);
  if (cx.format == "json") {
    *cx.out << text;
    return 0;
  }
  for (const auto& entry : parse_json_text(text)) {
    *cx.out << (entry["coeff"].get<long long>() >= 0 ? "+" : "")
            << entry["coeff"].get<long long>() << "  [base \""
            << entry["class"]["base"].get<std::string>() << "\", "
            << entry["class"]["regions"].size() << " regions]\n";
  }
  return 0;
}

int cmd_cocycle_verify(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  BatchReport r = cocycle_identity_batch(
      sp, o.pairs, o.seed, o.parallel ? ExecMode::Parallel : ExecMode::Serial);
  json rep = batch_json("pairs", r);
  rep["command"] = "cocycle verify";
  emit(cx, rep, [&](std::ostream& out, const json&) {
    out << (r.samples - r.failures) << "/" << r.samples << " pass\n";
    for (const auto& n : r.notes) out << "  " << n << "\n";
  });
  return r.pass() ? 0 : 1;
}

json paradox_json(const ParadoxData& d) {
  json cells = json::array(), sub = json::array(), gs = json::array(),
       hs = json::array();
  for (const Ball& c : d.cells) cells.push_back(c.str());
  for (const auto& [a, b] : d.sub) sub.push_back(json{a.str(), b.str()});
  for (const Element& g : d.g) gs.push_back(element_as_json(g));
  for (const Element& h : d.h) hs.push_back(element_as_json(h));
  return json{{"base", d.base.str()}, {"cells", cells}, {"sub", sub},
              {"g", gs},             {"h", hs}};
}

int cmd_paradox_build(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  ParadoxData d = paradox_data(sp);
  json rep = paradox_json(d);
  rep["command"] = "paradox build";
  rep["strata"] = 3 * (long long)d.cells.size();
  emit(cx, rep, [&](std::ostream& out, const json& r) {
    out << "cells: " << r["cells"].dump() << "\n";
    out << "sub: " << r["sub"].dump() << "\n";
    out << "strata: " << r["strata"].get<long long>() << "\n";
  });
  return 0;
}

int cmd_paradox_verify(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  ParadoxData d = paradox_data(sp);
  ParadoxReport r = verify_paradox(d, o.samples, o.seed);
  json rep{{"command", "paradox verify"},
           {"strata", 3 * (long long)d.cells.size()},
           {"samples", r.samples},
           {"violations", r.violations},
           {"merges", r.merges},
           {"notes", r.notes}};
  emit(cx, rep, [&](std::ostream& out, const json& j) {
    out << "strata: " << j["strata"].get<long long>() << "\n";
    out << "samples: " << r.samples << "\n";
    out << "violations: " << r.violations << "\n";
    out << "merges: " << r.merges << "\n";
    for (const auto& n : r.notes) out << "  " << n << "\n";
  });
  return r.violations == 0 ? 0 : 1;
}

json pingpong_json(const PingPongPair& p) {
  return json{{"b1p", p.b1p.str()}, {"b1m", p.b1m.str()},
              {"b2p", p.b2p.str()}, {"b2m", p.b2m.str()},
              {"g", element_as_json(p.g)}, {"h", element_as_json(p.h)}};
}

int cmd_pingpong_build(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  PingPongPair p = pingpong_pair(sp, o.seed);
  json rep = pingpong_json(p);
  rep["command"] = "pingpong build";
  rep["containments"] = pingpong_containments(p);
  emit(cx, rep, [&](std::ostream& out, const json& r) {
    out << "balls: " << r["b1p"].get<std::string>() << " "
        << r["b1m"].get<std::string>() << " " << r["b2p"].get<std::string>()
        << " " << r["b2m"].get<std::string>() << "\n";
    out << "containments: "
        << (r["containments"].get<bool>() ? "hold" : "VIOLATED") << "\n";
  });
  return 0;
}

int cmd_pingpong_verify(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  PingPongPair p = pingpong_pair(sp, o.seed);
  bool cont = pingpong_containments(p);
  WordSweep w = pingpong_word_sweep(p, o.maxlen);
  json rep{{"command", "pingpong verify"}, {"maxlen", o.maxlen},
           {"containments", cont},         {"words", w.words},
           {"top_length", w.top_length},   {"identities", w.identities}};
  emit(cx, rep, [&](std::ostream& out, const json&) {
    out << "containments: " << (cont ? "hold" : "VIOLATED") << "\n";
    out << "words: " << w.words << "  at maxlen: " << w.top_length << "\n";
    out << "identities: " << w.identities << "\n";
  });
  return (cont && w.identities == 0) ? 0 : 1;
}

int cmd_icc(Ctx& cx, const Opts& o) {
  SpacePtr sp = resolve_space(o, o.file1);
  Element f = load_element(o.file1, sp);
  std::vector<Element> cs = icc_conjugates(f, o.count);
  json arr = json::array();
  for (const Element& c : cs) arr.push_back(element_as_json(c));
  json rep{{"command", "icc conjugates"},
           {"count", (long long)cs.size()},
           {"conjugates", arr}};
  emit(cx, rep, [&](std::ostream& out, const json&) {
    out << "distinct conjugates: " << cs.size() << "\n";
  });
  return 0;
}

int cmd_malnormal(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  Ball b = Ball::parse(o.ball);
  MalnormalReport r = malnormal_probe(sp, b, o.samples, o.seed);
  json rep{{"command", "malnormal test"},
           {"ball", o.ball},
           {"witness", element_as_json(malnormal_witness(sp, b))},
           {"samples", r.samples},
           {"counterexamples", r.counterexamples}};
  emit(cx, rep, [&](std::ostream& out, const json&) {
    out << "samples: " << r.samples << "\n";
    out << "counterexamples: " << r.counterexamples << "\n";
  });
  return r.counterexamples == 0 ? 0 : 1;
}

int cmd_probe_centralizer(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  ProbeReport r = centralizer_probe(sp, Ball::parse(o.ball), o.samples, o.seed);
  json rep{{"command", "probe centralizer"},
           {"ball", o.ball},
           {"samples", r.samples},
           {"failures", r.failures},
           {"notes", r.notes}};
  emit(cx, rep, [&](std::ostream& out, const json&) {
    out << (r.samples - r.failures) << "/" << r.samples << " pass\n";
    for (const auto& n : r.notes) out << "  " << n << "\n";
  });
  return r.failures == 0 ? 0 : 1;
}

int cmd_probe_finite_support(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  FiniteSupportReport r = finite_support_probe(sp, o.samples, o.seed);
  json rep{{"command", "probe finite-support"},
           {"samples", r.samples},
           {"failures", r.failures},
           {"trivial", r.trivial},
           {"classes", r.classes},
           {"notes", r.notes}};
  emit(cx, rep, [&](std::ostream& out, const json&) {
    if (r.trivial)
      out << "finite-support subgroup: trivial\n";
    else
      out << "finite-support classes: " << r.classes << "\n";
    out << (r.samples - r.failures) << "/" << r.samples << " pass\n";
    for (const auto& n : r.notes) out << "  " << n << "\n";
  });
  return r.failures == 0 ? 0 : 1;
}

int cmd_fuzz(Ctx& cx, const Opts& o) {
  SpacePtr sp = load_space(o.space, o.automaton);
  BatchReport r = fuzz_group_laws(
      sp, o.n, o.seed, o.parallel ? ExecMode::Parallel : ExecMode::Serial);
  json rep = batch_json("n", r);
  rep["command"] = "fuzz group-laws";
  emit(cx, rep, [&](std::ostream& out, const json&) {
    out << (r.samples - r.failures) << "/" << r.samples << " pass\n";
    for (const auto& n : r.notes) out << "  " << n << "\n";
  });
  return r.pass() ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Ctx cx;
  cx.out = &out;
  cx.t0 = std::chrono::steady_clock::now();
  Opts o;
  int rc = 0;

  CLI::App app{"exact arithmetic in similarity-structure groups"};
  app.name("cssg");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cx.format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", cx.timing, "append wall time to reports");

  auto leaf = [&](CLI::App* parent, const char* name, const char* desc,
                  std::function<int(Ctx&, const Opts&)> fn) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    s->callback([&, fn] { rc = fn(cx, o); });
    return s;
  };
  auto group = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->require_subcommand(1);
    s->fallthrough();
    return s;
  };
  auto opt_space = [&](CLI::App* s, bool required) {
    auto* op = s->add_option("--space", o.space, "space file");
    if (required) op->required();
    s->add_option("--automaton", o.automaton, "decorating automaton file");
  };
  auto opt_seed = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "64-bit seed")->required();
  };

  CLI::App* g_space = group("space", "space presentations");
  CLI::App* c = leaf(g_space, "check", "validate and summarize a space",
                     cmd_space_check);
  c->add_option("file", o.file1, "space file")->required();
  c->add_option("--automaton", o.automaton, "decorating automaton file");

  CLI::App* g_sft = group("sft", "transition-matrix spaces");
  c = leaf(g_sft, "build", "presentation from a 0/1 matrix", cmd_sft_build);
  c->add_option("file", o.file1, "matrix file")->required();
  c->add_option("-o,--out", o.out_file, "write the presentation here");
  c->add_option("--name", o.name, "space name");
  c = leaf(g_sft, "check", "irreducibility and follower checks", cmd_sft_check);
  c->add_option("file", o.file1, "matrix file")->required();
  c->add_option("--name", o.name, "space name");

  CLI::App* g_elem = group("elem", "element arithmetic");
  c = leaf(g_elem, "compose", "A after B (B applied first)", cmd_elem_compose);
  c->add_option("A", o.file1, "element file")->required();
  c->add_option("B", o.file2, "element file")->required();
  c->add_option("-o,--out", o.out_file, "write the result here");
  opt_space(c, false);
  c = leaf(g_elem, "inverse", "inverse element", cmd_elem_inverse);
  c->add_option("A", o.file1, "element file")->required();
  c->add_option("-o,--out", o.out_file, "write the result here");
  opt_space(c, false);
  c = leaf(g_elem, "reduce", "maximal-partition normal form", cmd_elem_reduce);
  c->add_option("A", o.file1, "element file")->required();
  c->add_option("-o,--out", o.out_file, "write the result here");
  opt_space(c, false);
  c = leaf(g_elem, "eq", "exact equality of two elements", cmd_elem_eq);
  c->add_option("A", o.file1, "element file")->required();
  c->add_option("B", o.file2, "element file")->required();
  opt_space(c, false);
  c = leaf(g_elem, "apply", "image of a ball address", cmd_elem_apply);
  c->add_option("A", o.file1, "element file")->required();
  c->add_option("address", o.addr, "ball address (child indices)")->required();
  opt_space(c, false);
  c = leaf(g_elem, "random", "seeded random element", cmd_elem_random);
  opt_space(c, true);
  c->add_option("--depth", o.depth, "ball-walk depth bound");
  c->add_option("--regions", o.regions, "complexity: primitive moves composed");
  opt_seed(c);
  c->add_option("-o,--out", o.out_file, "write the element here");

  CLI::App* g_coc = group("cocycle", "zipper cocycle");
  c = leaf(g_coc, "norm", "squared cocycle norm", cmd_cocycle_norm);
  c->add_option("A", o.file1, "element file")->required();
  opt_space(c, false);
  c = leaf(g_coc, "vector", "cocycle vector b(g)", cmd_cocycle_vector);
  c->add_option("A", o.file1, "element file")->required();
  opt_space(c, false);
  c = leaf(g_coc, "verify", "cocycle identity on random pairs",
           cmd_cocycle_verify);
  opt_space(c, true);
  c->add_option("--pairs", o.pairs, "number of pairs")->required();
  opt_seed(c);
  c->add_flag("--parallel", o.parallel, "run the batch with OpenMP");

  CLI::App* g_par = group("paradox", "paradoxical decomposition");
  c = leaf(g_par, "build", "strata and translating elements",
           cmd_paradox_build);
  opt_space(c, true);
  c = leaf(g_par, "verify", "sampled translate identities", cmd_paradox_verify);
  opt_space(c, true);
  c->add_option("--samples", o.samples, "samples per stratum")->required();
  opt_seed(c);

  CLI::App* g_pp = group("pingpong", "free subgroup pairs");
  c = leaf(g_pp, "build", "a ping-pong pair", cmd_pingpong_build);
  opt_space(c, true);
  opt_seed(c);
  c = leaf(g_pp, "verify", "containments plus a reduced-word sweep",
           cmd_pingpong_verify);
  opt_space(c, true);
  opt_seed(c);
  c->add_option("--maxlen", o.maxlen, "word length bound");

  CLI::App* g_icc = group("icc", "conjugacy class growth");
  c = leaf(g_icc, "conjugates", "pairwise distinct conjugates", cmd_icc);
  c->add_option("A", o.file1, "element file")->required();
  c->add_option("--count", o.count, "how many conjugates");
  opt_space(c, false);

  CLI::App* g_mal = group("malnormal", "stabilizer malnormality");
  c = leaf(g_mal, "test", "falsification probe at a ball", cmd_malnormal);
  opt_space(c, true);
  c->add_option("--ball", o.ball, "ball address");
  c->add_option("--samples", o.samples, "number of samples")->required();
  opt_seed(c);

  CLI::App* g_probe = group("probe", "structure probes");
  c = leaf(g_probe, "centralizer", "stabilizer commutation identities",
           cmd_probe_centralizer);
  opt_space(c, true);
  c->add_option("--ball", o.ball, "ball address");
  c->add_option("--samples", o.samples, "number of samples")->required();
  opt_seed(c);
  c = leaf(g_probe, "finite-support", "finite-support subgroup probe",
           cmd_probe_finite_support);
  opt_space(c, true);
  c->add_option("--samples", o.samples, "number of samples")->required();
  opt_seed(c);

  CLI::App* g_fuzz = group("fuzz", "randomized law checks");
  c = leaf(g_fuzz, "group-laws", "associativity, inverses, identity",
           cmd_fuzz);
  opt_space(c, true);
  c->add_option("--n", o.n, "number of triples")->required();
  opt_seed(c);
  c->add_flag("--parallel", o.parallel, "run the batch with OpenMP");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace cssg::cli
