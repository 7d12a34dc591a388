#include "cssg/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cssg/automaton.hpp"

namespace cssg {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("io-error", "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("io-error", "cannot open for writing: " + path);
  out << content;
  if (!out) fail("io-error", "write failed: " + path);
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("parse-error", e.what());
  }
}

std::string require_string(const json& j, const char* key, const char* code) {
  if (!j.contains(key) || !j[key].is_string())
    fail(code, std::string("missing or non-string field \"") + key + "\"");
  return j[key].get<std::string>();
}

const json& require_array(const json& j, const char* key, const char* code) {
  if (!j.contains(key) || !j[key].is_array())
    fail(code, std::string("missing or non-array field \"") + key + "\"");
  return j[key];
}

const json& require_object(const json& j, const char* key, const char* code) {
  if (!j.contains(key) || !j[key].is_object())
    fail(code, std::string("missing or non-object field \"") + key + "\"");
  return j[key];
}

std::vector<std::string> string_list(const json& arr, const char* code) {
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) fail(code, "expected a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

json region_to_json(const Space& sp, const Region& r) {
  json jr;
  jr["src"] = r.src.str();
  jr["dst"] = r.dst.str();
  if (r.lab.canonical())
    jr["label"] = "canonical";
  else
    jr["label"] = json{{"state", sp.automaton()->state_name(r.lab.state)}};
  return jr;
}

Region region_from_json(const Space& sp, const json& jr) {
  Region r;
  r.src = Ball::parse(require_string(jr, "src", "bad-request"));
  r.dst = Ball::parse(require_string(jr, "dst", "bad-request"));
  if (!jr.contains("label")) fail("bad-request", "region missing \"label\"");
  const json& jl = jr["label"];
  if (jl.is_string()) {
    if (jl.get<std::string>() != "canonical")
      fail("bad-request", "label must be \"canonical\" or {\"state\": ..}");
    r.lab = Label::can();
  } else if (jl.is_object()) {
    std::string st = require_string(jl, "state", "bad-request");
    if (!sp.decorated())
      fail("label-mismatch", "state label on an undecorated space");
    r.lab = Label::st(sp.automaton()->state_by_name(st));
  } else {
    fail("bad-request", "label must be \"canonical\" or {\"state\": ..}");
  }
  return r;
}

}  // namespace

std::string space_to_json(const Space& sp) {
  json j;
  json syms = json::array();
  for (int s = 0; s < sp.num_symbols(); ++s) syms.push_back(sp.symbol_name(s));
  j["symbols"] = syms;
  json ch = json::object();
  json terms = json::array();
  for (int s = 0; s < sp.num_symbols(); ++s) {
    if (sp.terminal(s)) {
      terms.push_back(sp.symbol_name(s));
      continue;
    }
    json row = json::array();
    for (int c : sp.children_of(s)) row.push_back(sp.symbol_name(c));
    ch[sp.symbol_name(s)] = row;
  }
  j["children"] = ch;
  j["root"] = sp.symbol_name(sp.root_symbol());
  j["terminals"] = terms;
  return j.dump(2) + "\n";
}

SpacePtr space_from_json(const std::string& text, const std::string& name,
                         std::shared_ptr<const GroupAutomaton> aut) {
  json j = parse_json(text);
  if (!j.is_object()) fail("bad-presentation", "space file must be an object");
  SpacePresentation pres;
  pres.symbols = string_list(require_array(j, "symbols", "bad-presentation"),
                             "bad-presentation");
  std::map<std::string, int> id;
  for (int s = 0; s < (int)pres.symbols.size(); ++s) {
    if (!id.emplace(pres.symbols[s], s).second)
      fail("bad-presentation", "duplicate symbol: " + pres.symbols[s]);
  }
  auto lookup = [&](const std::string& n) {
    auto it = id.find(n);
    if (it == id.end()) fail("bad-presentation", "unknown symbol: " + n);
    return it->second;
  };
  const json& ch = require_object(j, "children", "bad-presentation");
  pres.children.resize(pres.symbols.size());
  for (auto it = ch.begin(); it != ch.end(); ++it) {
    int s = lookup(it.key());
    if (!it.value().is_array())
      fail("bad-presentation", "children of " + it.key() + " must be a list");
    for (const std::string& c : string_list(it.value(), "bad-presentation"))
      pres.children[s].push_back(lookup(c));
  }
  pres.root = lookup(require_string(j, "root", "bad-presentation"));
  std::set<std::string> declared;
  for (const std::string& t :
       string_list(require_array(j, "terminals", "bad-presentation"),
                   "bad-presentation")) {
    lookup(t);
    declared.insert(t);
  }
  for (int s = 0; s < (int)pres.symbols.size(); ++s) {
    bool is_term = pres.children[s].empty();
    bool listed = declared.count(pres.symbols[s]) > 0;
    if (is_term != listed)
      fail("bad-presentation",
           "terminals list disagrees with children for: " + pres.symbols[s]);
  }
  pres.name = name;
  return std::make_shared<Space>(std::move(pres), std::move(aut));
}

SpacePtr load_space(const std::string& path, const std::string& automaton_path) {
  std::shared_ptr<const GroupAutomaton> aut;
  if (!automaton_path.empty()) aut = load_automaton(automaton_path);
  std::string stem = std::filesystem::path(path).stem().string();
  return space_from_json(read_file(path), stem, std::move(aut));
}

std::string automaton_to_json(const GroupAutomaton& a) {
  json j;
  j["degree"] = a.degree();
  json states = json::array();
  for (int q = 0; q < a.num_states(); ++q) states.push_back(a.state_name(q));
  j["states"] = states;
  j["identity"] = a.state_name(a.identity());
  json perm = json::object(), section = json::object(), product = json::object(),
       inverse = json::object();
  for (int q = 0; q < a.num_states(); ++q) {
    json prow = json::array(), srow = json::array(), mrow = json::array();
    for (int c = 0; c < a.degree(); ++c) {
      prow.push_back(a.perm(q, c));
      srow.push_back(a.state_name(a.section(q, c)));
    }
    for (int r = 0; r < a.num_states(); ++r)
      mrow.push_back(a.state_name(a.product(q, r)));
    perm[a.state_name(q)] = prow;
    section[a.state_name(q)] = srow;
    product[a.state_name(q)] = mrow;
    inverse[a.state_name(q)] = a.state_name(a.inverse(q));
  }
  j["perm"] = perm;
  j["section"] = section;
  j["product"] = product;
  j["inverse"] = inverse;
  return j.dump(2) + "\n";
}

std::shared_ptr<const GroupAutomaton> automaton_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) fail("bad-automaton", "automaton file must be an object");
  GroupAutomaton::Tables t;
  t.states = string_list(require_array(j, "states", "bad-automaton"),
                         "bad-automaton");
  std::map<std::string, int> id;
  for (int q = 0; q < (int)t.states.size(); ++q) {
    if (!id.emplace(t.states[q], q).second)
      fail("bad-automaton", "duplicate state: " + t.states[q]);
  }
  auto lookup = [&](const std::string& n) {
    auto it = id.find(n);
    if (it == id.end()) fail("bad-automaton", "unknown state: " + n);
    return it->second;
  };
  if (!j.contains("degree") || !j["degree"].is_number_integer())
    fail("bad-automaton", "missing or non-integer field \"degree\"");
  int degree = j["degree"].get<int>();
  if (degree < 1) fail("bad-automaton", "degree must be positive");
  t.identity = lookup(require_string(j, "identity", "bad-automaton"));
  const json& perm = require_object(j, "perm", "bad-automaton");
  const json& section = require_object(j, "section", "bad-automaton");
  const json& product = require_object(j, "product", "bad-automaton");
  const json& inverse = require_object(j, "inverse", "bad-automaton");
  int n = (int)t.states.size();
  t.perm.assign(n, {});
  t.section.assign(n, {});
  t.product.assign(n, {});
  t.inverse.assign(n, 0);
  for (int q = 0; q < n; ++q) {
    const std::string& nm = t.states[q];
    if (!perm.contains(nm) || !perm[nm].is_array() ||
        (int)perm[nm].size() != degree)
      fail("bad-automaton", "perm row for " + nm + " must list degree entries");
    for (const auto& v : perm[nm]) {
      if (!v.is_number_integer())
        fail("bad-automaton", "perm entries must be integers");
      t.perm[q].push_back(v.get<int>());
    }
    if (!section.contains(nm) || !section[nm].is_array() ||
        (int)section[nm].size() != degree)
      fail("bad-automaton",
           "section row for " + nm + " must list degree entries");
    for (const std::string& s : string_list(section[nm], "bad-automaton"))
      t.section[q].push_back(lookup(s));
    if (!product.contains(nm) || !product[nm].is_array() ||
        (int)product[nm].size() != n)
      fail("bad-automaton",
           "product row for " + nm + " must list one entry per state");
    for (const std::string& s : string_list(product[nm], "bad-automaton"))
      t.product[q].push_back(lookup(s));
    if (!inverse.contains(nm) || !inverse[nm].is_string())
      fail("bad-automaton", "inverse entry for " + nm + " must be a state");
    t.inverse[q] = lookup(inverse[nm].get<std::string>());
  }
  return std::make_shared<GroupAutomaton>(std::move(t));
}

std::shared_ptr<const GroupAutomaton> load_automaton(const std::string& path) {
  return automaton_from_json(read_file(path));
}

std::string element_to_json(const Element& e) {
  json j;
  j["space"] = e.space()->name();
  json regions = json::array();
  for (const Region& r : e.regions())
    regions.push_back(region_to_json(*e.space(), r));
  j["regions"] = regions;
  return j.dump(2) + "\n";
}

Element element_from_json(const std::string& text, const SpacePtr& sp) {
  json j = parse_json(text);
  if (!j.is_object()) fail("bad-request", "element file must be an object");
  std::string nm = require_string(j, "space", "bad-request");
  if (nm != sp->name())
    fail("space-mismatch",
         "element is over \"" + nm + "\", not \"" + sp->name() + "\"");
  std::vector<Region> regions;
  for (const json& jr : require_array(j, "regions", "bad-request")) {
    if (!jr.is_object()) fail("bad-request", "regions must be objects");
    regions.push_back(region_from_json(*sp, jr));
  }
  return from_regions(sp, std::move(regions));
}

Element load_element(const std::string& path, const SpacePtr& sp) {
  return element_from_json(read_file(path), sp);
}

std::string matrix_to_json(const TransitionMatrix& m) {
  json j = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (int v : row) r.push_back(v);
    j.push_back(r);
  }
  return j.dump() + "\n";
}

TransitionMatrix matrix_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_array()) fail("bad-presentation", "matrix file must be an array");
  TransitionMatrix m;
  for (const json& jr : j) {
    if (!jr.is_array()) fail("bad-presentation", "matrix rows must be arrays");
    std::vector<int> row;
    for (const auto& v : jr) {
      if (!v.is_number_integer())
        fail("bad-presentation", "matrix entries must be integers");
      row.push_back(v.get<int>());
    }
    m.push_back(std::move(row));
  }
  return m;
}

TransitionMatrix load_matrix(const std::string& path) {
  return matrix_from_json(read_file(path));
}

std::string vector_to_json(const Space& sp, const CocycleVector& v) {
  json j = json::array();
  for (const auto& [cls, coeff] : v) {
    json jc;
    jc["base"] = cls.base.str();
    json regions = json::array();
    for (const Region& r : cls.regions) regions.push_back(region_to_json(sp, r));
    jc["regions"] = regions;
    j.push_back(json{{"class", jc}, {"coeff", coeff}});
  }
  return j.dump(2) + "\n";
}

}  // namespace cssg
