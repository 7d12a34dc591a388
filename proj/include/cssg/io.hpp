// JSON file formats: spaces, automata, elements, matrices, cocycle vectors.
#pragma once

#include <memory>
#include <string>

#include "cssg/checks.hpp"
#include "cssg/cocycle.hpp"
#include "cssg/element.hpp"

namespace cssg {

class GroupAutomaton;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// {"symbols": [..], "children": {"sym": [..]}, "root": "sym",
//  "terminals": [..]}; the terminals list must name exactly the symbols
// with no children.
std::string space_to_json(const Space& sp);
SpacePtr space_from_json(const std::string& text, const std::string& name = "",
                         std::shared_ptr<const GroupAutomaton> aut = nullptr);
// The space takes its name from the file stem.  A nonempty automaton path
// decorates the space.
SpacePtr load_space(const std::string& path, const std::string& automaton_path = "");

// {"degree": d, "states": [..], "identity": "e", "perm": {"q": [..]},
//  "section": {"q": [..]}, "product": {"p": [..]}, "inverse": {"q": ".."}}
std::string automaton_to_json(const GroupAutomaton& a);
std::shared_ptr<const GroupAutomaton> automaton_from_json(const std::string& text);
std::shared_ptr<const GroupAutomaton> load_automaton(const std::string& path);

// {"space": "name", "regions": [{"src": "01", "dst": "10",
//  "label": "canonical" | {"state": "q"}}]}
std::string element_to_json(const Element& e);
Element element_from_json(const std::string& text, const SpacePtr& sp);
Element load_element(const std::string& path, const SpacePtr& sp);

// JSON array of 0/1 rows.
std::string matrix_to_json(const TransitionMatrix& m);
TransitionMatrix matrix_from_json(const std::string& text);
TransitionMatrix load_matrix(const std::string& path);

// [{"class": {"base": "..", "regions": [..]}, "coeff": n}, ..]
std::string vector_to_json(const Space& sp, const CocycleVector& v);

}  // namespace cssg
