// Finite group automata decorating uniform d-ary spaces.
//
// States are group elements; each state q carries a permutation of the d child
// slots and a section state per slot, acting by q(u w) = perm_q(u) section(q,u)(w).
// The product table composes right-to-left (product(p,q) acts as q then p), so
// the wreath recursion reads section(pq, u) = section(p, perm_q(u)) * section(q, u).
#pragma once

#include <optional>

#include "cssg/base.hpp"

namespace cssg {

class GroupAutomaton {
 public:
  struct Tables {
    std::vector<std::string> states;
    int identity = 0;
    std::vector<std::vector<int>> perm;      // [state][child] -> child
    std::vector<std::vector<int>> section;   // [state][child] -> state
    std::vector<std::vector<int>> product;   // [p][q] -> pq (q applied first)
    std::vector<int> inverse;                // [q] -> q^-1
  };

  // Validates eagerly: permutation rows, group axioms on the product table,
  // the wreath recursion, triviality of the identity state, and faithfulness
  // (no nontrivially-labelled state may act as the identity map; otherwise
  // reduced forms would not be unique).  Errors: "bad-automaton".
  explicit GroupAutomaton(Tables t);

  int degree() const { return degree_; }
  int num_states() const { return (int)t_.states.size(); }
  int identity() const { return t_.identity; }
  const std::string& state_name(int q) const { return t_.states[q]; }
  int state_by_name(const std::string& n) const;

  int perm(int q, int child) const { return t_.perm[q][child]; }
  int perm_inv(int q, int child) const { return perm_inv_[q][child]; }
  int section(int q, int child) const { return t_.section[q][child]; }
  int product(int p, int q) const { return t_.product[p][q]; }
  int inverse(int q) const { return t_.inverse[q]; }

  // State realising the given first-level data, if any.  Used by the normal
  // form merge step; unique by the faithfulness validation.
  std::optional<int> state_with(const std::vector<int>& perm,
                                const std::vector<int>& sections) const;

  // Image of a relative address under state q.
  std::vector<int> act(int q, const std::vector<int>& word) const;
  // State of q's restriction along (the preimage of) nothing: walk down the
  // *source* address: returns the section state at the end of `src_word`.
  int restrict_along(int q, const std::vector<int>& src_word) const;

 private:
  Tables t_;
  int degree_ = 0;
  std::vector<std::vector<int>> perm_inv_;
};

}  // namespace cssg
