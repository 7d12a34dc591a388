#include "cssg/automaton.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace cssg {

GroupAutomaton::GroupAutomaton(Tables t) : t_(std::move(t)) {
  int n = (int)t_.states.size();
  if (n == 0) fail("bad-automaton", "no states");
  {
    std::set<std::string> seen(t_.states.begin(), t_.states.end());
    if ((int)seen.size() != n) fail("bad-automaton", "duplicate state names");
  }
  if (t_.identity < 0 || t_.identity >= n) fail("bad-automaton", "identity out of range");
  if ((int)t_.perm.size() != n || (int)t_.section.size() != n ||
      (int)t_.product.size() != n || (int)t_.inverse.size() != n)
    fail("bad-automaton", "table size mismatch");
  degree_ = (int)t_.perm[0].size();
  if (degree_ <= 0) fail("bad-automaton", "degree must be positive");

  perm_inv_.assign(n, std::vector<int>(degree_, -1));
  for (int q = 0; q < n; ++q) {
    if ((int)t_.perm[q].size() != degree_ || (int)t_.section[q].size() != degree_)
      fail("bad-automaton", "ragged perm/section row");
    std::vector<bool> hit(degree_, false);
    for (int u = 0; u < degree_; ++u) {
      int v = t_.perm[q][u];
      if (v < 0 || v >= degree_ || hit[v])
        fail("bad-automaton", "perm row of " + t_.states[q] + " is not a permutation");
      hit[v] = true;
      perm_inv_[q][v] = u;
      int s = t_.section[q][u];
      if (s < 0 || s >= n) fail("bad-automaton", "section out of range");
    }
    if ((int)t_.product[q].size() != n) fail("bad-automaton", "ragged product row");
    for (int p = 0; p < n; ++p)
      if (t_.product[q][p] < 0 || t_.product[q][p] >= n)
        fail("bad-automaton", "product out of range");
    if (t_.inverse[q] < 0 || t_.inverse[q] >= n)
      fail("bad-automaton", "inverse out of range");
  }

  // Group axioms on the table.
  int e = t_.identity;
  for (int q = 0; q < n; ++q) {
    if (t_.product[q][e] != q || t_.product[e][q] != q)
      fail("bad-automaton", "identity is not neutral");
    if (t_.product[q][t_.inverse[q]] != e || t_.product[t_.inverse[q]][q] != e)
      fail("bad-automaton", "inverse table wrong for " + t_.states[q]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t_.product[t_.product[a][b]][c] != t_.product[a][t_.product[b][c]])
          fail("bad-automaton", "product table not associative");

  // Identity state must carry trivial wreath data.
  for (int u = 0; u < degree_; ++u)
    if (t_.perm[e][u] != u || t_.section[e][u] != e)
      fail("bad-automaton", "identity state acts nontrivially");

  // Wreath recursion: perm_{pq} = perm_p . perm_q and
  // section(pq, u) = section(p, perm_q(u)) * section(q, u).
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      int pq = t_.product[p][q];
      for (int u = 0; u < degree_; ++u) {
        if (t_.perm[pq][u] != t_.perm[p][t_.perm[q][u]])
          fail("bad-automaton", "wreath permutation identity fails");
        if (t_.section[pq][u] !=
            t_.product[t_.section[p][t_.perm[q][u]]][t_.section[q][u]])
          fail("bad-automaton", "wreath section identity fails");
      }
    }

  // Faithfulness: the largest state set closed under "trivial perm, sections
  // stay inside" must be {identity}; otherwise some state acts as the
  // identity homeomorphism while being labelled nontrivially.
  std::vector<bool> triv(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int q = 0; q < n; ++q) {
      if (!triv[q]) continue;
      bool ok = true;
      for (int u = 0; u < degree_ && ok; ++u)
        ok = t_.perm[q][u] == u && triv[t_.section[q][u]];
      if (!ok) {
        triv[q] = false;
        changed = true;
      }
    }
  }
  for (int q = 0; q < n; ++q)
    if (triv[q] && q != e)
      fail("bad-automaton", "state " + t_.states[q] + " acts trivially");

  // Level-1 injectivity (implied by faithfulness, checked directly so the
  // merge step can rely on state_with being single-valued).
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> seen;
  for (int q = 0; q < n; ++q) {
    auto key = std::make_pair(t_.perm[q], t_.section[q]);
    if (!seen.emplace(key, q).second)
      fail("bad-automaton", "two states share first-level data");
  }
}

int GroupAutomaton::state_by_name(const std::string& n) const {
  for (int q = 0; q < num_states(); ++q)
    if (t_.states[q] == n) return q;
  fail("bad-automaton", "unknown state " + n);
}

std::optional<int> GroupAutomaton::state_with(const std::vector<int>& perm,
                                              const std::vector<int>& sections) const {
  for (int q = 0; q < num_states(); ++q)
    if (t_.perm[q] == perm && t_.section[q] == sections) return q;
  return std::nullopt;
}

std::vector<int> GroupAutomaton::act(int q, const std::vector<int>& word) const {
  std::vector<int> out;
  out.reserve(word.size());
  int r = q;
  for (int u : word) {
    out.push_back(t_.perm[r][u]);
    r = t_.section[r][u];
  }
  return out;
}

int GroupAutomaton::restrict_along(int q, const std::vector<int>& src_word) const {
  int r = q;
  for (int u : src_word) r = t_.section[r][u];
  return r;
}

}  // namespace cssg
