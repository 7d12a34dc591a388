// Shared primitives: error type, ball addresses, ordering conventions.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cssg {

// Every documented failure mode surfaces as an Error with a stable `code`
// (short kebab-case tag used by the CLI) and a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

// A ball is the set of ends through one vertex of the presentation tree,
// addressed by the child-index path from the root.  The empty address is the
// root ball (all of X); it is representable but excluded from proper-ball
// counts everywhere.
struct Ball {
  std::vector<int> ix;

  Ball() = default;
  explicit Ball(std::vector<int> v) : ix(std::move(v)) {}

  size_t len() const { return ix.size(); }
  bool is_root() const { return ix.empty(); }

  Ball child(int i) const {
    Ball b(*this);
    b.ix.push_back(i);
    return b;
  }
  Ball parent() const {
    Ball b(*this);
    b.ix.pop_back();
    return b;
  }
  // Concatenation: this ball's subball at relative address `suffix`.
  Ball descend(const std::vector<int>& suffix) const {
    Ball b(*this);
    b.ix.insert(b.ix.end(), suffix.begin(), suffix.end());
    return b;
  }
  // Relative address of `sub` inside this ball; pre: is_prefix_of(sub).
  std::vector<int> suffix_of(const Ball& sub) const {
    return std::vector<int>(sub.ix.begin() + ix.size(), sub.ix.end());
  }

  bool is_prefix_of(const Ball& other) const {
    if (ix.size() > other.ix.size()) return false;
    return std::equal(ix.begin(), ix.end(), other.ix.begin());
  }
  bool is_strict_prefix_of(const Ball& other) const {
    return ix.size() < other.ix.size() && is_prefix_of(other);
  }
  bool comparable(const Ball& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }
  bool disjoint(const Ball& other) const { return !comparable(other); }

  bool operator==(const Ball& o) const { return ix == o.ix; }
  bool operator!=(const Ball& o) const { return ix != o.ix; }
  // The ball order: a prefix precedes its extensions, otherwise child-index
  // order at the first difference.  Plain vector comparison does exactly this.
  bool operator<(const Ball& o) const { return ix < o.ix; }

  // Text form, one character per index: 0-9 then a-z.  Degrees above 36 have
  // no text form and are rejected at parse time.
  std::string str() const;
  static Ball parse(const std::string& s);
};

// Breadth-first order: by depth, then by the ball order.  Used wherever a
// construction asks for the "leftmost" ball of some kind.
inline bool bfs_less(const Ball& a, const Ball& b) {
  if (a.len() != b.len()) return a.len() < b.len();
  return a.ix < b.ix;
}

}  // namespace cssg
