#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cssg/checks.hpp"
#include "cssg/io.hpp"
#include "oracles.hpp"

using namespace cssg;

namespace {

// Strong connectivity by boolean matrix powers: i reaches j within n steps.
bool irreducible_by_powers(const TransitionMatrix& m) {
  int n = (int)m.size();
  std::vector<std::vector<char>> acc(n, std::vector<char>(n, 0));
  std::vector<std::vector<char>> pw(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pw[i][j] = acc[i][j] = m[i][j] != 0;
  for (int k = 2; k <= n; ++k) {
    std::vector<std::vector<char>> nx(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (pw[i][l])
          for (int j = 0; j < n; ++j)
            if (m[l][j]) nx[i][j] = 1;
    pw = nx;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (pw[i][j]) acc[i][j] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!acc[i][j]) return false;
  return true;
}

TransitionMatrix from_bits(int n, unsigned bits) {
  TransitionMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = (bits >> (i * n + j)) & 1;
  return m;
}

}  // namespace

TEST_CASE("matrix validation") {
  TransitionMatrix good{{1, 1}, {1, 0}};
  CHECK_NOTHROW(validate_matrix(good));
  CHECK_THROWS_WITH_AS(validate_matrix(TransitionMatrix{}),
                       doctest::Contains("bad-presentation"), Error);
  CHECK_THROWS_WITH_AS(validate_matrix(TransitionMatrix{{1, 1}, {1}}),
                       doctest::Contains("bad-presentation"), Error);
  CHECK_THROWS_WITH_AS(validate_matrix(TransitionMatrix{{1, 2}, {1, 0}}),
                       doctest::Contains("bad-presentation"), Error);
  CHECK_THROWS_WITH_AS(sft_from_matrix(TransitionMatrix{{1, 1}, {0, 0}}, "dead"),
                       doctest::Contains("dead-symbol"), Error);
}

TEST_CASE("golden-mean matrix and its vertex shift") {
  TransitionMatrix m = load_matrix(orc::fx("golden-mean-matrix.json"));
  REQUIRE(m == TransitionMatrix{{1, 1}, {1, 0}});
  CHECK(is_irreducible(m));
  CHECK(two_followed_symbols(m) == std::vector<int>{0});

  SpacePtr sft = sft_from_matrix(m, "gm-sft");
  CHECK(sft->num_symbols() == 3);  // fresh root plus the two shift symbols
  CHECK(sft->num_type_classes() == 2);
  CHECK(verify_css_star(sft).pass());

  // same presentation shape as the hand-written fixture
  auto gm = orc::space("golden-mean");
  CHECK(orc::classes_naive(*sft) == orc::classes_naive(*gm));
}

TEST_CASE("irreducibility agrees with the matrix-power definition") {
  for (unsigned bits = 0; bits < 16; ++bits) {
    TransitionMatrix m = from_bits(2, bits);
    CHECK(is_irreducible(m) == irreducible_by_powers(m));
  }
  for (unsigned bits = 0; bits < 512; ++bits) {
    TransitionMatrix m = from_bits(3, bits);
    CHECK(is_irreducible(m) == irreducible_by_powers(m));
  }
  for (int n : {4, 5}) {
    for (int t = 0; t < 200; ++t) {
      Rng rng(mix_seed(1000 + n, t));
      TransitionMatrix m(n, std::vector<int>(n, 0));
      for (auto& row : m)
        for (auto& v : row) v = rng.coin() ? 1 : 0;
      CHECK(is_irreducible(m) == irreducible_by_powers(m));
    }
  }
}

TEST_CASE("two-followed symbols are the heavy rows") {
  for (int t = 0; t < 100; ++t) {
    Rng rng(mix_seed(1111, t));
    int n = 2 + rng.below(5);
    TransitionMatrix m(n, std::vector<int>(n, 0));
    for (auto& row : m)
      for (auto& v : row) v = rng.coin() ? 1 : 0;
    std::vector<int> heavy;
    for (int i = 0; i < n; ++i)
      if (std::count(m[i].begin(), m[i].end(), 1) >= 2) heavy.push_back(i);
    CHECK(two_followed_symbols(m) == heavy);
  }
}

TEST_CASE("branching and reaching verdicts per space") {
  CHECK(verify_css_star(orc::space("binary")).pass());
  CHECK(verify_css_star(orc::space("golden-mean")).pass());
  CHECK(verify_css_star(orc::space("qaut")).pass());
  CHECK(verify_css_star(orc::space("vdr-2-3")).pass());

  CssStarReport hh = verify_css_star(orc::space("houghton-H2"));
  CHECK_FALSE(hh.splitting);
  CHECK_FALSE(hh.reaching);
  REQUIRE(hh.witnesses.size() == 4);
  CHECK(hh.witnesses[0] == "symbol x1 reaches no symbol with two infinite children");
  CHECK(hh.witnesses[1] == "symbol x2 reaches no symbol with two infinite children");
  CHECK(hh.witnesses[2] == "class of x1 unreachable from x2");
  CHECK(hh.witnesses[3] == "class of x2 unreachable from x1");
}

TEST_CASE("random irreducible branching matrices give passing shifts") {
  for (int t = 0; t < 50; ++t) {
    Rng rng(mix_seed(1222, t));
    TransitionMatrix m = random_irreducible_matrix(rng, 6);
    CHECK_NOTHROW(validate_matrix(m));
    CHECK(m.size() >= 2);
    CHECK(m.size() <= 6);
    CHECK(is_irreducible(m));
    CHECK(irreducible_by_powers(m));
    CHECK_FALSE(two_followed_symbols(m).empty());
    CHECK(verify_css_star(sft_from_matrix(m, "rand-sft")).pass());
  }
}

TEST_CASE("centralizer probe finds no violations") {
  ProbeReport r = centralizer_probe(orc::space("binary"), orc::B("0"), 100, 3);
  CHECK(r.samples == 100);
  CHECK(r.failures == 0);
  CHECK(r.notes.empty());

  ProbeReport rg = centralizer_probe(orc::space("golden-mean"), orc::B("0"), 50, 8);
  CHECK(rg.failures == 0);

  CHECK_THROWS_WITH_AS(centralizer_probe(orc::space("binary"), Ball(), 10, 1),
                       doctest::Contains("root-ball"), Error);
}

TEST_CASE("finite support probe per space") {
  FiniteSupportReport b = finite_support_probe(orc::space("binary"), 300, 5);
  CHECK(b.trivial);
  CHECK(b.classes == 0);
  CHECK(b.samples == 300);
  CHECK(b.failures == 0);

  FiniteSupportReport q = finite_support_probe(orc::space("qaut"), 300, 5);
  CHECK_FALSE(q.trivial);
  CHECK(q.classes == 1);
  CHECK(q.samples == 300);
  CHECK(q.failures == 0);

  FiniteSupportReport h = finite_support_probe(orc::space("houghton-H2"), 200, 5);
  CHECK_FALSE(h.trivial);
  CHECK(h.classes == 1);
  CHECK(h.failures == 0);
}
