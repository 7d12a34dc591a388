#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"

using namespace cssg;

static const char* kFixtures[] = {"binary", "golden-mean", "qaut", "houghton-H2",
                                  "vdr-2-3"};

TEST_CASE("presentations load with the expected shape") {
  auto bin = orc::space("binary");
  CHECK(bin->num_symbols() == 1);
  CHECK(bin->arity(0) == 2);
  CHECK(bin->name() == "binary");

  auto gm = orc::space("golden-mean");
  CHECK(gm->num_symbols() == 3);
  CHECK(gm->symbol_name(gm->root_symbol()) == "R");
  CHECK(gm->arity(gm->root_symbol()) == 2);

  auto qa = orc::space("qaut");
  CHECK(qa->num_symbols() == 2);
  CHECK(qa->terminal(1));
  CHECK(qa->arity(0) == 3);

  auto hh = orc::space("houghton-H2");
  CHECK(hh->num_symbols() == 4);
}

TEST_CASE("symbol classes match the naive congruence on every fixture") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    auto sp = orc::space(name);
    auto naive = orc::classes_naive(*sp);
    for (int a = 0; a < sp->num_symbols(); ++a)
      for (int b = 0; b < sp->num_symbols(); ++b) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK((sp->type_class(a) == sp->type_class(b)) == (naive[a] == naive[b]));
      }
  }
}

TEST_CASE("class structure of the individual fixtures") {
  auto gm = orc::space("golden-mean");
  int r = 0, z = 1, o = 2;  // R, 0, 1 in declaration order
  REQUIRE(gm->symbol_name(r) == "R");
  REQUIRE(gm->symbol_name(z) == "0");
  REQUIRE(gm->symbol_name(o) == "1");
  CHECK(gm->type_class(r) == gm->type_class(z));
  CHECK(gm->type_class(r) != gm->type_class(o));
  CHECK(gm->num_type_classes() == 2);

  auto hh = orc::space("houghton-H2");
  CHECK(hh->num_type_classes() == 4);  // r, x1, x2, a all separate

  CHECK(orc::space("binary")->num_type_classes() == 1);

  auto qa = orc::space("qaut");
  CHECK(qa->num_type_classes() == 2);
  CHECK(qa->type_class(0) != qa->type_class(1));
}

TEST_CASE("finite-type verdicts match end-count stabilisation") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    auto sp = orc::space(name);
    for (int s = 0; s < sp->num_symbols(); ++s) {
      CAPTURE(s);
      bool naive =
          orc::ends_visible(*sp, s, 20) == orc::ends_visible(*sp, s, 20 + sp->num_symbols() + 6);
      CHECK(sp->finite_type(s) == naive);
    }
    for (const auto& b : orc::frontier(*sp, Ball(), 4)) {
      CAPTURE(b.str());
      CHECK(sp->ball_finite(b) == orc::ball_finite_naive(*sp, b));
    }
  }
}

TEST_CASE("addresses, symbols, and depth") {
  auto gm = orc::space("golden-mean");
  CHECK(gm->valid_address(orc::B("0")));
  CHECK(gm->valid_address(orc::B("10")));
  CHECK_FALSE(gm->valid_address(Ball({1, 1})));  // symbol 1 has one child
  CHECK(gm->symbol_name(gm->symbol_at(orc::B("1"))) == "1");
  CHECK(gm->symbol_name(gm->symbol_at(orc::B("10"))) == "0");
  CHECK(gm->ball_depth(orc::B("00")) == 1);  // proper balls strictly above: "0"

  auto qa = orc::space("qaut");
  CHECK(qa->terminal(qa->symbol_at(orc::B("1"))));
  CHECK_THROWS_WITH_AS(qa->symbol_at(orc::B("11")), doctest::Contains("invalid-address"),
                       Error);
}

TEST_CASE("distance exponents come from the longest common prefix") {
  auto e = Space::distance_exponent(orc::B("001"), orc::B("01"));
  REQUIRE(e.has_value());
  CHECK(*e == 1);
  CHECK_FALSE(Space::distance_exponent(orc::B("0"), orc::B("01")).has_value());
}

TEST_CASE("minimal ball partitions") {
  CHECK(orc::space("binary")->minimal_ball_partition() ==
        std::vector<Ball>{orc::B("0"), orc::B("1")});
  CHECK(orc::space("golden-mean")->minimal_ball_partition() ==
        std::vector<Ball>{orc::B("0"), orc::B("1")});
  CHECK(orc::space("qaut")->minimal_ball_partition() ==
        std::vector<Ball>{orc::B("0"), orc::B("1"), orc::B("2")});
  CHECK(orc::space("houghton-H2")->minimal_ball_partition() ==
        std::vector<Ball>{orc::B("0"), orc::B("1")});
}

TEST_CASE("partition validation against the naive definition") {
  auto bin = orc::space("binary");
  std::vector<Ball> good{orc::B("00"), orc::B("01"), orc::B("1")};
  CHECK(is_partition(*bin, good, Ball()));
  CHECK(orc::is_partition_naive(*bin, Ball(), good));

  std::vector<Ball> overlap{orc::B("0"), orc::B("01"), orc::B("1")};
  CHECK_FALSE(is_partition(*bin, overlap, Ball()));
  CHECK_FALSE(orc::is_partition_naive(*bin, Ball(), overlap));

  std::vector<Ball> gap{orc::B("00"), orc::B("1")};
  CHECK_FALSE(is_partition(*bin, gap, Ball()));
  CHECK_FALSE(orc::is_partition_naive(*bin, Ball(), gap));

  CHECK_THROWS_AS(validate_partition(*bin, gap, Ball()), Error);
}

TEST_CASE("refine merges two partitions by prefix comparison") {
  auto bin = orc::space("binary");
  std::vector<Ball> a{orc::B("00"), orc::B("01"), orc::B("1")};
  std::vector<Ball> b{orc::B("0"), orc::B("10"), orc::B("11")};
  std::vector<Ball> want{orc::B("00"), orc::B("01"), orc::B("10"), orc::B("11")};
  CHECK(refine(*bin, a, b) == want);

  // against the definition: the common refinement cells are exactly the
  // deeper ball of each comparable pair
  auto out = refine(*bin, a, b);
  CHECK(orc::is_partition_naive(*bin, Ball(), out));
  for (const auto& c : out) {
    bool in_a = false, in_b = false;
    for (const auto& x : a) in_a = in_a || x.is_prefix_of(c);
    for (const auto& x : b) in_b = in_b || x.is_prefix_of(c);
    CHECK(in_a);
    CHECK(in_b);
  }
}

TEST_CASE("complement and child cells") {
  auto bin = orc::space("binary");
  auto cells = complement_cells(*bin, Ball(), {orc::B("01")});
  std::vector<Ball> with = cells;
  with.push_back(orc::B("01"));
  CHECK(orc::is_partition_naive(*bin, Ball(), with));

  auto gm = orc::space("golden-mean");
  CHECK(child_cells(*gm, orc::B("1")) == std::vector<Ball>{orc::B("10")});
}

TEST_CASE("typed ball search walks breadth-first") {
  auto gm = orc::space("golden-mean");
  int one_cls = gm->ball_class(orc::B("1"));
  // leftmost 1-typed ball inside "0"
  auto d = find_typed_ball(*gm, orc::B("0"), one_cls);
  REQUIRE(d.has_value());
  CHECK(*d == orc::B("01"));
  // strict subball of the root's own class
  auto s = find_typed_ball(*gm, Ball(), gm->ball_class(Ball()), {}, true);
  REQUIRE(s.has_value());
  CHECK(s->len() >= 1);
}

TEST_CASE("vdr presentation builder matches the fixture") {
  auto built = std::make_shared<Space>(make_vdr(2, 3), nullptr);
  auto fixture = orc::space("vdr-2-3");
  REQUIRE(built->num_symbols() == fixture->num_symbols());
  CHECK(built->arity(built->root_symbol()) == 3);
  for (int s = 0; s < built->num_symbols(); ++s)
    CHECK(built->children_of(s) == fixture->children_of(s));
}

TEST_CASE("space JSON round-trips") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    auto sp = orc::space(name);
    auto back = space_from_json(space_to_json(*sp), sp->name());
    CHECK(back->num_symbols() == sp->num_symbols());
    for (int s = 0; s < sp->num_symbols(); ++s) {
      CHECK(back->symbol_name(s) == sp->symbol_name(s));
      CHECK(back->children_of(s) == sp->children_of(s));
    }
    CHECK(back->root_symbol() == sp->root_symbol());
  }
}
