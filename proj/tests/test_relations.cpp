#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "jlab/errors.hpp"
#include "jlab/generators.hpp"
#include "jlab/relation.hpp"
#include "support/oracles.hpp"

using namespace jlab;

namespace {

BinRel random_rel(std::mt19937& rng, int n) {
  BinRel r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (rng() % 2) r.set(x, y);
  return r;
}

// The two middle congruences of the 3-chain lattice.
Congruence beta3() { return parse_congruence("0 0 1", 3); }
Congruence gamma3() { return parse_congruence("0 1 1", 3); }

}  // namespace

TEST_CASE("composition of singletons") {
  BinRel r(3), s(3);
  r.set(0, 1);
  s.set(1, 2);
  BinRel rs = r.compose(s);
  CHECK(rs.pairs() == std::vector<std::pair<int, int>>{{0, 2}});
}

TEST_CASE("identity composes neutrally") {
  std::mt19937 rng(3);
  for (int n : {2, 3, 4}) {
    BinRel d = BinRel::identity(n);
    for (int i = 0; i < 10; ++i) {
      BinRel r = random_rel(rng, n);
      CHECK(d.compose(r) == r);
      CHECK(r.compose(d) == r);
    }
  }
}

TEST_CASE("beta after gamma on the 3-chain misses exactly (2,0)") {
  BinRel bg = beta3().binrel().compose(gamma3().binrel());
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK(bg.at(x, y) == !(x == 2 && y == 0));
  // Cross-check by exhaustive midpoint enumeration.
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      bool found = false;
      for (int m = 0; m < 3; ++m)
        found = found || (beta3().related(x, m) && gamma3().related(m, y));
      CHECK(bg.at(x, y) == found);
    }
}

TEST_CASE("intersection and converse") {
  std::mt19937 rng(4);
  BinRel r = random_rel(rng, 4);
  CHECK(r.intersect(r) == r);
  CHECK(r.converse().converse() == r);
  CHECK(beta3().binrel().intersect(gamma3().binrel()) == BinRel::identity(3));
}

TEST_CASE("size mismatch is rejected") {
  BinRel r(3), s(4);
  CHECK_THROWS_AS(r.compose(s), SizeMismatchError);
  CHECK_THROWS_AS(r.intersect(s), SizeMismatchError);
  CHECK_THROWS_AS(r.subset_of(s), SizeMismatchError);
}

TEST_CASE("alternating composition") {
  BinRel b = beta3().binrel(), g = gamma3().binrel();
  CHECK(alt_compose(b, g, 1) == b);
  CHECK(alt_compose(b, g, 2) == b.compose(g));
  CHECK(alt_compose(b, g, 3) == BinRel::full(3));
  CHECK_THROWS_AS(alt_compose(b, g, 0), Error);
  // Against the recursive path oracle.
  auto mb = testing::to_matrix(b), mg = testing::to_matrix(g);
  for (int k = 1; k <= 4; ++k) {
    BinRel lib = alt_compose(b, g, k);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        CHECK(lib.at(x, y) == testing::oracle_alt_member(mb, mg, k, x, y));
  }
}

TEST_CASE("composition is associative") {
  std::mt19937 rng(5);
  for (int n : {3, 4, 5})
    for (int i = 0; i < 12; ++i) {
      BinRel r = random_rel(rng, n), s = random_rel(rng, n), t = random_rel(rng, n);
      CHECK(r.compose(s).compose(t) == r.compose(s.compose(t)));
    }
}

TEST_CASE("congruences are transitive under composition") {
  for (const FiniteAlgebra& alg :
       {make_chain_lattice(3), make_product_lattice(2, 2), make_klein4(), make_z4()})
    for (const Congruence& c : all_congruences(alg)) {
      BinRel r = c.binrel();
      CHECK(r.compose(r) == r);
    }
}

TEST_CASE("alternating products of congruences grow monotonically") {
  FiniteAlgebra alg = make_product_lattice(2, 2);
  auto cons = all_congruences(alg);
  for (const Congruence& b : cons)
    for (const Congruence& g : cons)
      for (int k = 1; k <= 5; ++k)
        CHECK(alt_compose(b.binrel(), g.binrel(), k)
                  .subset_of(alt_compose(b.binrel(), g.binrel(), k + 1)));
}

TEST_CASE("principal congruence of a diagonal pair is the identity") {
  FiniteAlgebra alg = make_chain_lattice(3);
  CHECK(principal_congruence(alg, 1, 1) == Congruence::identity(3));
}

TEST_CASE("principal congruences on the 3-chain") {
  FiniteAlgebra alg = make_chain_lattice(3);
  CHECK(principal_congruence(alg, 1, 2).block_text() == "0 1 1");
  CHECK(principal_congruence(alg, 0, 2) == Congruence::full(3));
}

TEST_CASE("principal congruence is least among oracle congruences containing the pair") {
  for (const FiniteAlgebra& alg : {make_chain_lattice(3), make_chain_lattice(5),
                                   make_product_lattice(2, 2), make_klein4(), make_z4()}) {
    auto oracle = testing::oracle_congruences(alg);
    for (int a = 0; a < alg.size(); ++a)
      for (int b = a + 1; b < alg.size(); ++b) {
        Congruence p = principal_congruence(alg, a, b);
        CHECK(testing::oracle_compatible(alg, p.blocks()));
        CHECK(p.related(a, b));
        for (const auto& blocks : oracle) {
          if (blocks[static_cast<std::size_t>(a)] != blocks[static_cast<std::size_t>(b)]) continue;
          for (int x = 0; x < alg.size(); ++x)
            for (int y = 0; y < alg.size(); ++y)
              if (p.related(x, y))
                CHECK(blocks[static_cast<std::size_t>(x)] == blocks[static_cast<std::size_t>(y)]);
        }
      }
  }
}

TEST_CASE("all congruences agree with the filter-all-partitions oracle") {
  for (const FiniteAlgebra& alg :
       {make_chain_lattice(2), make_chain_lattice(3), make_chain_lattice(5),
        make_product_lattice(2, 2), make_klein4(), make_z4(), make_majority2(), make_dualdisc3(),
        make_baker2(), make_z2(), make_trivial()}) {
    std::set<std::vector<int>> expected;
    for (const auto& blocks : testing::oracle_congruences(alg))
      expected.insert(Congruence::from_blocks(blocks).blocks());
    std::set<std::vector<int>> got;
    for (const Congruence& c : all_congruences(alg)) got.insert(c.blocks());
    CHECK(got == expected);
  }
}

TEST_CASE("congruence lattices of the named examples") {
  auto texts = [](const FiniteAlgebra& alg) {
    std::vector<std::string> out;
    for (const Congruence& c : all_congruences(alg)) out.push_back(c.block_text());
    return out;
  };
  CHECK(texts(make_chain_lattice(2)) == std::vector<std::string>{"0 1", "0 0"});
  CHECK(texts(make_chain_lattice(3)) ==
        std::vector<std::string>{"0 1 2", "0 0 1", "0 1 1", "0 0 0"});
  CHECK(texts(make_product_lattice(2, 2)) ==
        std::vector<std::string>{"0 1 2 3", "0 0 1 1", "0 1 0 1", "0 0 0 0"});
}

TEST_CASE("compatibility check") {
  FiniteAlgebra alg = make_chain_lattice(3);
  CHECK(is_congruence(alg, {0, 1, 2}));
  CHECK(is_congruence(alg, {0, 0, 0}));
  CHECK_FALSE(is_congruence(alg, {0, 1, 0}));
  // Against the full-definition oracle on every partition.
  for (const auto& p : testing::all_partitions(3))
    CHECK(is_congruence(alg, p) == testing::oracle_compatible(alg, p));
}

TEST_CASE("canonical order runs from identity to full") {
  for (const FiniteAlgebra& alg : {make_chain_lattice(3), make_product_lattice(2, 2)}) {
    auto cons = all_congruences(alg);
    CHECK(cons.front().is_identity());
    CHECK(cons.back().is_full());
    CHECK(std::is_sorted(cons.begin(), cons.end(), canonical_less));
  }
}

TEST_CASE("block text parses back") {
  Congruence c = parse_congruence("0 0 1", 3);
  CHECK(c.block_text() == "0 0 1");
  CHECK(c.num_blocks() == 2);
  CHECK_THROWS_AS(parse_congruence("0 0", 3), Error);
  CHECK(parse_congruence("1 1 0", 3).block_text() == "0 0 1");  // renumbered
}

TEST_CASE("the congruence cap raises a resource error") {
  CHECK_THROWS_AS(all_congruences(make_product_lattice(2, 2), 2), ResourceLimitError);
}

TEST_CASE("congruence join repairs to compatibility") {
  FiniteAlgebra alg = make_z4();
  Congruence two = principal_congruence(alg, 0, 2);
  CHECK(two.block_text() == "0 1 0 1");
  Congruence joined = congruence_join(alg, two, principal_congruence(alg, 0, 1));
  CHECK(joined.is_full());
}
