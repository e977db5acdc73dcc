#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "jlab/closure.hpp"
#include "jlab/errors.hpp"
#include "jlab/generators.hpp"
#include "support/oracles.hpp"

using namespace jlab;

namespace {

std::set<PowerVector> as_set(const ClosureSet& cs) {
  return {cs.elements().begin(), cs.elements().end()};
}

// Full-pass brute-force closure over explicit vector sets.
std::set<PowerVector> brute_closure(const FiniteAlgebra& alg, std::vector<PowerVector> seeds) {
  std::set<PowerVector> closed(seeds.begin(), seeds.end());
  std::size_t width = seeds[0].size();
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<PowerVector> next = closed;
    for (const Operation& f : alg.ops()) {
      std::vector<PowerVector> pool(closed.begin(), closed.end());
      std::vector<std::size_t> tuple(static_cast<std::size_t>(f.arity), 0);
      while (true) {
        PowerVector v(width);
        std::vector<int> args(static_cast<std::size_t>(f.arity));
        for (std::size_t i = 0; i < width; ++i) {
          for (int j = 0; j < f.arity; ++j)
            args[static_cast<std::size_t>(j)] = pool[tuple[static_cast<std::size_t>(j)]][i];
          v[i] = f.apply(alg.size(), args);
        }
        if (next.insert(v).second) grew = true;
        int j = f.arity - 1;
        for (; j >= 0; --j) {
          if (++tuple[static_cast<std::size_t>(j)] < pool.size()) break;
          tuple[static_cast<std::size_t>(j)] = 0;
        }
        if (j < 0) break;
      }
    }
    closed = next;
  }
  return closed;
}

}  // namespace

TEST_CASE("the whole universe is already closed") {
  FiniteAlgebra alg = make_chain_lattice(3);
  ClosureSet cs = closure(alg, {{0}, {1}, {2}});
  CHECK(cs.elements().size() == 3);
  CHECK(cs.complete());
}

TEST_CASE("projection closure in a three-coordinate lattice power") {
  FiniteAlgebra alg = make_chain_lattice(2);
  // Index set {(0,1,0),(0,0,1),(0,1,1)}; seeds are the three projections.
  std::vector<PowerVector> seeds = {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}};
  ClosureSet cs = closure(alg, seeds);
  std::set<PowerVector> expected = brute_closure(alg, seeds);
  CHECK(as_set(cs) == expected);
  CHECK(cs.elements().size() == 5);
}

TEST_CASE("a singleton fixed by the operations stays closed") {
  Operation max2;
  max2.symbol = "max";
  max2.arity = 2;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) max2.table.push_back(std::max(a, b));
  FiniteAlgebra alg("max3", 3, {max2});
  ClosureSet cs = closure(alg, {{0}});
  CHECK(cs.elements().size() == 1);
  CHECK(cs.elements()[0] == PowerVector{0});
}

TEST_CASE("nullary operations enter the closure") {
  Operation c;
  c.symbol = "one";
  c.arity = 0;
  c.table = {1};
  FiniteAlgebra alg("pointed", 3, {c});
  ClosureSet cs = closure(alg, {{0, 0}});
  CHECK(as_set(cs) == std::set<PowerVector>{{0, 0}, {1, 1}});
}

TEST_CASE("the cap stops generation") {
  FiniteAlgebra alg = make_chain_lattice(2);
  std::vector<PowerVector> seeds = {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}};
  ClosureOptions opts;
  opts.cap = 3;
  CHECK_THROWS_AS(closure(alg, seeds, opts), ResourceLimitError);
  ClosureSet cs = closure_iterate(alg, seeds, opts, nullptr);
  CHECK_FALSE(cs.complete());
}

TEST_CASE("closure is extensive, monotone and idempotent") {
  FiniteAlgebra alg = make_chain_lattice(4);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<PowerVector> small, large;
    for (int x = 0; x < 4; ++x) {
      if (rng() % 2) small.push_back({x});
      large.push_back({x});
    }
    if (small.empty()) small.push_back({0});
    std::shuffle(large.begin(), large.end(), rng);
    auto cl_small = as_set(closure(alg, small));
    auto cl_large = as_set(closure(alg, large));
    for (const PowerVector& v : small) CHECK(cl_small.count(v));
    for (const PowerVector& v : cl_small) CHECK(cl_large.count(v));
    std::vector<PowerVector> again(cl_small.begin(), cl_small.end());
    CHECK(as_set(closure(alg, again)) == cl_small);
  }
}

TEST_CASE("empty seeds are rejected") {
  FiniteAlgebra alg = make_chain_lattice(2);
  CHECK_THROWS_AS(closure(alg, {}), Error);
  CHECK_THROWS_AS(closure(alg, {{0}, {0, 1}}), SizeMismatchError);
}

TEST_CASE("tracked terms reproduce their elements") {
  for (const FiniteAlgebra& alg : {make_chain_lattice(2), make_majority2(), make_baker2()}) {
    // Indicator-style seeds over a handful of coordinates.
    std::vector<PowerVector> seeds = {{0, 0, 1, 1}, {0, 1, 0, 1}, {1, 0, 0, 1}};
    ClosureSet cs = closure(alg, seeds);
    for (std::size_t i = 0; i < cs.elements().size(); ++i) {
      Term t = cs.term_for(alg, static_cast<int>(i));
      CHECK(eval_pointwise(alg, t, seeds) == cs.elements()[i]);
    }
  }
}

TEST_CASE("round callback can stop generation early") {
  FiniteAlgebra alg = make_chain_lattice(2);
  std::vector<PowerVector> seeds = {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}};
  int rounds = 0;
  ClosureSet cs = closure_iterate(alg, seeds, {}, [&](const ClosureSet&) {
    ++rounds;
    return true;
  });
  CHECK(rounds == 1);
  CHECK(cs.elements().size() == 3);
  CHECK_FALSE(cs.complete());
}
