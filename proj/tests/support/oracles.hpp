#ifndef JLAB_TESTS_ORACLES_HPP_
#define JLAB_TESTS_ORACLES_HPP_

// Brute-force oracles for the tests, written as plain loops independent of
// the library's implementations.

#include <random>
#include <vector>

#include "jlab/algebra.hpp"
#include "jlab/relation.hpp"
#include "jlab/term.hpp"

namespace jlab::testing {

// All partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int max_used) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= max_used + 1; ++b) {
      cur[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, std::max(max_used, b));
    }
  };
  rec(rec, 1, 0);
  return out;
}

// Compatibility via the full definition: blockwise-related argument tuples
// give related values.
inline bool oracle_compatible(const FiniteAlgebra& alg, const std::vector<int>& blocks) {
  int s = alg.size();
  for (const Operation& f : alg.ops()) {
    int k = f.arity;
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) total *= static_cast<std::size_t>(s);
    for (std::size_t ui = 0; ui < total; ++ui)
      for (std::size_t vi = 0; vi < total; ++vi) {
        std::vector<int> u(static_cast<std::size_t>(k)), v(static_cast<std::size_t>(k));
        std::size_t uu = ui, vv = vi;
        bool related = true;
        for (int i = k - 1; i >= 0; --i) {
          u[static_cast<std::size_t>(i)] = static_cast<int>(uu % s);
          v[static_cast<std::size_t>(i)] = static_cast<int>(vv % s);
          uu /= static_cast<std::size_t>(s);
          vv /= static_cast<std::size_t>(s);
          related = related && blocks[static_cast<std::size_t>(u[static_cast<std::size_t>(i)])] ==
                                   blocks[static_cast<std::size_t>(v[static_cast<std::size_t>(i)])];
        }
        if (!related) continue;
        if (blocks[static_cast<std::size_t>(f.apply(s, u))] !=
            blocks[static_cast<std::size_t>(f.apply(s, v))])
          return false;
      }
  }
  return true;
}

// All compatible partitions, as normalized block vectors.
inline std::vector<std::vector<int>> oracle_congruences(const FiniteAlgebra& alg) {
  std::vector<std::vector<int>> out;
  for (const auto& p : all_partitions(alg.size()))
    if (oracle_compatible(alg, p)) out.push_back(p);
  return out;
}

using Matrix = std::vector<std::vector<char>>;

inline Matrix to_matrix(const BinRel& r) {
  Matrix m(static_cast<std::size_t>(r.size()),
           std::vector<char>(static_cast<std::size_t>(r.size()), 0));
  for (int x = 0; x < r.size(); ++x)
    for (int y = 0; y < r.size(); ++y) m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = r.at(x, y);
  return m;
}

inline Matrix to_matrix(const Congruence& c) { return to_matrix(c.binrel()); }

// Path existence through k alternating factors, by recursion.
inline bool oracle_alt_member(const Matrix& first, const Matrix& second, int k, int x, int y) {
  if (k == 0) return x == y;
  const Matrix& rel = first;
  for (std::size_t z = 0; z < rel.size(); ++z)
    if (rel[static_cast<std::size_t>(x)][z] &&
        oracle_alt_member(second, first, k - 1, static_cast<int>(z), y))
      return true;
  return false;
}

inline Matrix intersect(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = a[i][j] && b[i][j];
  return out;
}

// alpha(beta o gamma o ...m) subset of the k-factor alternating product of
// alpha-beta and alpha-gamma, entirely by path recursion.
inline bool oracle_check_identity(const Matrix& alpha, const Matrix& beta, const Matrix& gamma,
                                  int m, int k, bool rhs_starts_gamma = false) {
  int n = static_cast<int>(alpha.size());
  Matrix ab = intersect(alpha, beta), ag = intersect(alpha, gamma);
  const Matrix& r1 = rhs_starts_gamma ? ag : ab;
  const Matrix& r2 = rhs_starts_gamma ? ab : ag;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!alpha[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) continue;
      if (!oracle_alt_member(beta, gamma, m, x, y)) continue;
      if (!oracle_alt_member(r1, r2, k, x, y)) return false;
    }
  return true;
}

inline Term random_term(std::mt19937& rng, const std::vector<std::pair<std::string, int>>& sig,
                        int depth) {
  if (depth == 0 || rng() % 3 == 0) return Term::variable(static_cast<int>(rng() % 3));
  const auto& pick = sig[rng() % sig.size()];
  std::vector<Term> args;
  for (int i = 0; i < pick.second; ++i) args.push_back(random_term(rng, sig, depth - 1));
  return Term::apply(pick.first, std::move(args));
}

}  // namespace jlab::testing

#endif  // JLAB_TESTS_ORACLES_HPP_
