#ifndef JLAB_VERIFIER_HPP_
#define JLAB_VERIFIER_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jlab/algebra.hpp"
#include "jlab/relation.hpp"

namespace jlab {

// Which relation opens the right-hand side product: alpha-beta for the
// standard identities, alpha-gamma for the alvin-headed one.
enum class RhsStart { Beta, Gamma };

// alpha restricted to the m-factor alternating product of beta and gamma.
BinRel lhs_relation(const BinRel& alpha, const BinRel& beta, const BinRel& gamma, int m);

// Whether alpha(beta o gamma o ...m) is contained in the k-factor
// alternating product of alpha-beta and alpha-gamma.
bool check_identity(const BinRel& alpha, const BinRel& beta, const BinRel& gamma, int m, int k,
                    RhsStart start = RhsStart::Beta);

struct SpectrumRow {
  int alpha = 0;  // canonical congruence indices
  int beta = 0;
  int gamma = 0;
  int m = 0;
  int k_max = 0;
  std::optional<int> minimal_k;
  // A pair in the left side missing from the (minimal_k - 1)-factor right
  // side; absent when minimal_k is 1 or no k worked.
  std::optional<std::pair<int, int>> witness;
};

int default_k_max(int algebra_size);

SpectrumRow minimal_k(const Congruence& alpha, const Congruence& beta, const Congruence& gamma,
                      int m, int k_max, RhsStart start = RhsStart::Beta);

struct Spectrum {
  std::vector<Congruence> congruences;
  std::vector<SpectrumRow> rows;
  std::map<int, std::optional<int>> per_m_max;  // largest minimal_k per m
};

// minimal_k for every ordered congruence triple and every requested m,
// rows in canonical order.
Spectrum spectrum(const FiniteAlgebra& alg, const std::vector<int>& m_list, int k_max = 0,
                  std::size_t congruence_cap = 100000);

struct Violation {
  int algebra_index = 0;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  std::pair<int, int> pair;
  int m = 0;
  int k = 0;
};

// First (algebra, triple, pair) violating the m-to-k inclusion, scanning
// the catalog in order and congruence triples canonically.
std::optional<Violation> counterexample_search(const std::vector<FiniteAlgebra>& catalog, int m,
                                               int k, RhsStart start = RhsStart::Beta);

}  // namespace jlab

#endif  // JLAB_VERIFIER_HPP_
