#include "jlab/verifier.hpp"

#include "jlab/errors.hpp"

namespace jlab {

BinRel lhs_relation(const BinRel& alpha, const BinRel& beta, const BinRel& gamma, int m) {
  return alpha.intersect(alt_compose(beta, gamma, m));
}

bool check_identity(const BinRel& alpha, const BinRel& beta, const BinRel& gamma, int m, int k,
                    RhsStart start) {
  BinRel lhs = lhs_relation(alpha, beta, gamma, m);
  BinRel ab = alpha.intersect(beta);
  BinRel ag = alpha.intersect(gamma);
  BinRel rhs = start == RhsStart::Beta ? alt_compose(ab, ag, k) : alt_compose(ag, ab, k);
  return lhs.subset_of(rhs);
}

int default_k_max(int algebra_size) { return 2 * algebra_size * algebra_size; }

SpectrumRow minimal_k(const Congruence& alpha, const Congruence& beta, const Congruence& gamma,
                      int m, int k_max, RhsStart start) {
  if (k_max < 1) throw Error("k_max must be >= 1");
  SpectrumRow row;
  row.m = m;
  row.k_max = k_max;
  BinRel a = alpha.binrel(), b = beta.binrel(), g = gamma.binrel();
  BinRel lhs = lhs_relation(a, b, g, m);
  BinRel ab = a.intersect(b);
  BinRel ag = a.intersect(g);
  for (int k = 1; k <= k_max; ++k) {
    BinRel rhs = start == RhsStart::Beta ? alt_compose(ab, ag, k) : alt_compose(ag, ab, k);
    if (lhs.subset_of(rhs)) {
      row.minimal_k = k;
      if (k > 1) {
        BinRel prev = start == RhsStart::Beta ? alt_compose(ab, ag, k - 1) : alt_compose(ag, ab, k - 1);
        row.witness = lhs.first_pair_not_in(prev);
      }
      return row;
    }
  }
  return row;
}

Spectrum spectrum(const FiniteAlgebra& alg, const std::vector<int>& m_list, int k_max,
                  std::size_t congruence_cap) {
  Spectrum out;
  out.congruences = all_congruences(alg, congruence_cap);
  if (k_max <= 0) k_max = default_k_max(alg.size());
  int count = static_cast<int>(out.congruences.size());
  for (int m : m_list) out.per_m_max[m] = std::nullopt;
  for (int ai = 0; ai < count; ++ai)
    for (int bi = 0; bi < count; ++bi)
      for (int gi = 0; gi < count; ++gi)
        for (int m : m_list) {
          SpectrumRow row = minimal_k(out.congruences[static_cast<std::size_t>(ai)],
                                      out.congruences[static_cast<std::size_t>(bi)],
                                      out.congruences[static_cast<std::size_t>(gi)], m, k_max);
          row.alpha = ai;
          row.beta = bi;
          row.gamma = gi;
          auto& best = out.per_m_max[m];
          if (row.minimal_k && (!best || *row.minimal_k > *best)) best = *row.minimal_k;
          out.rows.push_back(std::move(row));
        }
  return out;
}

std::optional<Violation> counterexample_search(const std::vector<FiniteAlgebra>& catalog, int m,
                                               int k, RhsStart start) {
  for (std::size_t idx = 0; idx < catalog.size(); ++idx) {
    const FiniteAlgebra& alg = catalog[idx];
    std::vector<Congruence> cons = all_congruences(alg);
    int count = static_cast<int>(cons.size());
    for (int ai = 0; ai < count; ++ai)
      for (int bi = 0; bi < count; ++bi)
        for (int gi = 0; gi < count; ++gi) {
          BinRel a = cons[static_cast<std::size_t>(ai)].binrel();
          BinRel b = cons[static_cast<std::size_t>(bi)].binrel();
          BinRel g = cons[static_cast<std::size_t>(gi)].binrel();
          BinRel lhs = lhs_relation(a, b, g, m);
          BinRel ab = a.intersect(b);
          BinRel ag = a.intersect(g);
          BinRel rhs = start == RhsStart::Beta ? alt_compose(ab, ag, k) : alt_compose(ag, ab, k);
          if (auto pair = lhs.first_pair_not_in(rhs)) {
            Violation v;
            v.algebra_index = static_cast<int>(idx);
            v.alpha = ai;
            v.beta = bi;
            v.gamma = gi;
            v.pair = *pair;
            v.m = m;
            v.k = k;
            return v;
          }
        }
  }
  return std::nullopt;
}

}  // namespace jlab
