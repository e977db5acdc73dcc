#ifndef JLAB_CLOSURE_HPP_
#define JLAB_CLOSURE_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "jlab/algebra.hpp"
#include "jlab/term.hpp"

namespace jlab {

// Element of a direct power of the algebra over an explicit finite index
// set; a plain algebra element is the one-coordinate case.
using PowerVector = std::vector<int>;

struct ClosureOptions {
  std::size_t cap = 1000000;
};

// How a closed-set element arose: a seed (by position) or an operation
// applied to earlier elements. Always recorded; term_for turns it into a
// generating term with variables numbered by seed order.
struct Derivation {
  int seed = -1;
  int op = -1;
  std::vector<int> children;
};

class ClosureSet {
 public:
  const std::vector<PowerVector>& elements() const { return elements_; }
  const std::vector<Derivation>& derivations() const { return derivations_; }
  bool complete() const { return complete_; }
  int seed_count() const { return seed_count_; }

  int find(const PowerVector& v) const;  // -1 when absent

  // Generating term for a closed element, variables numbered by seed order.
  Term term_for(const FiniteAlgebra& alg, int index) const;

 private:
  friend ClosureSet closure_iterate(const FiniteAlgebra&, std::vector<PowerVector>,
                                    const ClosureOptions&,
                                    const std::function<bool(const ClosureSet&)>&);
  std::vector<PowerVector> elements_;
  std::vector<Derivation> derivations_;
  bool complete_ = false;
  int seed_count_ = 0;
};

// Evaluates a term by substituting seed vectors for its variables,
// applying operations coordinatewise.
PowerVector eval_pointwise(const FiniteAlgebra& alg, const Term& t,
                           const std::vector<PowerVector>& seeds);

// Closes the seeds under all operations applied pointwise. on_round runs
// after every generation pass; returning true stops early. A cap hit stops
// generation with complete() == false.
ClosureSet closure_iterate(const FiniteAlgebra& alg, std::vector<PowerVector> seeds,
                           const ClosureOptions& options,
                           const std::function<bool(const ClosureSet&)>& on_round);

// Full closure; throws ResourceLimitError when the cap is exceeded.
ClosureSet closure(const FiniteAlgebra& alg, std::vector<PowerVector> seeds,
                   const ClosureOptions& options = {});

}  // namespace jlab

#endif  // JLAB_CLOSURE_HPP_
