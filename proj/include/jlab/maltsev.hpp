#ifndef JLAB_MALTSEV_HPP_
#define JLAB_MALTSEV_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jlab/algebra.hpp"
#include "jlab/term.hpp"

namespace jlab {

enum class FlavorKind { Jonsson, Alvin, Defective4 };

// Which chain of ternary terms is sought. Jonsson(n) has terms t_1..t_{n-1};
// Alvin(n) has terms t_0..t_{n-2} (leading term satisfying
// x = t_0(x,y,y) = t_0(x,y,x)); Defective4 is Jonsson(4) with x = t_2(x,y,x)
// dropped.
struct SystemFlavor {
  FlavorKind kind = FlavorKind::Jonsson;
  int n = 2;

  static SystemFlavor jonsson(int n) { return {FlavorKind::Jonsson, n}; }
  static SystemFlavor alvin(int n) { return {FlavorKind::Alvin, n}; }
  static SystemFlavor defective4() { return {FlavorKind::Defective4, 4}; }

  int term_count() const { return n - 1; }
  std::string text() const;
  bool operator==(const SystemFlavor&) const = default;
};

struct JonssonSystem {
  SystemFlavor flavor;
  std::vector<Term> terms;
};

struct Equation {
  std::string name;
  Term lhs;
  Term rhs;
};

// The defining equations of the flavor, instantiated with the given terms.
std::vector<Equation> defining_equations(const SystemFlavor& flavor,
                                         const std::vector<Term>& terms);

struct EquationResult {
  std::string name;
  bool ok = false;
  std::optional<Assignment> first_fail;
};

struct SystemReport {
  std::vector<EquationResult> equations;
  bool ok = true;
  std::string first_failure() const;
};

// Checks every defining equation over all size^3 assignments.
SystemReport verify_system(const FiniteAlgebra& alg, const JonssonSystem& system);

// The argument triples the flavor equations constrain: all triples of the
// shapes (a,b,a), (a,a,b), (a,b,b), deduplicated. At most 3*size^2.
std::vector<std::array<int, 3>> indicator_index(const FiniteAlgebra& alg);

enum class SearchStatus { Found, NotFound, Inconclusive };

struct FindResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<JonssonSystem> system;
  std::size_t closure_size = 0;
};

std::size_t default_closure_cap();

// Searches for a term system of the given flavor by closing the three
// projections of the indicator power and walking the linkable-element
// graph breadth-first. Any returned system has been re-verified against
// every assignment. Inconclusive means the closure cap was hit before the
// search space was exhausted.
FindResult find_terms(const FiniteAlgebra& alg, const SystemFlavor& flavor,
                      std::size_t cap = default_closure_cap());

// (majority, z-projection, z-projection); verified before returning.
JonssonSystem pad_to_four(const FiniteAlgebra& alg, const JonssonSystem& majority_system);

// Extends a Jonsson(n) system to Jonsson(target) by appending trailing
// z-projections, two per step; verified before returning.
JonssonSystem pad_system(const FiniteAlgebra& alg, const JonssonSystem& system, int target_n);

// The reversed system (terms reversed and x,z swapped); maps Jonsson(n) to
// Jonsson(n) and Alvin(n) to Alvin(n) for even n.
JonssonSystem reversed_system(const JonssonSystem& system);

struct LevelResult {
  SearchStatus status = SearchStatus::NotFound;
  int level = 0;  // valid when status == Found
  int n_max = 0;
  std::optional<JonssonSystem> system;
};

// Least n in 2..n_max with Jonsson(n) terms.
LevelResult distributivity_level(const FiniteAlgebra& alg, int n_max,
                                 std::size_t cap = default_closure_cap());

}  // namespace jlab

#endif  // JLAB_MALTSEV_HPP_
