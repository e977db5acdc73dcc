#ifndef JLAB_TERM_HPP_
#define JLAB_TERM_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jlab/algebra.hpp"

namespace jlab {

// Values for the three term variables x, y, z.
using Assignment = std::array<int, 3>;

// A ternary term over an algebra's signature: either one of the variables
// x, y, z (var in 0..2) or an operation symbol applied to subterms.
// Symbols are resolved against a concrete algebra at evaluation time.
struct Term {
  int var = -1;
  std::string symbol;
  std::vector<Term> args;

  bool is_var() const { return var >= 0; }

  static Term variable(int index);
  static Term x() { return variable(0); }
  static Term y() { return variable(1); }
  static Term z() { return variable(2); }
  static Term apply(std::string symbol, std::vector<Term> args);

  int depth() const;
  int node_count() const;

  bool operator==(const Term& other) const;
};

int eval_term(const FiniteAlgebra& alg, const Term& t, const Assignment& asg);

// Values of t on all size^3 assignments, indexed (x*s + y)*s + z.
std::vector<int> eval_table(const FiniteAlgebra& alg, const Term& t);

bool check_equation(const FiniteAlgebra& alg, const Term& lhs, const Term& rhs);
std::optional<Assignment> equation_failure(const FiniteAlgebra& alg, const Term& lhs,
                                           const Term& rhs);

// Substitutes terms for the variables x, y, z.
Term subst(const Term& t, const Term& for_x, const Term& for_y, const Term& for_z);

// Swaps the variables x and z throughout.
Term reverse_term(const Term& t);

std::string term_to_string(const Term& t);
Term parse_term(const std::string& text);

}  // namespace jlab

#endif  // JLAB_TERM_HPP_
