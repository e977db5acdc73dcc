#ifndef JLAB_GENERATORS_HPP_
#define JLAB_GENERATORS_HPP_

#include <string>

#include "jlab/algebra.hpp"

namespace jlab {

FiniteAlgebra make_trivial();
FiniteAlgebra make_chain_lattice(int n);
FiniteAlgebra make_product_lattice(int rows, int cols);
FiniteAlgebra make_majority2();
FiniteAlgebra make_dualdisc3();
FiniteAlgebra make_z2();

// Extra algebras used as fixtures.
FiniteAlgebra make_klein4();
FiniteAlgebra make_z4();
FiniteAlgebra make_baker2();
FiniteAlgebra make_disc3();

// Specs: trivial:1, lattice-chain:N, lattice-prod:AxB, majority2,
// dualdisc3, z2.
FiniteAlgebra from_generator_spec(const std::string& spec);

}  // namespace jlab

#endif  // JLAB_GENERATORS_HPP_
