#include "jlab/generators.hpp"

#include <algorithm>

#include "jlab/errors.hpp"

namespace jlab {

namespace {

Operation binop(const std::string& symbol, int size, int (*f)(int, int)) {
  Operation op;
  op.symbol = symbol;
  op.arity = 2;
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) op.table.push_back(f(a, b));
  return op;
}

template <typename F>
Operation ternop(const std::string& symbol, int size, F f) {
  Operation op;
  op.symbol = symbol;
  op.arity = 3;
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      for (int c = 0; c < size; ++c) op.table.push_back(f(a, b, c));
  return op;
}

}  // namespace

FiniteAlgebra make_trivial() { return FiniteAlgebra("trivial", 1, {}); }

FiniteAlgebra make_chain_lattice(int n) {
  if (n < 1 || n > 64) throw Error("chain lattice size out of range: " + std::to_string(n));
  return FiniteAlgebra("lattice-chain:" + std::to_string(n), n,
                       {binop("meet", n, [](int a, int b) { return std::min(a, b); }),
                        binop("join", n, [](int a, int b) { return std::max(a, b); })});
}

FiniteAlgebra make_product_lattice(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols > 256)
    throw Error("product lattice size out of range");
  int n = rows * cols;
  // Element i*cols + j is the pair (i, j); meet and join act coordinatewise.
  Operation meet, join;
  meet.symbol = "meet";
  join.symbol = "join";
  meet.arity = join.arity = 2;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ai = a / cols, aj = a % cols, bi = b / cols, bj = b % cols;
      meet.table.push_back(std::min(ai, bi) * cols + std::min(aj, bj));
      join.table.push_back(std::max(ai, bi) * cols + std::max(aj, bj));
    }
  return FiniteAlgebra("lattice-prod:" + std::to_string(rows) + "x" + std::to_string(cols), n,
                       {std::move(meet), std::move(join)});
}

FiniteAlgebra make_majority2() {
  return FiniteAlgebra("majority2", 2,
                       {ternop("maj", 2, [](int a, int b, int c) {
                          return (a & b) | (b & c) | (a & c);
                        })});
}

FiniteAlgebra make_dualdisc3() {
  return FiniteAlgebra("dualdisc3", 3, {ternop("d", 3, [](int a, int b, int c) {
                         return a == b ? a : c;
                       })});
}

FiniteAlgebra make_z2() {
  return FiniteAlgebra("z2", 2, {binop("add", 2, [](int a, int b) { return a ^ b; })});
}

FiniteAlgebra make_klein4() {
  return FiniteAlgebra("klein4", 4, {binop("add", 4, [](int a, int b) { return a ^ b; })});
}

FiniteAlgebra make_z4() {
  return FiniteAlgebra("z4", 4, {binop("add", 4, [](int a, int b) { return (a + b) % 4; })});
}

FiniteAlgebra make_baker2() {
  // Single operation x meet (y join z) on the two-element lattice.
  return FiniteAlgebra("baker2", 2, {ternop("b", 2, [](int a, int b, int c) {
                         return a & (b | c);
                       })});
}

FiniteAlgebra make_disc3() {
  return FiniteAlgebra("disc3", 3, {ternop("t", 3, [](int a, int b, int c) {
                         return a == b ? c : a;
                       })});
}

FiniteAlgebra from_generator_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string param = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "trivial") {
    if (param != "1") throw Error("unknown generator: " + spec);
    return make_trivial();
  }
  if (name == "lattice-chain") {
    if (param.empty()) throw Error("lattice-chain needs a size, e.g. lattice-chain:3");
    return make_chain_lattice(std::stoi(param));
  }
  if (name == "lattice-prod") {
    auto x = param.find('x');
    if (x == std::string::npos)
      throw Error("lattice-prod needs dimensions, e.g. lattice-prod:2x2");
    return make_product_lattice(std::stoi(param.substr(0, x)), std::stoi(param.substr(x + 1)));
  }
  if (name == "majority2" && param.empty()) return make_majority2();
  if (name == "dualdisc3" && param.empty()) return make_dualdisc3();
  if (name == "z2" && param.empty()) return make_z2();
  throw Error("unknown generator: " + spec);
}

}  // namespace jlab
