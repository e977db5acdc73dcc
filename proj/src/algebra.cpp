#include "jlab/algebra.hpp"

#include <cstdint>

#include "jlab/errors.hpp"

namespace jlab {

namespace {

std::size_t pow_size(int size, int arity) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(size);
  return n;
}

}  // namespace

int Operation::apply(int size, std::span<const int> args) const {
  if (static_cast<int>(args.size()) != arity)
    throw ArityMismatchError(symbol, arity, static_cast<int>(args.size()));
  std::size_t index = 0;
  for (int a : args) index = index * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
  return table[index];
}

FiniteAlgebra::FiniteAlgebra(std::string name, int size, std::vector<Operation> ops)
    : name_(std::move(name)), size_(size), ops_(std::move(ops)) {
  if (size_ < 1) throw InvalidAlgebraError("size must be >= 1, got " + std::to_string(size_));
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Operation& f = ops_[i];
    if (f.arity < 0 || f.arity > kMaxArity)
      throw InvalidAlgebraError("operation " + f.symbol + ": arity " + std::to_string(f.arity) +
                                " out of range 0.." + std::to_string(kMaxArity));
    std::size_t want = pow_size(size_, f.arity);
    if (f.table.size() != want)
      throw InvalidAlgebraError("operation " + f.symbol + ": table length " +
                                std::to_string(f.table.size()) + ", expected " +
                                std::to_string(want));
    for (std::size_t j = 0; j < f.table.size(); ++j)
      if (f.table[j] < 0 || f.table[j] >= size_)
        throw InvalidAlgebraError("operation " + f.symbol + ": table entry " +
                                  std::to_string(f.table[j]) + " at index " + std::to_string(j) +
                                  " outside universe 0.." + std::to_string(size_ - 1));
    for (std::size_t j = 0; j < i; ++j)
      if (ops_[j].symbol == f.symbol)
        throw InvalidAlgebraError("duplicate operation symbol: " + f.symbol);
  }
}

int FiniteAlgebra::op_index(std::string_view symbol) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].symbol == symbol) return static_cast<int>(i);
  return -1;
}

bool FiniteAlgebra::is_idempotent() const {
  std::vector<int> args;
  for (const Operation& f : ops_) {
    for (int a = 0; a < size_; ++a) {
      args.assign(static_cast<std::size_t>(f.arity), a);
      if (f.apply(size_, args) != a) return false;
    }
  }
  return true;
}

}  // namespace jlab
