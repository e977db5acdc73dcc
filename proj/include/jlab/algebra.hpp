#ifndef JLAB_ALGEBRA_HPP_
#define JLAB_ALGEBRA_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jlab {

// A finitary operation given by its flat row-major value table.
// For arity k on a universe of size s the table has s^k entries and
// table[((a1*s + a2)*s + ...)*s + ak] = f(a1, ..., ak).
struct Operation {
  std::string symbol;
  int arity = 0;
  std::vector<int> table;

  int apply(int size, std::span<const int> args) const;
};

// A finite algebra on universe {0, ..., size-1}. Immutable after
// construction; the constructor checks arity bounds, table lengths and
// entry ranges and reports the first offending index.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, int size, std::vector<Operation> ops);

  const std::string& name() const { return name_; }
  int size() const { return size_; }
  const std::vector<Operation>& ops() const { return ops_; }

  int op_index(std::string_view symbol) const;  // -1 when absent
  const Operation& op(int index) const { return ops_[static_cast<std::size_t>(index)]; }

  bool is_idempotent() const;

  static constexpr int kMaxArity = 4;

 private:
  std::string name_;
  int size_;
  std::vector<Operation> ops_;
};

}  // namespace jlab

#endif  // JLAB_ALGEBRA_HPP_
