#ifndef JLAB_RELATION_HPP_
#define JLAB_RELATION_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jlab/algebra.hpp"

namespace jlab {

// Binary relation on {0..n-1} as a dense bit matrix, row-major.
class BinRel {
 public:
  explicit BinRel(int n);

  static BinRel identity(int n);
  static BinRel full(int n);

  int size() const { return n_; }
  bool at(int x, int y) const {
    std::size_t i = index(x, y);
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int x, int y, bool value = true);

  BinRel compose(const BinRel& other) const;
  BinRel intersect(const BinRel& other) const;
  BinRel unite(const BinRel& other) const;
  BinRel converse() const;

  bool subset_of(const BinRel& other) const;
  bool operator==(const BinRel& other) const;

  bool reflexive() const;
  // First pair present here but absent in other, scanning row-major.
  std::optional<std::pair<int, int>> first_pair_not_in(const BinRel& other) const;
  std::vector<std::pair<int, int>> pairs() const;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y);
  }
  void check_size(const BinRel& other) const;

  int n_;
  std::vector<std::uint64_t> bits_;
};

// rho ∘ sigma ∘ rho ∘ ... with exactly k factors, alternating from rho.
BinRel alt_compose(const BinRel& rho, const BinRel& sigma, int k);

// A congruence stored as a partition: block index per element, blocks
// numbered by first occurrence. Compatibility with the operations is a
// property of the pair (algebra, partition) and is checked by
// is_congruence, not by this class.
class Congruence {
 public:
  static Congruence identity(int n);
  static Congruence full(int n);
  static Congruence from_blocks(std::vector<int> blocks);

  int size() const { return static_cast<int>(blocks_.size()); }
  int block_of(int x) const { return blocks_[static_cast<std::size_t>(x)]; }
  bool related(int x, int y) const { return block_of(x) == block_of(y); }
  int num_blocks() const { return num_blocks_; }
  const std::vector<int>& blocks() const { return blocks_; }

  BinRel binrel() const;
  std::string block_text() const;  // e.g. "0 0 1"

  bool operator==(const Congruence& other) const { return blocks_ == other.blocks_; }
  bool is_identity() const { return num_blocks_ == size(); }
  bool is_full() const { return num_blocks_ == 1; }

 private:
  explicit Congruence(std::vector<int> blocks, int num_blocks)
      : blocks_(std::move(blocks)), num_blocks_(num_blocks) {}

  std::vector<int> blocks_;
  int num_blocks_;
};

// Finer partitions sort before coarser ones; ties broken lexicographically
// on the normalized block vectors. Gives [identity, ..., full].
bool canonical_less(const Congruence& a, const Congruence& b);

Congruence parse_congruence(const std::string& block_text, int size);

// Whether the equivalence given by blocks is compatible with every
// operation (checked via one-position substitutions).
bool is_congruence(const FiniteAlgebra& alg, const std::vector<int>& blocks);

// Least congruence containing (a, b).
Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b);

// Least congruence containing both (transitive closure of the union,
// repaired to compatibility by pair propagation).
Congruence congruence_join(const FiniteAlgebra& alg, const Congruence& c1, const Congruence& c2);

// Every congruence of alg, canonically sorted.
std::vector<Congruence> all_congruences(const FiniteAlgebra& alg, std::size_t cap = 100000);

}  // namespace jlab

#endif  // JLAB_RELATION_HPP_
