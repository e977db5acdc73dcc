#include "jlab/relation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "jlab/errors.hpp"

namespace jlab {

BinRel::BinRel(int n) : n_(n) {
  std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  bits_.assign((cells + 63) / 64, 0);
}

BinRel BinRel::identity(int n) {
  BinRel r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

BinRel BinRel::full(int n) {
  BinRel r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.set(i, j);
  return r;
}

void BinRel::set(int x, int y, bool value) {
  std::size_t i = index(x, y);
  if (value)
    bits_[i >> 6] |= (std::uint64_t{1} << (i & 63));
  else
    bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

void BinRel::check_size(const BinRel& other) const {
  if (n_ != other.n_)
    throw SizeMismatchError("relation sizes differ: " + std::to_string(n_) + " vs " +
                            std::to_string(other.n_));
}

BinRel BinRel::compose(const BinRel& other) const {
  check_size(other);
  BinRel out(n_);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (at(x, y))
        for (int z = 0; z < n_; ++z)
          if (other.at(y, z)) out.set(x, z);
  return out;
}

BinRel BinRel::intersect(const BinRel& other) const {
  check_size(other);
  BinRel out(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

BinRel BinRel::unite(const BinRel& other) const {
  check_size(other);
  BinRel out(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | other.bits_[i];
  return out;
}

BinRel BinRel::converse() const {
  BinRel out(n_);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (at(x, y)) out.set(y, x);
  return out;
}

bool BinRel::subset_of(const BinRel& other) const {
  check_size(other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

bool BinRel::operator==(const BinRel& other) const {
  return n_ == other.n_ && bits_ == other.bits_;
}

bool BinRel::reflexive() const {
  for (int i = 0; i < n_; ++i)
    if (!at(i, i)) return false;
  return true;
}

std::optional<std::pair<int, int>> BinRel::first_pair_not_in(const BinRel& other) const {
  check_size(other);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (at(x, y) && !other.at(x, y)) return std::make_pair(x, y);
  return std::nullopt;
}

std::vector<std::pair<int, int>> BinRel::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (at(x, y)) out.emplace_back(x, y);
  return out;
}

BinRel alt_compose(const BinRel& rho, const BinRel& sigma, int k) {
  if (k < 1) throw Error("alt_compose needs k >= 1, got " + std::to_string(k));
  BinRel out = rho;
  for (int i = 2; i <= k; ++i) out = out.compose(i % 2 == 0 ? sigma : rho);
  return out;
}

namespace {

// Renumbers blocks by first occurrence; returns the block count.
int normalize_blocks(std::vector<int>& blocks) {
  std::vector<int> remap(blocks.size(), -1);
  int next = 0;
  for (int& b : blocks) {
    if (remap[static_cast<std::size_t>(b)] < 0) remap[static_cast<std::size_t>(b)] = next++;
    b = remap[static_cast<std::size_t>(b)];
  }
  return next;
}

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
  std::vector<int> blocks() {
    std::vector<int> out(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) out[i] = find(static_cast<int>(i));
    return out;
  }
};

// Closes the equivalence in uf under one-position substitutions into every
// operation, making it the least congruence containing all its pairs.
void close_to_congruence(const FiniteAlgebra& alg, UnionFind& uf,
                         std::deque<std::pair<int, int>> work) {
  int s = alg.size();
  while (!work.empty()) {
    auto [u, v] = work.front();
    work.pop_front();
    for (const Operation& f : alg.ops()) {
      if (f.arity == 0) continue;
      int k = f.arity;
      std::vector<int> args(static_cast<std::size_t>(k), 0);
      for (int pos = 0; pos < k; ++pos) {
        // Odometer over the k-1 constant positions.
        std::vector<int> consts(static_cast<std::size_t>(k - 1), 0);
        while (true) {
          int ci = 0;
          for (int j = 0; j < k; ++j)
            if (j != pos) args[static_cast<std::size_t>(j)] = consts[static_cast<std::size_t>(ci++)];
          args[static_cast<std::size_t>(pos)] = u;
          int fu = f.apply(s, args);
          args[static_cast<std::size_t>(pos)] = v;
          int fv = f.apply(s, args);
          if (uf.merge(fu, fv)) work.emplace_back(fu, fv);
          int j = k - 2;
          for (; j >= 0; --j) {
            if (++consts[static_cast<std::size_t>(j)] < s) break;
            consts[static_cast<std::size_t>(j)] = 0;
          }
          if (j < 0) break;
        }
      }
    }
  }
}

}  // namespace

Congruence Congruence::identity(int n) {
  std::vector<int> blocks(static_cast<std::size_t>(n));
  std::iota(blocks.begin(), blocks.end(), 0);
  return Congruence(std::move(blocks), n);
}

Congruence Congruence::full(int n) {
  return Congruence(std::vector<int>(static_cast<std::size_t>(n), 0), n > 0 ? 1 : 0);
}

Congruence Congruence::from_blocks(std::vector<int> blocks) {
  for (int b : blocks)
    if (b < 0 || b >= static_cast<int>(blocks.size()))
      throw Error("block index " + std::to_string(b) + " out of range");
  int count = normalize_blocks(blocks);
  return Congruence(std::move(blocks), count);
}

BinRel Congruence::binrel() const {
  BinRel r(size());
  for (int x = 0; x < size(); ++x)
    for (int y = 0; y < size(); ++y)
      if (related(x, y)) r.set(x, y);
  return r;
}

std::string Congruence::block_text() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(blocks_[i]);
  }
  return out;
}

bool canonical_less(const Congruence& a, const Congruence& b) {
  if (a.num_blocks() != b.num_blocks()) return a.num_blocks() > b.num_blocks();
  return a.blocks() < b.blocks();
}

Congruence parse_congruence(const std::string& block_text, int size) {
  std::vector<int> blocks;
  std::size_t pos = 0;
  while (pos < block_text.size()) {
    while (pos < block_text.size() && block_text[pos] == ' ') ++pos;
    if (pos >= block_text.size()) break;
    std::size_t end = pos;
    while (end < block_text.size() && block_text[end] != ' ') ++end;
    blocks.push_back(std::stoi(block_text.substr(pos, end - pos)));
    pos = end;
  }
  if (static_cast<int>(blocks.size()) != size)
    throw Error("block vector has " + std::to_string(blocks.size()) + " entries, expected " +
                std::to_string(size));
  return Congruence::from_blocks(std::move(blocks));
}

bool is_congruence(const FiniteAlgebra& alg, const std::vector<int>& blocks) {
  int s = alg.size();
  if (static_cast<int>(blocks.size()) != s) return false;
  for (const Operation& f : alg.ops()) {
    if (f.arity == 0) continue;
    int k = f.arity;
    std::vector<int> args(static_cast<std::size_t>(k), 0);
    for (int u = 0; u < s; ++u)
      for (int v = u + 1; v < s; ++v) {
        if (blocks[static_cast<std::size_t>(u)] != blocks[static_cast<std::size_t>(v)]) continue;
        for (int pos = 0; pos < k; ++pos) {
          std::vector<int> consts(static_cast<std::size_t>(k - 1), 0);
          while (true) {
            int ci = 0;
            for (int j = 0; j < k; ++j)
              if (j != pos)
                args[static_cast<std::size_t>(j)] = consts[static_cast<std::size_t>(ci++)];
            args[static_cast<std::size_t>(pos)] = u;
            int fu = f.apply(s, args);
            args[static_cast<std::size_t>(pos)] = v;
            int fv = f.apply(s, args);
            if (blocks[static_cast<std::size_t>(fu)] != blocks[static_cast<std::size_t>(fv)])
              return false;
            int j = k - 2;
            for (; j >= 0; --j) {
              if (++consts[static_cast<std::size_t>(j)] < s) break;
              consts[static_cast<std::size_t>(j)] = 0;
            }
            if (j < 0) break;
          }
        }
      }
  }
  return true;
}

Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b) {
  UnionFind uf(alg.size());
  std::deque<std::pair<int, int>> work;
  if (uf.merge(a, b)) work.emplace_back(a, b);
  close_to_congruence(alg, uf, std::move(work));
  return Congruence::from_blocks(uf.blocks());
}

Congruence congruence_join(const FiniteAlgebra& alg, const Congruence& c1, const Congruence& c2) {
  UnionFind uf(alg.size());
  std::deque<std::pair<int, int>> work;
  for (int x = 0; x < alg.size(); ++x)
    for (int y = x + 1; y < alg.size(); ++y)
      if (c1.related(x, y) || c2.related(x, y))
        if (uf.merge(x, y)) work.emplace_back(x, y);
  close_to_congruence(alg, uf, std::move(work));
  return Congruence::from_blocks(uf.blocks());
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& alg, std::size_t cap) {
  int s = alg.size();
  std::set<std::vector<int>> seen;
  std::vector<Congruence> found;
  auto add = [&](const Congruence& c) {
    if (seen.insert(c.blocks()).second) {
      found.push_back(c);
      if (found.size() > cap)
        throw ResourceLimitError("congruence count exceeds cap " + std::to_string(cap));
      return true;
    }
    return false;
  };

  add(Congruence::identity(s));
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b) add(principal_congruence(alg, a, b));

  // Close under pairwise join.
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(congruence_join(alg, found[i], found[j]));

  std::sort(found.begin(), found.end(), canonical_less);
  return found;
}

}  // namespace jlab
