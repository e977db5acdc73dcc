#include "jlab/closure.hpp"

#include <unordered_map>

#include "jlab/errors.hpp"

namespace jlab {

namespace {

struct VectorHash {
  std::size_t operator()(const PowerVector& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

int ClosureSet::find(const PowerVector& v) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == v) return static_cast<int>(i);
  return -1;
}

Term ClosureSet::term_for(const FiniteAlgebra& alg, int index) const {
  const Derivation& d = derivations_[static_cast<std::size_t>(index)];
  if (d.seed >= 0) return Term::variable(d.seed);
  std::vector<Term> args;
  args.reserve(d.children.size());
  for (int c : d.children) args.push_back(term_for(alg, c));
  return Term::apply(alg.op(d.op).symbol, std::move(args));
}

PowerVector eval_pointwise(const FiniteAlgebra& alg, const Term& t,
                           const std::vector<PowerVector>& seeds) {
  if (t.is_var()) {
    if (t.var >= static_cast<int>(seeds.size()))
      throw Error("term variable " + std::to_string(t.var) + " has no seed");
    return seeds[static_cast<std::size_t>(t.var)];
  }
  int op = alg.op_index(t.symbol);
  if (op < 0) throw UnknownSymbolError(t.symbol);
  const Operation& f = alg.op(op);
  if (static_cast<int>(t.args.size()) != f.arity)
    throw ArityMismatchError(t.symbol, f.arity, static_cast<int>(t.args.size()));
  std::vector<PowerVector> kids;
  kids.reserve(t.args.size());
  for (const Term& a : t.args) kids.push_back(eval_pointwise(alg, a, seeds));
  std::size_t width = seeds.empty() ? 0 : seeds[0].size();
  PowerVector out(width);
  std::vector<int> args(t.args.size());
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = 0; j < kids.size(); ++j) args[j] = kids[j][i];
    out[i] = f.apply(alg.size(), args);
  }
  return out;
}

ClosureSet closure_iterate(const FiniteAlgebra& alg, std::vector<PowerVector> seeds,
                           const ClosureOptions& options,
                           const std::function<bool(const ClosureSet&)>& on_round) {
  if (seeds.empty()) throw Error("closure needs a non-empty seed set");
  std::size_t width = seeds[0].size();
  if (width == 0) throw Error("closure seeds need at least one coordinate");
  for (const PowerVector& v : seeds) {
    if (v.size() != width) throw SizeMismatchError("closure seeds have differing index sets");
    for (int x : v)
      if (x < 0 || x >= alg.size())
        throw Error("seed coordinate " + std::to_string(x) + " outside universe");
  }

  ClosureSet cs;
  cs.seed_count_ = static_cast<int>(seeds.size());
  std::unordered_map<PowerVector, int, VectorHash> index;
  auto add = [&](PowerVector v, Derivation d) {
    auto [it, fresh] = index.emplace(std::move(v), static_cast<int>(cs.elements_.size()));
    if (!fresh) return false;
    cs.elements_.push_back(it->first);
    cs.derivations_.push_back(std::move(d));
    return true;
  };

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    Derivation d;
    d.seed = static_cast<int>(i);
    add(seeds[i], std::move(d));
  }

  std::size_t round_start = 0;
  bool capped = cs.elements_.size() > options.cap;
  while (!capped) {
    std::size_t round_end = cs.elements_.size();
    if (on_round && on_round(cs)) {
      cs.complete_ = false;
      return cs;
    }
    if (round_start == round_end && round_start != 0) break;  // fixpoint
    bool grew = false;
    for (std::size_t op_i = 0; op_i < alg.ops().size() && !capped; ++op_i) {
      const Operation& f = alg.ops()[op_i];
      int k = f.arity;
      if (k == 0) {
        PowerVector v(width, f.table[0]);
        Derivation d;
        d.op = static_cast<int>(op_i);
        grew |= add(std::move(v), std::move(d));
        capped = cs.elements_.size() > options.cap;
        continue;
      }
      // All argument tuples over the current set with at least one child
      // from the newest round (round_start..round_end).
      std::vector<std::size_t> tuple(static_cast<std::size_t>(k), 0);
      while (!capped) {
        std::size_t max_child = 0;
        for (std::size_t t : tuple) max_child = std::max(max_child, t);
        bool touches_new = round_start == 0 || max_child >= round_start;
        if (touches_new) {
          PowerVector v(width);
          std::vector<int> args(static_cast<std::size_t>(k));
          for (std::size_t i = 0; i < width; ++i) {
            for (int j = 0; j < k; ++j) args[static_cast<std::size_t>(j)] = cs.elements_[tuple[static_cast<std::size_t>(j)]][i];
            v[i] = f.apply(alg.size(), args);
          }
          Derivation d;
          d.op = static_cast<int>(op_i);
          d.children.assign(tuple.begin(), tuple.end());
          grew |= add(std::move(v), std::move(d));
          capped = cs.elements_.size() > options.cap;
        }
        int j = k - 1;
        for (; j >= 0; --j) {
          if (++tuple[static_cast<std::size_t>(j)] < round_end) break;
          tuple[static_cast<std::size_t>(j)] = 0;
        }
        if (j < 0) break;
      }
    }
    round_start = round_end;
    if (!grew && !capped) break;  // fixpoint
  }

  cs.complete_ = !capped;
  if (capped && on_round) on_round(cs);
  return cs;
}

ClosureSet closure(const FiniteAlgebra& alg, std::vector<PowerVector> seeds,
                   const ClosureOptions& options) {
  ClosureSet cs = closure_iterate(alg, std::move(seeds), options, nullptr);
  if (!cs.complete())
    throw ResourceLimitError("closed set exceeds cap " + std::to_string(options.cap));
  return cs;
}

}  // namespace jlab
