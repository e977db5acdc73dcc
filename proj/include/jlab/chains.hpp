#ifndef JLAB_CHAINS_HPP_
#define JLAB_CHAINS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "jlab/algebra.hpp"
#include "jlab/maltsev.hpp"
#include "jlab/relation.hpp"

namespace jlab {

enum class StepLabel { Beta, Gamma, AlphaBeta, AlphaGamma, Equal };

std::string step_label_text(StepLabel label);

// One step of a witness chain. Equal steps have from == to and justify an
// element identity (a linking equation); relation steps record which
// congruence product factor the pair lands in.
struct LabeledStep {
  int from = 0;
  int to = 0;
  StepLabel label = StepLabel::Equal;
  std::string justification;
};

// An element path from a to e with per-step relation labels.
// factor_count() collapses adjacent steps with the same label and drops
// equal steps; structural_pattern records the factor shape of the
// construction itself, which reflexive steps do not shrink.
struct WitnessChain {
  int a = 0;
  int e = 0;
  std::vector<LabeledStep> steps;
  std::vector<StepLabel> structural_pattern;
  int structural_factors = 0;

  std::vector<StepLabel> collapsed_labels() const;
  int factor_count() const { return static_cast<int>(collapsed_labels().size()); }
};

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool ok = true;

  void add(std::string name, bool check_ok, std::string detail = "");
  std::string first_failure() const;
  // Index parsed from the first failing step check, -1 when none.
  int first_failing_step() const;
};

// Shared inputs of the chain builders: the algebra, a term system, the
// congruence triple and the witness chain a = b_0 beta b_1 gamma b_2 ...
struct ChainContext {
  const FiniteAlgebra* alg = nullptr;
  JonssonSystem system;
  Congruence alpha = Congruence::identity(1);
  Congruence beta = Congruence::identity(1);
  Congruence gamma = Congruence::identity(1);
  std::vector<int> b;
  // Set when the caller has already run verify_system for this algebra;
  // the builders then skip the re-check.
  bool system_verified = false;

  int n() const { return static_cast<int>(b.size()) - 1; }
  int a() const { return b.front(); }
  int c() const { return b.back(); }
  void validate() const;  // alternation of b and a alpha c
};

// The laddered witness structure with segments A_0..A_{n-1}, B_0..B_ell,
// C_1..C_n. Invariants: the concatenation alternates beta/gamma starting
// with beta; all segment elements lie in one alpha class; every B_j is
// connected to both endpoints by an n-factor alternating witness.
struct NlnChain {
  int n = 0;
  int ell = 0;
  std::vector<int> A;
  std::vector<int> B;
  std::vector<int> C;
  std::vector<std::vector<int>> to_witness;    // per j: a .. B_j, n steps
  std::vector<std::vector<int>> from_witness;  // per j: B_j .. c, n steps
};

enum class ReadingPolicy { TryAll, Strict };

// Candidate readings chosen while reducing (the source displays disagree
// on B'_0 and on the first argument of the new C-part).
struct ReduceReport {
  std::string b0_reading;
  std::string c_first_reading;
  std::vector<std::string> rejected;
};

// The 8-factor chain through F = t2(t2(a,d,e), t2(a,c,e), t2(a,b,e)) for a
// jonsson-4 system and witnesses a beta b gamma c beta d gamma e. With
// defective set, x = t2(x,y,x) is not assumed; the stronger premise
// a alpha c alpha e is required instead and the two steps flanking F stay
// plain beta/gamma, giving the seven-factor pattern with one composite
// alpha(gamma o beta) factor in the middle.
WitnessChain build_core_chain(const ChainContext& ctx, bool defective = false);

// The n-(n-2)-n ladder A_i = t1(a,b_i,c), B_j = t2(a,b_{n-1-j},c),
// C_i = t3(a,b_i,c) with both endpoint witnesses per B_j.
NlnChain initial_chain(const ChainContext& ctx);

// One ladder reduction ell -> ell-2 via the primed elements
// A'_i = t1(A_i, X_i, B_{ell-1}), B'_j = t2(B_0, ..., ...),
// C'_i = t3(-, Y_i, C_i), with endpoint witnesses rebuilt by merging the
// old ones argumentwise through t2.
NlnChain reduce_chain(const ChainContext& ctx, const NlnChain& chain,
                      ReadingPolicy policy = ReadingPolicy::TryAll,
                      ReduceReport* report = nullptr);

struct FullReduction {
  NlnChain final_chain;
  WitnessChain flattened;
  std::vector<ReduceReport> reduce_reports;
};

// initial_chain followed by reductions down to ell = 0 (n even) or
// ell = 1 (n odd), then flattened to the alternating factor chain of
// 2n resp. 2n+1 factors. The flattened steps keep their alternation
// labels so the chain records the full factor shape; degenerate steps
// stay valid by reflexivity.
FullReduction full_reduction(const ChainContext& ctx,
                             ReadingPolicy policy = ReadingPolicy::TryAll);

// The 3n-4 factor chain for a jonsson-n system (n even >= 4): the core
// chain prefix to F, then term-pair extension blocks stepping the chain
// head from t2 up to t_{n-2}, then the mirrored suffix.
WitnessChain build_extended_chain(const ChainContext& ctx);

// The alvin-headed chain for an alvin-(n+2) system (n even >= 4): at most
// 3n-2 factors, first gamma, last beta. Needs a bridge element X with
// a alpha-gamma X alpha-beta t0(a,a,e) and the mirror-side analogue;
// absent ones are searched for, and NoBridgeElementError reports an
// exhausted search.
WitnessChain build_alvin_chain(const ChainContext& ctx, const JonssonSystem& alvin,
                               std::optional<int> left_bridge = std::nullopt,
                               std::optional<int> right_bridge = std::nullopt);

// Re-checks every step of a chain against its labelled relation plus
// endpoint continuity. Independent of the builders.
ValidationReport validate_chain(const FiniteAlgebra& alg, const WitnessChain& chain,
                                const Congruence& alpha, const Congruence& beta,
                                const Congruence& gamma);

// Re-checks every ladder invariant: segment sizes, alternation, the alpha
// block and both endpoint witnesses of every B_j.
ValidationReport validate_nln(const FiniteAlgebra& alg, const NlnChain& chain,
                              const Congruence& alpha, const Congruence& beta,
                              const Congruence& gamma, int a, int c);

std::string render_chain_text(const WitnessChain& chain);

}  // namespace jlab

#endif  // JLAB_CHAINS_HPP_
