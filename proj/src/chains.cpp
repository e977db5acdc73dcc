#include "jlab/chains.hpp"

#include <algorithm>

#include "jlab/errors.hpp"
#include "jlab/term.hpp"

namespace jlab {

namespace {

int ev(const FiniteAlgebra& alg, const Term& t, int x, int y, int z) {
  return eval_term(alg, t, {x, y, z});
}

std::vector<StepLabel> collapse_labels(const std::vector<StepLabel>& labels) {
  std::vector<StepLabel> out;
  for (StepLabel l : labels) {
    if (l == StepLabel::Equal) continue;
    if (!out.empty() && out.back() == l) continue;
    out.push_back(l);
  }
  return out;
}

// Appends steps while verifying each one against the congruence triple.
// Builders fail loudly here; validate_chain re-checks everything after.
struct StepSink {
  StepSink(const FiniteAlgebra& alg, const Congruence& alpha, const Congruence& beta,
           const Congruence& gamma)
      : alg(alg), alpha(alpha), beta(beta), gamma(gamma) {}

  const FiniteAlgebra& alg;
  const Congruence& alpha;
  const Congruence& beta;
  const Congruence& gamma;
  std::vector<LabeledStep> steps;
  std::vector<StepLabel> plan;
  int current = -1;

  void start(int a) { current = a; }

  void require(bool ok, const std::string& what, const std::string& detail) {
    if (!ok) throw StepValidationError(static_cast<int>(steps.size()), what, detail);
  }

  void verify_equal(int u, int v, const std::string& equation) {
    require(u == v, "equality " + equation,
            "elements " + std::to_string(u) + " and " + std::to_string(v) + " differ");
  }

  void relation(int to, StepLabel intended, std::string justification) {
    bool ok = true;
    switch (intended) {
      case StepLabel::Beta: ok = beta.related(current, to); break;
      case StepLabel::Gamma: ok = gamma.related(current, to); break;
      case StepLabel::AlphaBeta:
        ok = alpha.related(current, to) && beta.related(current, to);
        break;
      case StepLabel::AlphaGamma:
        ok = alpha.related(current, to) && gamma.related(current, to);
        break;
      case StepLabel::Equal: ok = current == to; break;
    }
    require(ok, step_label_text(intended),
            "pair (" + std::to_string(current) + "," + std::to_string(to) + ") " + justification);
    plan.push_back(intended);
    LabeledStep s;
    s.from = current;
    s.to = to;
    s.label = (current == to) ? StepLabel::Equal : intended;
    s.justification = std::move(justification);
    steps.push_back(std::move(s));
    current = to;
  }

  void equality(int to, std::string equation) {
    verify_equal(current, to, equation);
    LabeledStep s;
    s.from = current;
    s.to = to;
    s.label = StepLabel::Equal;
    s.justification = std::move(equation);
    steps.push_back(std::move(s));
  }
};

std::vector<LabeledStep> reverse_steps(const std::vector<LabeledStep>& steps) {
  std::vector<LabeledStep> out;
  out.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    LabeledStep s = *it;
    std::swap(s.from, s.to);
    out.push_back(std::move(s));
  }
  return out;
}

struct HalfResult {
  std::vector<LabeledStep> steps;
  std::vector<StepLabel> plan;
  int terminal = -1;
};

// The displayed half from one endpoint to F:
//   p -> t1(t1(p,w1,q), t2(p,w1,w1), t2(p,w2,q)) -> ... ->
//   t2(t2(p,w3,q), t2(p,w2,q), t2(p,w1,q)) = F
// r1/r2 are the relation roles of the side's witness chain (beta, gamma for
// the forward side); with alpha_on_f false, the final step stays plain.
HalfResult core_half(const FiniteAlgebra& alg, const Congruence& alpha, const Congruence& beta,
                     const Congruence& gamma, const Term& t1, const Term& t2,
                     const std::string& n1, const std::string& n2, int p, int q, int w1, int w2,
                     int w3, StepLabel l1, StepLabel l2, StepLabel lf,
                     const std::array<std::string, 5>& nm) {
  StepSink sink{alg, alpha, beta, gamma};
  sink.start(p);
  auto T1 = [&](int x, int y, int z) { return ev(alg, t1, x, y, z); };
  auto T2 = [&](int x, int y, int z) { return ev(alg, t2, x, y, z); };
  int t2pw2q = T2(p, w2, q);

  sink.verify_equal(p, ev(alg, t1, p, p, t2pw2q), "x = " + n1 + "(x,x,z)");
  sink.verify_equal(p, ev(alg, t1, T1(p, p, q), T2(p, p, p), t2pw2q),
                    "x = " + n1 + "(x,x,z) with " + n2 + " idempotent");

  auto f3 = [&](const std::string& f, const std::string& a1, const std::string& a2,
                const std::string& a3) { return f + "(" + a1 + "," + a2 + "," + a3 + ")"; };
  auto j1 = [&](const std::string& a1, const std::string& a2, const std::string& a3) {
    return f3(n1, f3(n1, nm[0], a1, nm[4]), f3(n2, nm[0], a2, a3), f3(n2, nm[0], nm[2], nm[4]));
  };

  sink.relation(ev(alg, t1, T1(p, w1, q), T2(p, w1, w1), t2pw2q), l1, j1(nm[1], nm[1], nm[1]));
  sink.relation(ev(alg, t1, T1(p, w2, q), T2(p, w2, w2), t2pw2q), l2, j1(nm[2], nm[2], nm[2]));
  sink.relation(ev(alg, t1, T1(p, w3, q), T2(p, w2, w3), t2pw2q), l1, j1(nm[3], nm[2], nm[3]));
  sink.relation(ev(alg, t1, T1(p, q, q), t2pw2q, t2pw2q), l2, j1(nm[4], nm[2], nm[4]));
  sink.equality(ev(alg, t2, T2(p, q, q), t2pw2q, t2pw2q),
                n1 + "(x,z,z) = " + n2 + "(x,z,z)");
  sink.relation(ev(alg, t2, T2(p, w3, q), t2pw2q, T2(p, w1, q)), lf,
                f3(n2, f3(n2, nm[0], nm[3], nm[4]), f3(n2, nm[0], nm[2], nm[4]),
                   f3(n2, nm[0], nm[1], nm[4])));

  HalfResult out;
  out.steps = std::move(sink.steps);
  out.plan = std::move(sink.plan);
  out.terminal = sink.current;
  return out;
}

// One extension block: moves the chain head from
//   u(u(a,d,e), u(a,c,e), u(a,b,e)) to w(w(a,d,e), w(a,c,e), w(a,b,e))
// in six factors, where (u, v, w) are three consecutive terms of the chain
// with u at an even position. Every two-way reading of a linked pair is
// checked as an element equality.
void extension_block(StepSink& sink, const FiniteAlgebra& alg, const Term& u, const Term& v,
                     const Term& w, const std::string& nu, const std::string& nv,
                     const std::string& nw, int a, int b, int c, int d, int e, StepLabel lb,
                     StepLabel lg) {
  auto U = [&](int x, int y, int z) { return ev(alg, u, x, y, z); };
  auto V = [&](int x, int y, int z) { return ev(alg, v, x, y, z); };
  auto W = [&](int x, int y, int z) { return ev(alg, w, x, y, z); };

  sink.verify_equal(sink.current, ev(alg, u, U(a, d, e), U(a, c, e), U(a, b, e)),
                    "block entry " + nu + "(" + nu + "(a,d,e)," + nu + "(a,c,e)," + nu +
                        "(a,b,e))");

  std::string uv = nu + "(x,x,z) = " + nv + "(x,x,z)";
  std::string vw = nv + "(x,z,z) = " + nw + "(x,z,z)";

  sink.relation(ev(alg, u, U(a, c, e), U(a, c, e), U(a, a, e)), lb,
                nu + "(" + nu + "(a,c,e)," + nu + "(a,c,e)," + nu + "(a,a,e))");
  sink.verify_equal(U(a, a, e), V(a, a, e), uv);
  sink.equality(ev(alg, v, U(a, c, e), U(a, c, e), V(a, a, e)), uv);
  sink.relation(ev(alg, v, U(a, c, e), U(b, c, e), V(a, b, e)), lb,
                nv + "(" + nu + "(a,c,e)," + nu + "(b,c,e)," + nv + "(a,b,e))");
  sink.verify_equal(U(c, c, e), V(c, c, e), uv);
  sink.relation(ev(alg, v, U(a, b, e), U(c, c, e), V(a, c, e)), lg,
                nv + "(" + nu + "(a,b,e)," + nu + "|" + nv + "(c,c,e)," + nv + "(a,c,e))");
  sink.relation(ev(alg, v, U(a, a, e), V(c, d, e), V(a, d, e)), lb,
                nv + "(" + nu + "|" + nv + "(a,a,e)," + nv + "(c,d,e)," + nv + "(a,d,e))");
  sink.relation(ev(alg, v, V(a, b, e), V(c, d, e), V(a, d, e)), lb,
                nv + "(" + nv + "(a,b,e)," + nv + "(c,d,e)," + nv + "(a,d,e))");
  sink.verify_equal(V(b, e, e), W(b, e, e), vw);
  sink.verify_equal(V(a, e, e), W(a, e, e), vw);
  sink.relation(ev(alg, v, V(a, c, e), V(b, e, e), V(a, e, e)), lg,
                nv + "(" + nv + "(a,c,e)," + nv + "|" + nw + "(b,e,e)," + nv + "|" + nw +
                    "(a,e,e))");
  sink.relation(ev(alg, v, V(a, c, e), W(b, d, e), W(a, d, e)), lg,
                nv + "(" + nv + "(a,c,e)," + nw + "(b,d,e)," + nw + "(a,d,e))");
  int e9 = ev(alg, v, V(a, d, e), W(a, c, e), W(a, c, e));
  sink.verify_equal(e9, ev(alg, w, V(a, d, e), W(a, c, e), W(a, c, e)),
                    nv + "(X,Y,Y) = " + nw + "(X,Y,Y)");
  sink.relation(e9, lb,
                nv + "|" + nw + "(" + nv + "(a,d,e)," + nw + "(a,c,e)," + nw + "(a,c,e))");
  sink.verify_equal(V(a, e, e), W(a, e, e), vw);
  sink.relation(ev(alg, w, V(a, e, e), W(a, c, e), W(a, c, e)), lg,
                nw + "(" + nv + "|" + nw + "(a,e,e)," + nw + "(a,c,e)," + nw + "(a,c,e))");
  sink.relation(ev(alg, w, W(a, d, e), W(a, c, e), W(a, b, e)), lg,
                nw + "(" + nw + "(a,d,e)," + nw + "(a,c,e)," + nw + "(a,b,e))");
}

void require_flavor(const JonssonSystem& system, FlavorKind kind, const std::string& who) {
  if (system.flavor.kind != kind)
    throw Error(who + ": system flavor is " + system.flavor.text());
}

void require_verified(const FiniteAlgebra& alg, const JonssonSystem& system) {
  SystemReport report = verify_system(alg, system);
  if (!report.ok)
    throw VerificationFailedError("system fails its defining equations: " +
                                  report.first_failure());
}

}  // namespace

std::string step_label_text(StepLabel label) {
  switch (label) {
    case StepLabel::Beta: return "beta";
    case StepLabel::Gamma: return "gamma";
    case StepLabel::AlphaBeta: return "alpha_beta";
    case StepLabel::AlphaGamma: return "alpha_gamma";
    case StepLabel::Equal: return "equal";
  }
  return "?";
}

std::vector<StepLabel> WitnessChain::collapsed_labels() const {
  std::vector<StepLabel> raw;
  raw.reserve(steps.size());
  for (const LabeledStep& s : steps) raw.push_back(s.label);
  return collapse_labels(raw);
}

void ValidationReport::add(std::string name, bool check_ok, std::string detail) {
  ok = ok && check_ok;
  checks.push_back({std::move(name), check_ok, std::move(detail)});
}

std::string ValidationReport::first_failure() const {
  for (const CheckResult& c : checks)
    if (!c.ok) return c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
  return "";
}

int ValidationReport::first_failing_step() const {
  for (const CheckResult& c : checks)
    if (!c.ok && c.name.rfind("step ", 0) == 0) return std::stoi(c.name.substr(5));
  return -1;
}

void ChainContext::validate() const {
  if (!alg) throw Error("chain context has no algebra");
  if (b.size() < 2) throw Error("witness chain needs at least two elements");
  int s = alg->size();
  for (int x : b)
    if (x < 0 || x >= s) throw Error("witness element " + std::to_string(x) + " outside universe");
  for (int i = 0; i + 1 < static_cast<int>(b.size()); ++i) {
    const Congruence& rel = (i % 2 == 0) ? beta : gamma;
    if (!rel.related(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i + 1)]))
      throw StepValidationError(i, i % 2 == 0 ? "beta" : "gamma",
                                "witness chain pair (" + std::to_string(b[static_cast<std::size_t>(i)]) +
                                    "," + std::to_string(b[static_cast<std::size_t>(i + 1)]) + ")");
  }
  if (!alpha.related(a(), c()))
    throw StepValidationError(0, "alpha", "endpoints " + std::to_string(a()) + " and " +
                                              std::to_string(c()) + " not alpha-related");
}

WitnessChain build_core_chain(const ChainContext& ctx, bool defective) {
  ctx.validate();
  if (ctx.n() != 4) throw Error("core chain needs witnesses a,b,c,d,e");
  const FiniteAlgebra& alg = *ctx.alg;

  if (defective) {
    if (ctx.system.flavor.kind != FlavorKind::Defective4 &&
        !(ctx.system.flavor == SystemFlavor::jonsson(4)))
      throw Error("defective core chain needs a defective-4 or jonsson-4 system");
    if (!ctx.system_verified) {
      JonssonSystem as_defective{SystemFlavor::defective4(), ctx.system.terms};
      require_verified(alg, as_defective);
    }
    // The composite-factor premise: the middle witness is alpha-related to
    // both endpoints.
    if (!ctx.alpha.related(ctx.a(), ctx.b[2]) || !ctx.alpha.related(ctx.b[2], ctx.c()))
      throw StepValidationError(0, "alpha",
                                "defective premise needs a alpha c' alpha e for the middle "
                                "witness c'");
  } else {
    require_flavor(ctx.system, FlavorKind::Jonsson, "core chain");
    if (ctx.system.flavor.n != 4) throw Error("core chain needs a jonsson-4 system");
    if (!ctx.system_verified) require_verified(alg, ctx.system);
  }

  const Term& t1 = ctx.system.terms[0];
  const Term& t2 = ctx.system.terms[1];
  const Term& t3 = ctx.system.terms[2];
  Term s1 = reverse_term(t3);
  Term s2 = reverse_term(t2);
  int a = ctx.b[0], b = ctx.b[1], c = ctx.b[2], d = ctx.b[3], e = ctx.b[4];

  StepLabel lb = StepLabel::AlphaBeta, lg = StepLabel::AlphaGamma;
  StepLabel f_fwd = defective ? StepLabel::Gamma : lg;
  StepLabel f_mir = defective ? StepLabel::Beta : lb;

  HalfResult fwd = core_half(alg, ctx.alpha, ctx.beta, ctx.gamma, t1, t2, "t1", "t2", a, e, b, c,
                             d, lb, lg, f_fwd, {"a", "b", "c", "d", "e"});
  HalfResult mir = core_half(alg, ctx.alpha, ctx.beta, ctx.gamma, s1, s2, "t3*", "t2*", e, a, d,
                             c, b, lg, lb, f_mir, {"e", "d", "c", "b", "a"});
  if (fwd.terminal != mir.terminal)
    throw StepValidationError(static_cast<int>(fwd.steps.size()), "mirror junction",
                              "forward F=" + std::to_string(fwd.terminal) + " mirrored F=" +
                                  std::to_string(mir.terminal));

  WitnessChain chain;
  chain.a = a;
  chain.e = e;
  chain.steps = fwd.steps;
  for (LabeledStep& s : reverse_steps(mir.steps)) chain.steps.push_back(std::move(s));

  {
    std::vector<StepLabel> plan = fwd.plan;
    std::vector<StepLabel> mplan = mir.plan;
    std::reverse(mplan.begin(), mplan.end());
    plan.insert(plan.end(), mplan.begin(), mplan.end());
    chain.structural_pattern = collapse_labels(plan);
  }
  if (defective) {
    // Seven-factor shape: the plain steps around F group into one
    // alpha(gamma o beta) factor between two alpha-block elements.
    int e3 = fwd.steps[2].to;
    int m3 = mir.steps[2].to;
    int f = fwd.terminal;
    if (!(ctx.gamma.related(e3, f) && ctx.beta.related(f, m3) && ctx.alpha.related(e3, m3)))
      throw StepValidationError(3, "alpha(gamma o beta)",
                                "composite factor endpoints " + std::to_string(e3) + ", " +
                                    std::to_string(m3));
    chain.structural_factors = 7;
  } else {
    chain.structural_factors = static_cast<int>(chain.structural_pattern.size());
  }

  ValidationReport check = validate_chain(alg, chain, ctx.alpha, ctx.beta, ctx.gamma);
  if (!check.ok)
    throw StepValidationError(check.first_failing_step(), "chain validation",
                              check.first_failure());
  return chain;
}

NlnChain initial_chain(const ChainContext& ctx) {
  ctx.validate();
  require_flavor(ctx.system, FlavorKind::Jonsson, "initial chain");
  if (ctx.system.flavor.n != 4) throw Error("initial chain needs a jonsson-4 system");
  if (!ctx.system_verified) require_verified(*ctx.alg, ctx.system);
  int n = ctx.n();
  if (n < 2) throw Error("initial chain needs n >= 2");

  const FiniteAlgebra& alg = *ctx.alg;
  const Term& t1 = ctx.system.terms[0];
  const Term& t2 = ctx.system.terms[1];
  const Term& t3 = ctx.system.terms[2];
  Term rt2 = reverse_term(t2);
  int a = ctx.a(), c = ctx.c();

  NlnChain out;
  out.n = n;
  out.ell = n - 2;
  for (int i = 0; i < n; ++i) out.A.push_back(ev(alg, t1, a, ctx.b[static_cast<std::size_t>(i)], c));
  for (int j = 0; j <= out.ell; ++j)
    out.B.push_back(ev(alg, t2, a, ctx.b[static_cast<std::size_t>(n - 1 - j)], c));
  for (int i = 1; i <= n; ++i) out.C.push_back(ev(alg, t3, a, ctx.b[static_cast<std::size_t>(i)], c));

  // Endpoint witnesses: walk t2(a, b_k, b_k) out to position n-1-j, then
  // slide the third argument up to c; the from-side is the same walk in the
  // reversed context, then reversed.
  for (int j = 0; j <= out.ell; ++j) {
    std::vector<int> to;
    for (int k = 0; k <= n; ++k) {
      int mid = std::min(k, n - 1 - j);
      to.push_back(ev(alg, t2, a, ctx.b[static_cast<std::size_t>(mid)],
                      ctx.b[static_cast<std::size_t>(k)]));
    }
    out.to_witness.push_back(std::move(to));

    int jr = out.ell - j;
    std::vector<int> from;
    for (int k = 0; k <= n; ++k) {
      int mid = std::min(k, n - 1 - jr);
      // Reversed context: endpoints (c, a), chain b'_k = b_{n-k}, term rt2.
      from.push_back(ev(alg, rt2, c, ctx.b[static_cast<std::size_t>(n - mid)],
                        ctx.b[static_cast<std::size_t>(n - k)]));
    }
    std::reverse(from.begin(), from.end());
    out.from_witness.push_back(std::move(from));
  }

  ValidationReport check = validate_nln(alg, out, ctx.alpha, ctx.beta, ctx.gamma, a, c);
  if (!check.ok)
    throw StepValidationError(check.first_failing_step(), "ladder validation",
                              check.first_failure());
  return out;
}

namespace {

// Argumentwise merge of three witness sequences through t2.
std::vector<int> merge_witnesses(const FiniteAlgebra& alg, const Term& t2,
                                 const std::vector<int>& f, const std::vector<int>& g,
                                 const std::vector<int>& h) {
  std::vector<int> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out.push_back(ev(alg, t2, f[k], g[k], h[k]));
  return out;
}

struct ReduceCandidate {
  std::string b0_reading;
  std::string c_first_reading;
  int b0_value;
  int b0_mid_index;   // second witness index for the j = 0 merge
  int b0_last_index;  // third witness index for the j = 0 merge
  int c_first_elem;
};

}  // namespace

NlnChain reduce_chain(const ChainContext& ctx, const NlnChain& chain, ReadingPolicy policy,
                      ReduceReport* report) {
  const FiniteAlgebra& alg = *ctx.alg;
  const Term& t1 = ctx.system.terms[0];
  const Term& t2 = ctx.system.terms[1];
  const Term& t3 = ctx.system.terms[2];
  int n = chain.n, l = chain.ell;
  bool even = n % 2 == 0;
  if (even && l < 2) throw Error("even reduction needs ell >= 2");
  if (!even && l < 3) throw Error("odd reduction needs ell >= 3 (B_{ell-2} is undefined at ell = 1)");
  int a = ctx.a(), c = ctx.c();

  const std::vector<int>& X = chain.to_witness[static_cast<std::size_t>(l - 1)];
  const std::vector<int>& Y =
      even ? chain.from_witness[1] : chain.from_witness[0];
  const std::vector<int>& B = chain.B;

  std::vector<ReduceCandidate> candidates;
  if (even) {
    int listed = ev(alg, t2, B[0], B[static_cast<std::size_t>(l - 1)],
                    B[static_cast<std::size_t>(l - 1)]);
    int verified = ev(alg, t2, B[0], B[static_cast<std::size_t>(l - 1)],
                      B[static_cast<std::size_t>(l)]);
    for (int b0 = 0; b0 < 2; ++b0)
      for (int cf = 0; cf < 2; ++cf)
        candidates.push_back({b0 == 0 ? "t2(B0,B[l-1],B[l-1])" : "t2(B0,B[l-1],B[l])",
                              cf == 0 ? "B1" : "B0", b0 == 0 ? listed : verified, l - 1,
                              b0 == 0 ? l - 1 : l, cf == 0 ? B[1] : B[0]});
  } else {
    candidates.push_back({"t2(B0,B[l-2],B[l-1])", "B0",
                          ev(alg, t2, B[0], B[static_cast<std::size_t>(l - 2)],
                             B[static_cast<std::size_t>(l - 1)]),
                          l - 2, l - 1, B[0]});
  }
  if (policy == ReadingPolicy::Strict) candidates.resize(1);

  std::vector<std::string> rejected;
  for (const ReduceCandidate& cand : candidates) {
    NlnChain out;
    out.n = n;
    out.ell = l - 2;

    for (int i = 0; i < n; ++i)
      out.A.push_back(ev(alg, t1, chain.A[static_cast<std::size_t>(i)],
                         X[static_cast<std::size_t>(i)], B[static_cast<std::size_t>(l - 1)]));
    out.B.push_back(cand.b0_value);
    for (int j = 1; j <= l - 2; ++j) {
      int mid = even ? l - j - 1 : l - j - 2;
      out.B.push_back(ev(alg, t2, B[0], B[static_cast<std::size_t>(mid)],
                         B[static_cast<std::size_t>(l)]));
    }
    for (int i = 1; i <= n; ++i)
      out.C.push_back(ev(alg, t3, cand.c_first_elem, Y[static_cast<std::size_t>(i)],
                         chain.C[static_cast<std::size_t>(i - 1)]));

    for (int j = 0; j <= out.ell; ++j) {
      int mid = j == 0 ? cand.b0_mid_index : (even ? l - j - 1 : l - j - 2);
      int last = j == 0 ? cand.b0_last_index : l;
      out.to_witness.push_back(merge_witnesses(
          alg, t2, chain.to_witness[0], chain.to_witness[static_cast<std::size_t>(mid)],
          chain.to_witness[static_cast<std::size_t>(last)]));
      out.from_witness.push_back(merge_witnesses(
          alg, t2, chain.from_witness[0], chain.from_witness[static_cast<std::size_t>(mid)],
          chain.from_witness[static_cast<std::size_t>(last)]));
    }

    ValidationReport check = validate_nln(alg, out, ctx.alpha, ctx.beta, ctx.gamma, a, c);
    if (check.ok) {
      if (report) {
        report->b0_reading = cand.b0_reading;
        report->c_first_reading = cand.c_first_reading;
        report->rejected = rejected;
      }
      return out;
    }
    rejected.push_back("B'0 = " + cand.b0_reading + ", C' head " + cand.c_first_reading + ": " +
                       check.first_failure());
    if (policy == ReadingPolicy::Strict)
      throw StepValidationError(check.first_failing_step(), "strict reading", rejected.back());
  }
  throw AmbiguousFormulaError(std::move(rejected));
}

FullReduction full_reduction(const ChainContext& ctx, ReadingPolicy policy) {
  FullReduction out;
  out.final_chain = initial_chain(ctx);
  int n = out.final_chain.n;
  int stop = n % 2 == 0 ? 0 : 1;
  while (out.final_chain.ell > stop) {
    ReduceReport report;
    out.final_chain = reduce_chain(ctx, out.final_chain, policy, &report);
    out.reduce_reports.push_back(std::move(report));
  }

  std::vector<int> seq;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    seq.push_back(out.final_chain.A[static_cast<std::size_t>(i)]);
    names.push_back("A" + std::to_string(i));
  }
  for (int j = 0; j <= out.final_chain.ell; ++j) {
    seq.push_back(out.final_chain.B[static_cast<std::size_t>(j)]);
    names.push_back("B" + std::to_string(j));
  }
  for (int i = 1; i <= n; ++i) {
    seq.push_back(out.final_chain.C[static_cast<std::size_t>(i - 1)]);
    names.push_back("C" + std::to_string(i));
  }

  WitnessChain chain;
  chain.a = ctx.a();
  chain.e = ctx.c();
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    LabeledStep s;
    s.from = seq[i];
    s.to = seq[i + 1];
    s.label = (i % 2 == 0) ? StepLabel::AlphaBeta : StepLabel::AlphaGamma;
    s.justification = names[i] + " -> " + names[i + 1];
    chain.steps.push_back(std::move(s));
  }
  for (const LabeledStep& s : chain.steps) chain.structural_pattern.push_back(s.label);
  chain.structural_factors = static_cast<int>(chain.steps.size());

  ValidationReport check = validate_chain(*ctx.alg, chain, ctx.alpha, ctx.beta, ctx.gamma);
  if (!check.ok)
    throw StepValidationError(check.first_failing_step(), "flattened chain validation",
                              check.first_failure());
  out.flattened = std::move(chain);
  return out;
}

WitnessChain build_extended_chain(const ChainContext& ctx) {
  ctx.validate();
  require_flavor(ctx.system, FlavorKind::Jonsson, "extended chain");
  int n = ctx.system.flavor.n;
  if (n < 4 || n % 2 != 0) throw Error("extended chain needs an even jonsson-n system, n >= 4");
  if (ctx.n() != 4) throw Error("extended chain needs witnesses a,b,c,d,e");
  const FiniteAlgebra& alg = *ctx.alg;
  if (!ctx.system_verified) require_verified(alg, ctx.system);

  auto t = [&](int i) -> const Term& { return ctx.system.terms[static_cast<std::size_t>(i - 1)]; };
  int a = ctx.b[0], b = ctx.b[1], c = ctx.b[2], d = ctx.b[3], e = ctx.b[4];
  StepLabel lb = StepLabel::AlphaBeta, lg = StepLabel::AlphaGamma;

  HalfResult fwd = core_half(alg, ctx.alpha, ctx.beta, ctx.gamma, t(1), t(2), "t1", "t2", a, e, b,
                             c, d, lb, lg, lg, {"a", "b", "c", "d", "e"});

  StepSink sink{alg, ctx.alpha, ctx.beta, ctx.gamma};
  sink.start(fwd.terminal);
  for (int p = 2; p + 2 <= n - 2; p += 2) {
    extension_block(sink, alg, t(p), t(p + 1), t(p + 2), "t" + std::to_string(p),
                    "t" + std::to_string(p + 1), "t" + std::to_string(p + 2), a, b, c, d, e, lb,
                    lg);
  }

  Term s1 = reverse_term(t(n - 1));
  Term s2 = reverse_term(t(n - 2));
  HalfResult mir = core_half(alg, ctx.alpha, ctx.beta, ctx.gamma, s1, s2,
                             "t" + std::to_string(n - 1) + "*", "t" + std::to_string(n - 2) + "*",
                             e, a, d, c, b, lg, lb, lb, {"e", "d", "c", "b", "a"});
  if (sink.current != mir.terminal)
    throw StepValidationError(static_cast<int>(fwd.steps.size() + sink.steps.size()),
                              "mirror junction",
                              "extension terminal " + std::to_string(sink.current) +
                                  " mirrored terminal " + std::to_string(mir.terminal));

  WitnessChain chain;
  chain.a = a;
  chain.e = e;
  chain.steps = fwd.steps;
  for (LabeledStep& s : sink.steps) chain.steps.push_back(std::move(s));
  for (LabeledStep& s : reverse_steps(mir.steps)) chain.steps.push_back(std::move(s));

  std::vector<StepLabel> plan = fwd.plan;
  plan.insert(plan.end(), sink.plan.begin(), sink.plan.end());
  std::vector<StepLabel> mplan = mir.plan;
  std::reverse(mplan.begin(), mplan.end());
  plan.insert(plan.end(), mplan.begin(), mplan.end());
  chain.structural_pattern = collapse_labels(plan);
  chain.structural_factors = static_cast<int>(chain.structural_pattern.size());

  ValidationReport check = validate_chain(alg, chain, ctx.alpha, ctx.beta, ctx.gamma);
  if (!check.ok)
    throw StepValidationError(check.first_failing_step(), "chain validation",
                              check.first_failure());
  return chain;
}

namespace {

// The alvin-headed half: endpoint p through the t0/t1 prefix and the core
// tail to F. rel_first is the relation of the side's first factor (gamma on
// the forward side). The bridge element satisfies
// p (alpha rel_first) X (alpha rel_second) t0(p,p,q).
HalfResult alvin_half(const FiniteAlgebra& alg, const Congruence& alpha, const Congruence& beta,
                      const Congruence& gamma, const Term& t0, const Term& t1, const Term& t2,
                      const std::string& n0, const std::string& n1, const std::string& n2, int p,
                      int q, int w1, int w2, int w3, int bridge, StepLabel first,
                      StepLabel second) {
  StepSink sink{alg, alpha, beta, gamma};
  sink.start(p);
  auto T0 = [&](int x, int y, int z) { return ev(alg, t0, x, y, z); };
  auto T1 = [&](int x, int y, int z) { return ev(alg, t1, x, y, z); };
  auto T2 = [&](int x, int y, int z) { return ev(alg, t2, x, y, z); };

  sink.verify_equal(p, T0(p, T1(p, w1, q), T1(p, w1, q)), "x = " + n0 + "(x,y,y)");
  sink.relation(T0(bridge, T1(p, w1, q), T1(p, w2, q)), first,
                n0 + "(X," + n1 + "(p,w1,q)," + n1 + "(p,w2,q))");
  int t0ppq = T0(p, p, q);
  sink.relation(T0(t0ppq, T1(p, p, q), T1(p, w2, q)), second,
                n0 + "(" + n0 + "(p,p,q)," + n1 + "(p,p,q)," + n1 + "(p,w2,q))");
  std::string link01 = n0 + "(x,x,z) = " + n1 + "(x,x,z)";
  sink.verify_equal(t0ppq, T1(p, p, q), link01);
  sink.equality(T0(T1(p, p, q), T1(p, p, q), T1(p, w2, q)), link01);
  sink.equality(ev(alg, t1, T1(p, p, q), T1(p, p, q), T1(p, w2, q)), link01);
  sink.relation(ev(alg, t1, T1(p, w1, q), T1(p, w1, q), T1(p, w3, q)), second,
                n1 + "(" + n1 + "(p,w1,q)," + n1 + "(p,w1,q)," + n1 + "(p,w3,q))");
  sink.relation(ev(alg, t1, T1(p, w1, q), T1(p, w1, q), T1(p, q, q)), first,
                n1 + "(" + n1 + "(p,w1,q)," + n1 + "(p,w1,q)," + n1 + "(p,q,q))");
  std::string link12 = n1 + "(x,z,z) = " + n2 + "(x,z,z)";
  sink.verify_equal(T1(p, q, q), T2(p, q, q), link12);
  sink.equality(ev(alg, t1, T1(p, w1, q), T1(p, w1, q), T2(p, q, q)), link12);
  sink.relation(ev(alg, t1, T1(p, w2, q), T1(p, w2, w3), T2(p, w3, q)), first,
                n1 + "(" + n1 + "(p,w2,q)," + n1 + "(p,w2,w3)," + n2 + "(p,w3,q))");
  sink.relation(ev(alg, t1, T1(p, w2, q), T1(p, w2, w2), T2(p, w2, q)), second,
                n1 + "(" + n1 + "(p,w2,q)," + n1 + "(p,w2,w2)," + n2 + "(p,w2,q))");
  sink.verify_equal(T1(p, w2, w2), T2(p, w2, w2), link12);
  sink.equality(ev(alg, t1, T1(p, w2, q), T2(p, w2, w2), T2(p, w2, q)), link12);

  // Core tail from the shared element t1(t1(p,w2,q), t2(p,w2,w2), t2(p,w2,q)).
  sink.relation(ev(alg, t1, T1(p, w3, q), T2(p, w2, w3), T2(p, w2, q)), second,
                n1 + "(" + n1 + "(p,w3,q)," + n2 + "(p,w2,w3)," + n2 + "(p,w2,q))");
  sink.relation(ev(alg, t1, T1(p, q, q), T2(p, w2, q), T2(p, w2, q)), first,
                n1 + "(" + n1 + "(p,q,q)," + n2 + "(p,w2,q)," + n2 + "(p,w2,q))");
  sink.equality(ev(alg, t2, T2(p, q, q), T2(p, w2, q), T2(p, w2, q)), link12);
  sink.relation(ev(alg, t2, T2(p, w3, q), T2(p, w2, q), T2(p, w1, q)), first,
                n2 + "(" + n2 + "(p,w3,q)," + n2 + "(p,w2,q)," + n2 + "(p,w1,q))");

  HalfResult out;
  out.steps = std::move(sink.steps);
  out.plan = std::move(sink.plan);
  out.terminal = sink.current;
  return out;
}

int find_bridge(const FiniteAlgebra& alg, const Congruence& alpha, const Congruence& rel_first,
                const Congruence& rel_second, int endpoint, int head_value,
                std::optional<int> given, const std::string& side) {
  if (given) {
    int x = *given;
    if (x < 0 || x >= alg.size()) throw Error("bridge element outside universe");
    if (!(alpha.related(endpoint, x) && rel_first.related(endpoint, x) &&
          alpha.related(x, head_value) && rel_second.related(x, head_value)))
      throw StepValidationError(0, side + " bridge premise",
                                "element " + std::to_string(x) + " fails " +
                                    std::to_string(endpoint) + " -> " +
                                    std::to_string(head_value));
    return x;
  }
  for (int x = 0; x < alg.size(); ++x)
    if (alpha.related(endpoint, x) && rel_first.related(endpoint, x) &&
        alpha.related(x, head_value) && rel_second.related(x, head_value))
      return x;
  throw NoBridgeElementError(side + " bridge element: no X with " + std::to_string(endpoint) +
                             " alpha-rel X alpha-rel' " + std::to_string(head_value));
}

}  // namespace

WitnessChain build_alvin_chain(const ChainContext& ctx, const JonssonSystem& alvin,
                               std::optional<int> left_bridge, std::optional<int> right_bridge) {
  ctx.validate();
  if (ctx.n() != 4) throw Error("alvin chain needs witnesses a,b,c,d,e");
  require_flavor(alvin, FlavorKind::Alvin, "alvin chain");
  int m = alvin.flavor.n;
  if (m < 6 || m % 2 != 0) throw Error("alvin chain needs an alvin-(n+2) system with even n >= 4");
  int n = m - 2;
  const FiniteAlgebra& alg = *ctx.alg;
  require_verified(alg, alvin);

  auto at = [&](int i) -> const Term& { return alvin.terms[static_cast<std::size_t>(i)]; };
  JonssonSystem reversed = reversed_system(alvin);
  auto rat = [&](int i) -> const Term& { return reversed.terms[static_cast<std::size_t>(i)]; };

  int a = ctx.b[0], b = ctx.b[1], c = ctx.b[2], d = ctx.b[3], e = ctx.b[4];
  StepLabel lb = StepLabel::AlphaBeta, lg = StepLabel::AlphaGamma;

  int left = find_bridge(alg, ctx.alpha, ctx.gamma, ctx.beta, a, ev(alg, at(0), a, a, e),
                         left_bridge, "left");
  HalfResult fwd = alvin_half(alg, ctx.alpha, ctx.beta, ctx.gamma, at(0), at(1), at(2), "t0",
                              "t1", "t2", a, e, b, c, d, left, lg, lb);

  StepSink sink{alg, ctx.alpha, ctx.beta, ctx.gamma};
  sink.start(fwd.terminal);
  for (int p = 2; p + 2 <= n - 2; p += 2)
    extension_block(sink, alg, at(p), at(p + 1), at(p + 2), "t" + std::to_string(p),
                    "t" + std::to_string(p + 1), "t" + std::to_string(p + 2), a, b, c, d, e, lb,
                    lg);

  int right = find_bridge(alg, ctx.alpha, ctx.beta, ctx.gamma, e, ev(alg, rat(0), e, e, a),
                          right_bridge, "right");
  HalfResult mir = alvin_half(alg, ctx.alpha, ctx.beta, ctx.gamma, rat(0), rat(1), rat(2),
                              "t" + std::to_string(n) + "*", "t" + std::to_string(n - 1) + "*",
                              "t" + std::to_string(n - 2) + "*", e, a, d, c, b, right, lb, lg);
  if (sink.current != mir.terminal)
    throw StepValidationError(static_cast<int>(fwd.steps.size() + sink.steps.size()),
                              "mirror junction",
                              "extension terminal " + std::to_string(sink.current) +
                                  " mirrored terminal " + std::to_string(mir.terminal));

  WitnessChain chain;
  chain.a = a;
  chain.e = e;
  chain.steps = fwd.steps;
  for (LabeledStep& s : sink.steps) chain.steps.push_back(std::move(s));
  for (LabeledStep& s : reverse_steps(mir.steps)) chain.steps.push_back(std::move(s));

  std::vector<StepLabel> plan = fwd.plan;
  plan.insert(plan.end(), sink.plan.begin(), sink.plan.end());
  std::vector<StepLabel> mplan = mir.plan;
  std::reverse(mplan.begin(), mplan.end());
  plan.insert(plan.end(), mplan.begin(), mplan.end());
  chain.structural_pattern = collapse_labels(plan);
  chain.structural_factors = static_cast<int>(chain.structural_pattern.size());

  ValidationReport check = validate_chain(alg, chain, ctx.alpha, ctx.beta, ctx.gamma);
  if (!check.ok)
    throw StepValidationError(check.first_failing_step(), "chain validation",
                              check.first_failure());
  return chain;
}

ValidationReport validate_chain(const FiniteAlgebra& alg, const WitnessChain& chain,
                                const Congruence& alpha, const Congruence& beta,
                                const Congruence& gamma) {
  ValidationReport report;
  int s = alg.size();
  bool in_range = chain.a >= 0 && chain.a < s && chain.e >= 0 && chain.e < s;
  for (const LabeledStep& st : chain.steps)
    in_range = in_range && st.from >= 0 && st.from < s && st.to >= 0 && st.to < s;
  report.add("elements in universe", in_range);
  if (!in_range) return report;

  int at = chain.a;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const LabeledStep& st = chain.steps[i];
    std::string name = "step " + std::to_string(i);
    if (st.from != at) {
      report.add(name, false, "starts at " + std::to_string(st.from) + ", previous ended at " +
                                  std::to_string(at));
      at = st.to;
      continue;
    }
    bool ok = true;
    switch (st.label) {
      case StepLabel::Beta: ok = beta.related(st.from, st.to); break;
      case StepLabel::Gamma: ok = gamma.related(st.from, st.to); break;
      case StepLabel::AlphaBeta:
        ok = alpha.related(st.from, st.to) && beta.related(st.from, st.to);
        break;
      case StepLabel::AlphaGamma:
        ok = alpha.related(st.from, st.to) && gamma.related(st.from, st.to);
        break;
      case StepLabel::Equal: ok = st.from == st.to; break;
    }
    report.add(name, ok,
               ok ? "" : "pair (" + std::to_string(st.from) + "," + std::to_string(st.to) +
                             ") not in " + step_label_text(st.label));
    at = st.to;
  }
  report.add("terminates at e", at == chain.e,
             at == chain.e ? "" : "ends at " + std::to_string(at));
  return report;
}

ValidationReport validate_nln(const FiniteAlgebra& alg, const NlnChain& chain,
                              const Congruence& alpha, const Congruence& beta,
                              const Congruence& gamma, int a, int c) {
  ValidationReport report;
  int n = chain.n, l = chain.ell;
  bool sizes = n >= 2 && l >= 0 && (n - l) % 2 == 0 &&
               static_cast<int>(chain.A.size()) == n &&
               static_cast<int>(chain.B.size()) == l + 1 &&
               static_cast<int>(chain.C.size()) == n &&
               static_cast<int>(chain.to_witness.size()) == l + 1 &&
               static_cast<int>(chain.from_witness.size()) == l + 1;
  report.add("segment sizes", sizes);
  if (!sizes) return report;

  int s = alg.size();
  auto in_universe = [&](int x) { return x >= 0 && x < s; };
  bool range_ok = true;
  for (int x : chain.A) range_ok = range_ok && in_universe(x);
  for (int x : chain.B) range_ok = range_ok && in_universe(x);
  for (int x : chain.C) range_ok = range_ok && in_universe(x);
  report.add("elements in universe", range_ok);
  if (!range_ok) return report;

  report.add("starts at a", chain.A[0] == a,
             chain.A[0] == a ? "" : "A0 = " + std::to_string(chain.A[0]));
  report.add("ends at c", chain.C[static_cast<std::size_t>(n - 1)] == c,
             chain.C[static_cast<std::size_t>(n - 1)] == c
                 ? ""
                 : "Cn = " + std::to_string(chain.C[static_cast<std::size_t>(n - 1)]));

  std::vector<int> seq;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    seq.push_back(chain.A[static_cast<std::size_t>(i)]);
    names.push_back("A" + std::to_string(i));
  }
  for (int j = 0; j <= l; ++j) {
    seq.push_back(chain.B[static_cast<std::size_t>(j)]);
    names.push_back("B" + std::to_string(j));
  }
  for (int i = 1; i <= n; ++i) {
    seq.push_back(chain.C[static_cast<std::size_t>(i - 1)]);
    names.push_back("C" + std::to_string(i));
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const Congruence& rel = (i % 2 == 0) ? beta : gamma;
    bool ok = rel.related(seq[i], seq[i + 1]);
    report.add("step " + std::to_string(i), ok,
               ok ? "" : names[i] + " -> " + names[i + 1] + " not in " +
                             ((i % 2 == 0) ? "beta" : "gamma"));
  }

  // The alpha block: every ladder element is alpha-related to a.
  for (std::size_t i = 0; i < seq.size(); ++i) {
    bool ok = alpha.related(a, seq[i]);
    report.add("alpha block " + names[i], ok,
               ok ? "" : names[i] + " = " + std::to_string(seq[i]) + " not alpha-related to a");
  }

  auto check_witness = [&](const std::vector<int>& w, int from, int to, const std::string& name) {
    if (static_cast<int>(w.size()) != n + 1) {
      report.add(name, false, "length " + std::to_string(w.size()));
      return;
    }
    bool range = true;
    for (int x : w) range = range && in_universe(x);
    if (!range) {
      report.add(name, false, "element outside universe");
      return;
    }
    bool ok = w.front() == from && w.back() == to;
    std::string detail;
    if (!ok) detail = "endpoints " + std::to_string(w.front()) + ".." + std::to_string(w.back());
    for (int k = 0; ok && k < n; ++k) {
      const Congruence& rel = (k % 2 == 0) ? beta : gamma;
      if (!rel.related(w[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(k + 1)])) {
        ok = false;
        detail = "witness step " + std::to_string(k) + " not in " +
                 ((k % 2 == 0) ? "beta" : "gamma");
      }
    }
    report.add(name, ok, detail);
  };
  for (int j = 0; j <= l; ++j) {
    check_witness(chain.to_witness[static_cast<std::size_t>(j)], a,
                  chain.B[static_cast<std::size_t>(j)], "witness a->B" + std::to_string(j));
    check_witness(chain.from_witness[static_cast<std::size_t>(j)],
                  chain.B[static_cast<std::size_t>(j)], c, "witness B" + std::to_string(j) + "->c");
  }
  return report;
}

std::string render_chain_text(const WitnessChain& chain) {
  std::string out = "a = " + std::to_string(chain.a) + "\n";
  for (const LabeledStep& s : chain.steps) {
    std::string label = step_label_text(s.label);
    out += "  " + std::string(label == "equal" ? "=" : label) + "  " + std::to_string(s.to);
    if (!s.justification.empty()) out += "   [" + s.justification + "]";
    out += "\n";
  }
  out += "= e = " + std::to_string(chain.e) + "\n";
  out += "factors: " + std::to_string(chain.factor_count()) +
         " (shape " + std::to_string(chain.structural_factors) + ")\n";
  return out;
}

}  // namespace jlab
