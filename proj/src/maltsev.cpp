#include "jlab/maltsev.hpp"

#include <algorithm>
#include <set>

#include "jlab/closure.hpp"
#include "jlab/errors.hpp"

namespace jlab {

namespace {

// Coordinate shapes of the indicator index set.
enum Shape { kAba = 0, kAab = 1, kAbb = 2 };

struct IndicatorInfo {
  std::vector<std::array<int, 3>> triples;
  std::vector<std::vector<int>> shape_coords;  // coordinate ids per shape
};

IndicatorInfo indicator_info(int s) {
  IndicatorInfo info;
  info.shape_coords.resize(3);
  std::set<std::array<int, 3>> seen;
  auto add = [&](std::array<int, 3> t) {
    if (seen.insert(t).second) info.triples.push_back(t);
  };
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      add({a, b, a});
      add({a, a, b});
      add({a, b, b});
    }
  for (std::size_t i = 0; i < info.triples.size(); ++i) {
    auto [u, v, w] = info.triples[i];
    if (u == w) info.shape_coords[kAba].push_back(static_cast<int>(i));
    if (u == v) info.shape_coords[kAab].push_back(static_cast<int>(i));
    if (v == w) info.shape_coords[kAbb].push_back(static_cast<int>(i));
  }
  return info;
}

bool agree_on(const PowerVector& u, const PowerVector& v, const std::vector<int>& coords) {
  for (int c : coords)
    if (u[static_cast<std::size_t>(c)] != v[static_cast<std::size_t>(c)]) return false;
  return true;
}

// Per-slot constraints of a flavor, expressed on indicator vectors. Slot p
// holds the p-th term of the system (0-based). Between consecutive slots a
// link shape; the virtual x-projection precedes slot 0 and the virtual
// z-projection follows the last slot.
struct SlotPlan {
  int slots;
  std::vector<bool> needs_middle;     // matches x-hat on (a,b,a)
  std::vector<bool> needs_alvin_head;  // matches x-hat on (a,b,b)
  Shape entry_shape;                   // link with x-projection
  std::vector<Shape> link_shape;       // between slot p and p+1
  Shape exit_shape;                    // link with z-projection
};

SlotPlan slot_plan(const SystemFlavor& flavor) {
  SlotPlan plan;
  plan.slots = flavor.term_count();
  plan.needs_middle.assign(static_cast<std::size_t>(plan.slots), true);
  plan.needs_alvin_head.assign(static_cast<std::size_t>(plan.slots), false);
  plan.link_shape.resize(plan.slots > 0 ? static_cast<std::size_t>(plan.slots - 1) : 0);
  switch (flavor.kind) {
    case FlavorKind::Jonsson:
    case FlavorKind::Defective4: {
      // Slot p holds t_{p+1}; the link at chain position i uses (x,x,z) for
      // i even and (x,z,z) for i odd.
      if (flavor.kind == FlavorKind::Defective4) plan.needs_middle[1] = false;
      plan.entry_shape = kAab;
      for (int p = 0; p + 1 < plan.slots; ++p)
        plan.link_shape[static_cast<std::size_t>(p)] = (p % 2 == 0) ? kAbb : kAab;
      plan.exit_shape = (flavor.n % 2 == 0) ? kAbb : kAab;
      break;
    }
    case FlavorKind::Alvin: {
      // Slot p holds t_p; the head satisfies x = t_0(x,y,y) and links to the
      // x-projection on (a,b,b); the remaining links follow the same
      // alternation as the Jonsson indices.
      plan.needs_alvin_head[0] = true;
      plan.entry_shape = kAbb;
      for (int p = 0; p + 1 < plan.slots; ++p)
        plan.link_shape[static_cast<std::size_t>(p)] = (p % 2 == 0) ? kAab : kAbb;
      plan.exit_shape = (flavor.n % 2 == 0) ? kAab : kAbb;
      break;
    }
  }
  return plan;
}

Term chain_term(const SystemFlavor& flavor, const std::vector<Term>& terms, int chain_pos) {
  // Chain position runs over [x-projection, t..., z-projection].
  if (chain_pos == 0) return Term::x();
  if (chain_pos == flavor.term_count() + 1) return Term::z();
  return terms[static_cast<std::size_t>(chain_pos - 1)];
}

std::string chain_term_name(const SystemFlavor& flavor, int chain_pos, const std::string& args) {
  if (chain_pos == 0) return args == "(x,x,z)" ? "x" : "x";
  if (chain_pos == flavor.term_count() + 1) return "z";
  int index = flavor.kind == FlavorKind::Alvin ? chain_pos - 1 : chain_pos;
  return "t" + std::to_string(index) + args;
}

}  // namespace

std::string SystemFlavor::text() const {
  switch (kind) {
    case FlavorKind::Jonsson: return "jonsson-" + std::to_string(n);
    case FlavorKind::Alvin: return "alvin-" + std::to_string(n);
    case FlavorKind::Defective4: return "defective-4";
  }
  return "?";
}

std::vector<Equation> defining_equations(const SystemFlavor& flavor,
                                         const std::vector<Term>& terms) {
  if (static_cast<int>(terms.size()) != flavor.term_count())
    throw Error("flavor " + flavor.text() + " needs " + std::to_string(flavor.term_count()) +
                " terms, got " + std::to_string(terms.size()));
  std::vector<Equation> eqs;
  const Term x = Term::x();
  const Term y = Term::y();
  const Term z = Term::z();
  auto term_label = [&](int slot) {
    int index = flavor.kind == FlavorKind::Alvin ? slot : slot + 1;
    return "t" + std::to_string(index);
  };

  for (int p = 0; p < flavor.term_count(); ++p) {
    bool required = !(flavor.kind == FlavorKind::Defective4 && p == 1);
    if (required)
      eqs.push_back({"x = " + term_label(p) + "(x,y,x)", x,
                     subst(terms[static_cast<std::size_t>(p)], x, y, x)});
  }
  if (flavor.kind == FlavorKind::Alvin)
    eqs.push_back({"x = " + term_label(0) + "(x,y,y)", x,
                   subst(terms[0], x, y, y)});

  // Linking equations along [x-projection, terms..., z-projection].
  SlotPlan plan = slot_plan(flavor);
  int positions = flavor.term_count() + 1;  // number of links
  for (int link = 0; link < positions; ++link) {
    Shape shape;
    if (link == 0)
      shape = plan.entry_shape;
    else if (link == positions - 1)
      shape = plan.exit_shape;
    else
      shape = plan.link_shape[static_cast<std::size_t>(link - 1)];
    // Alvin's entry link x = t_0(x,y,y) is already listed as the head
    // equation; skip the duplicate.
    if (flavor.kind == FlavorKind::Alvin && link == 0) continue;
    const Term lhs_base = chain_term(flavor, terms, link);
    const Term rhs_base = chain_term(flavor, terms, link + 1);
    Term lhs, rhs;
    std::string args;
    if (shape == kAab) {
      lhs = subst(lhs_base, x, x, z);
      rhs = subst(rhs_base, x, x, z);
      args = "(x,x,z)";
    } else {
      lhs = subst(lhs_base, x, z, z);
      rhs = subst(rhs_base, x, z, z);
      args = "(x,z,z)";
    }
    std::string lname = chain_term_name(flavor, link, args);
    std::string rname = chain_term_name(flavor, link + 1, args);
    if (link == 0) lname = "x";
    if (link == positions - 1) rname = "z";
    eqs.push_back({lname + " = " + rname, lhs, rhs});
  }
  return eqs;
}

std::string SystemReport::first_failure() const {
  for (const EquationResult& r : equations)
    if (!r.ok) {
      std::string out = r.name;
      if (r.first_fail)
        out += " at (x,y,z)=(" + std::to_string((*r.first_fail)[0]) + "," +
               std::to_string((*r.first_fail)[1]) + "," + std::to_string((*r.first_fail)[2]) + ")";
      return out;
    }
  return "";
}

SystemReport verify_system(const FiniteAlgebra& alg, const JonssonSystem& system) {
  SystemReport report;
  for (const Equation& eq : defining_equations(system.flavor, system.terms)) {
    EquationResult r;
    r.name = eq.name;
    r.first_fail = equation_failure(alg, eq.lhs, eq.rhs);
    r.ok = !r.first_fail.has_value();
    report.ok = report.ok && r.ok;
    report.equations.push_back(std::move(r));
  }
  return report;
}

std::vector<std::array<int, 3>> indicator_index(const FiniteAlgebra& alg) {
  return indicator_info(alg.size()).triples;
}

std::size_t default_closure_cap() { return 1000000; }

namespace {

struct PathSearch {
  const IndicatorInfo& info;
  const SlotPlan& plan;
  const PowerVector& xhat;
  const PowerVector& zhat;

  bool slot_ok(int p, const PowerVector& v) const {
    if (plan.needs_middle[static_cast<std::size_t>(p)] &&
        !agree_on(v, xhat, info.shape_coords[kAba]))
      return false;
    if (plan.needs_alvin_head[static_cast<std::size_t>(p)] &&
        !agree_on(v, xhat, info.shape_coords[kAbb]))
      return false;
    return true;
  }
  bool entry_ok(const PowerVector& v) const {
    return agree_on(v, xhat, info.shape_coords[plan.entry_shape]);
  }
  bool link_ok(int p, const PowerVector& u, const PowerVector& v) const {
    return agree_on(u, v, info.shape_coords[plan.link_shape[static_cast<std::size_t>(p)]]);
  }
  bool exit_ok(const PowerVector& v) const {
    return agree_on(v, zhat, info.shape_coords[plan.exit_shape]);
  }

  // Layered breadth-first walk, elements in insertion order; returns the
  // element ids of the first complete slot assignment.
  std::optional<std::vector<int>> run(const ClosureSet& cs) const {
    int slots = plan.slots;
    std::size_t count = cs.elements().size();
    if (slots == 0) return std::vector<int>{};
    // parent[p][e] = id of the slot-(p-1) element that first reached e.
    std::vector<std::vector<int>> parent(static_cast<std::size_t>(slots),
                                         std::vector<int>(count, -2));
    std::vector<std::vector<int>> layer(static_cast<std::size_t>(slots));
    for (std::size_t e = 0; e < count; ++e) {
      const PowerVector& v = cs.elements()[e];
      if (slot_ok(0, v) && entry_ok(v)) {
        parent[0][e] = -1;
        layer[0].push_back(static_cast<int>(e));
      }
    }
    for (int p = 0; p + 1 < slots; ++p) {
      for (int u : layer[static_cast<std::size_t>(p)]) {
        for (std::size_t e = 0; e < count; ++e) {
          if (parent[static_cast<std::size_t>(p + 1)][e] != -2) continue;
          const PowerVector& v = cs.elements()[e];
          if (slot_ok(p + 1, v) &&
              link_ok(p, cs.elements()[static_cast<std::size_t>(u)], v)) {
            parent[static_cast<std::size_t>(p + 1)][e] = u;
            layer[static_cast<std::size_t>(p + 1)].push_back(static_cast<int>(e));
          }
        }
      }
    }
    for (int e : layer[static_cast<std::size_t>(slots - 1)]) {
      if (!exit_ok(cs.elements()[static_cast<std::size_t>(e)])) continue;
      std::vector<int> path(static_cast<std::size_t>(slots));
      int cur = e;
      for (int p = slots - 1; p >= 0; --p) {
        path[static_cast<std::size_t>(p)] = cur;
        cur = parent[static_cast<std::size_t>(p)][static_cast<std::size_t>(cur)];
      }
      return path;
    }
    return std::nullopt;
  }
};

}  // namespace

FindResult find_terms(const FiniteAlgebra& alg, const SystemFlavor& flavor, std::size_t cap) {
  if (flavor.n < 2) throw Error("flavor parameter must be >= 2");
  IndicatorInfo info = indicator_info(alg.size());
  SlotPlan plan = slot_plan(flavor);

  std::vector<PowerVector> seeds(3, PowerVector(info.triples.size()));
  for (std::size_t i = 0; i < info.triples.size(); ++i)
    for (int v = 0; v < 3; ++v)
      seeds[static_cast<std::size_t>(v)][i] = info.triples[i][static_cast<std::size_t>(v)];

  PathSearch search{info, plan, seeds[0], seeds[2]};
  std::optional<std::vector<int>> hit;
  ClosureOptions opts;
  opts.cap = cap;
  ClosureSet cs = closure_iterate(alg, seeds, opts, [&](const ClosureSet& round) {
    hit = search.run(round);
    return hit.has_value();
  });

  FindResult result;
  result.closure_size = cs.elements().size();
  if (!hit) hit = search.run(cs);
  if (hit) {
    JonssonSystem system;
    system.flavor = flavor;
    for (int e : *hit) system.terms.push_back(cs.term_for(alg, e));
    SystemReport report = verify_system(alg, system);
    if (!report.ok)
      throw Error("indicator search produced a system failing full verification: " +
                  report.first_failure());
    result.status = SearchStatus::Found;
    result.system = std::move(system);
    return result;
  }
  result.status = cs.complete() ? SearchStatus::NotFound : SearchStatus::Inconclusive;
  return result;
}

JonssonSystem pad_to_four(const FiniteAlgebra& alg, const JonssonSystem& majority_system) {
  if (!(majority_system.flavor == SystemFlavor::jonsson(2)))
    throw Error("pad_to_four expects a jonsson-2 system");
  JonssonSystem out;
  out.flavor = SystemFlavor::jonsson(4);
  out.terms = {majority_system.terms[0], Term::z(), Term::z()};
  SystemReport report = verify_system(alg, out);
  if (!report.ok)
    throw VerificationFailedError("padded system fails verification: " + report.first_failure());
  return out;
}

JonssonSystem pad_system(const FiniteAlgebra& alg, const JonssonSystem& system, int target_n) {
  if (system.flavor.kind != FlavorKind::Jonsson)
    throw Error("pad_system expects a jonsson system");
  if (target_n < system.flavor.n || (target_n - system.flavor.n) % 2 != 0)
    throw Error("pad target must exceed the flavor by an even amount");
  JonssonSystem out;
  out.flavor = SystemFlavor::jonsson(target_n);
  out.terms = system.terms;
  for (int i = system.flavor.n; i < target_n; ++i) out.terms.push_back(Term::z());
  SystemReport report = verify_system(alg, out);
  if (!report.ok)
    throw VerificationFailedError("padded system fails verification: " + report.first_failure());
  return out;
}

JonssonSystem reversed_system(const JonssonSystem& system) {
  JonssonSystem out;
  out.flavor = system.flavor;
  out.terms.reserve(system.terms.size());
  for (auto it = system.terms.rbegin(); it != system.terms.rend(); ++it)
    out.terms.push_back(reverse_term(*it));
  return out;
}

LevelResult distributivity_level(const FiniteAlgebra& alg, int n_max, std::size_t cap) {
  if (n_max < 2) throw Error("n_max must be >= 2");
  LevelResult out;
  out.n_max = n_max;
  bool inconclusive = false;
  for (int n = 2; n <= n_max; ++n) {
    FindResult r = find_terms(alg, SystemFlavor::jonsson(n), cap);
    if (r.status == SearchStatus::Found) {
      out.status = SearchStatus::Found;
      out.level = n;
      out.system = std::move(r.system);
      return out;
    }
    if (r.status == SearchStatus::Inconclusive) inconclusive = true;
  }
  out.status = inconclusive ? SearchStatus::Inconclusive : SearchStatus::NotFound;
  return out;
}

}  // namespace jlab
