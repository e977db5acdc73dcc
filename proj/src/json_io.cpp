#include "jlab/json_io.hpp"

#include <fstream>

#include "jlab/errors.hpp"

namespace jlab {

Json algebra_to_json(const FiniteAlgebra& alg) {
  Json ops = Json::array();
  for (const Operation& f : alg.ops())
    ops.push_back({{"symbol", f.symbol}, {"arity", f.arity}, {"table", f.table}});
  return Json{{"name", alg.name()}, {"size", alg.size()}, {"operations", std::move(ops)}};
}

FiniteAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("size"))
    throw InvalidAlgebraError("algebra json needs a size field");
  std::string name = j.value("name", std::string("algebra"));
  int size = j.at("size").get<int>();
  std::vector<Operation> ops;
  for (const Json& oj : j.value("operations", Json::array())) {
    Operation op;
    op.symbol = oj.at("symbol").get<std::string>();
    op.arity = oj.at("arity").get<int>();
    op.table = oj.at("table").get<std::vector<int>>();
    ops.push_back(std::move(op));
  }
  return FiniteAlgebra(std::move(name), size, std::move(ops));
}

FiniteAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open algebra file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("algebra file ") + path + ": " + e.what(), 0);
  }
  return algebra_from_json(j);
}

namespace {

std::string flavor_name(const SystemFlavor& f) {
  switch (f.kind) {
    case FlavorKind::Jonsson: return "jonsson";
    case FlavorKind::Alvin: return "alvin";
    case FlavorKind::Defective4: return "defective4";
  }
  return "?";
}

}  // namespace

Json system_to_json(const JonssonSystem& system) {
  Json terms = Json::array();
  for (const Term& t : system.terms) terms.push_back(term_to_string(t));
  return Json{{"flavor", flavor_name(system.flavor)},
              {"n", system.flavor.n},
              {"terms", std::move(terms)}};
}

JonssonSystem system_from_json(const Json& j) {
  JonssonSystem out;
  std::string flavor = j.at("flavor").get<std::string>();
  int n = j.value("n", 0);
  if (flavor == "jonsson")
    out.flavor = SystemFlavor::jonsson(n);
  else if (flavor == "alvin")
    out.flavor = SystemFlavor::alvin(n);
  else if (flavor == "defective4")
    out.flavor = SystemFlavor::defective4();
  else
    throw Error("unknown system flavor: " + flavor);
  for (const Json& tj : j.at("terms")) out.terms.push_back(parse_term(tj.get<std::string>()));
  if (static_cast<int>(out.terms.size()) != out.flavor.term_count())
    throw Error("system has " + std::to_string(out.terms.size()) + " terms, flavor " +
                out.flavor.text() + " needs " + std::to_string(out.flavor.term_count()));
  return out;
}

JonssonSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open system file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("system file ") + path + ": " + e.what(), 0);
  }
  return system_from_json(j);
}

Json chain_to_json(const WitnessChain& chain, const ValidationReport& validation) {
  std::vector<bool> step_ok(chain.steps.size(), true);
  for (const CheckResult& c : validation.checks)
    if (c.name.rfind("step ", 0) == 0) {
      std::size_t i = std::stoul(c.name.substr(5));
      if (i < step_ok.size()) step_ok[i] = c.ok;
    }
  Json steps = Json::array();
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const LabeledStep& s = chain.steps[i];
    steps.push_back({{"from", s.from},
                     {"to", s.to},
                     {"label", step_label_text(s.label)},
                     {"justification", s.justification},
                     {"ok", static_cast<bool>(step_ok[i])}});
  }
  Json checks = Json::array();
  for (const CheckResult& c : validation.checks) {
    Json cj{{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  Json pattern = Json::array();
  for (StepLabel l : chain.collapsed_labels()) pattern.push_back(step_label_text(l));
  return Json{{"a", chain.a},
              {"e", chain.e},
              {"steps", std::move(steps)},
              {"factor_count", chain.factor_count()},
              {"structural_factors", chain.structural_factors},
              {"pattern", std::move(pattern)},
              {"checks", std::move(checks)},
              {"ok", validation.ok}};
}

Json nln_to_json(const NlnChain& chain) {
  return Json{{"n", chain.n},       {"ell", chain.ell},
              {"A", chain.A},       {"B", chain.B},
              {"C", chain.C},       {"to_witness", chain.to_witness},
              {"from_witness", chain.from_witness}};
}

Json system_report_to_json(const SystemReport& report) {
  Json eqs = Json::array();
  for (const EquationResult& r : report.equations) {
    Json ej{{"equation", r.name}, {"ok", r.ok}};
    if (r.first_fail)
      ej["first_fail"] = {(*r.first_fail)[0], (*r.first_fail)[1], (*r.first_fail)[2]};
    eqs.push_back(std::move(ej));
  }
  return Json{{"equations", std::move(eqs)}, {"ok", report.ok}};
}

namespace {

std::string row_minimal_k(const SpectrumRow& row) {
  if (row.minimal_k) return std::to_string(*row.minimal_k);
  return "none<=" + std::to_string(row.k_max);
}

}  // namespace

Json spectrum_to_json(const Spectrum& s) {
  Json congruences = Json::array();
  for (const Congruence& c : s.congruences) congruences.push_back(c.block_text());
  Json rows = Json::array();
  for (const SpectrumRow& r : s.rows) {
    Json rj{{"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}, {"m", r.m}};
    if (r.minimal_k)
      rj["minimal_k"] = *r.minimal_k;
    else
      rj["minimal_k"] = Json();
    rj["k_max"] = r.k_max;
    if (r.witness) rj["witness_pair"] = {r.witness->first, r.witness->second};
    rows.push_back(std::move(rj));
  }
  Json per_m = Json::object();
  for (const auto& [m, best] : s.per_m_max)
    per_m[std::to_string(m)] = best ? Json(*best) : Json();
  return Json{{"congruences", std::move(congruences)},
              {"rows", std::move(rows)},
              {"per_m_max", std::move(per_m)}};
}

std::string spectrum_to_csv(const Spectrum& s) {
  std::string out = "alpha,beta,gamma,m,minimal_k,witness_pair\n";
  for (const SpectrumRow& r : s.rows) {
    out += std::to_string(r.alpha) + "," + std::to_string(r.beta) + "," +
           std::to_string(r.gamma) + "," + std::to_string(r.m) + "," + row_minimal_k(r) + ",";
    if (r.witness)
      out += std::to_string(r.witness->first) + ":" + std::to_string(r.witness->second);
    out += "\n";
  }
  return out;
}

}  // namespace jlab
