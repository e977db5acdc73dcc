// jlab: search for Jonsson-style term systems on finite algebras, build and
// validate the witness chains behind the congruence-distributivity bounds,
// and brute-force congruence identities.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jlab/chains.hpp"
#include "jlab/errors.hpp"
#include "jlab/generators.hpp"
#include "jlab/json_io.hpp"
#include "jlab/maltsev.hpp"
#include "jlab/relation.hpp"
#include "jlab/verifier.hpp"

namespace {

using namespace jlab;

// Exit codes, shared by every subcommand:
//   0 success / property holds
//   2 malformed input or usage error
//   3 not found / property fails
//   4 inconclusive (a resource cap was hit)
//   5 a step or system failed validation
enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kNotFound = 3,
  kInconclusive = 4,
  kValidationFailed = 5,
};

std::size_t closure_cap() {
  if (const char* env = std::getenv("JLAB_CAP")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring malformed JLAB_CAP\n";
  }
  return default_closure_cap();
}

struct AlgebraSource {
  std::string generator;
  std::string input_path;

  void add_options(CLI::App* cmd) {
    auto* g = cmd->add_option("--gen", generator, "built-in generator spec");
    auto* i = cmd->add_option("--input", input_path, "algebra JSON file");
    g->excludes(i);
    i->excludes(g);
  }

  FiniteAlgebra load() const {
    if (!generator.empty()) return from_generator_spec(generator);
    if (!input_path.empty()) return load_algebra_file(input_path);
    throw Error("no algebra given: use --gen or --input");
  }
};

// Accepts a canonical index, a block vector like "0 0 1", or one of the
// names delta/top; proj1/proj2 name the row and column kernels of
// lattice-prod generators.
Congruence resolve_congruence(const std::string& text, const FiniteAlgebra& alg,
                              const std::vector<Congruence>& all) {
  int s = alg.size();
  if (text == "delta" || text == "bottom") return Congruence::identity(s);
  if (text == "top" || text == "nabla" || text == "all") return Congruence::full(s);
  if (text == "proj1" || text == "proj2") {
    auto pos = alg.name().find(':');
    auto x = alg.name().find('x');
    if (alg.name().rfind("lattice-prod", 0) != 0 || pos == std::string::npos ||
        x == std::string::npos)
      throw Error(text + " only names a kernel of a lattice-prod algebra");
    int cols = std::stoi(alg.name().substr(x + 1));
    std::vector<int> blocks(static_cast<std::size_t>(s));
    for (int e = 0; e < s; ++e)
      blocks[static_cast<std::size_t>(e)] = text == "proj1" ? e / cols : e % cols;
    Congruence c = Congruence::from_blocks(std::move(blocks));
    if (!is_congruence(alg, c.blocks())) throw Error(text + " is not a congruence here");
    return c;
  }
  if (text.find(' ') != std::string::npos) {
    Congruence c = parse_congruence(text, s);
    if (!is_congruence(alg, c.blocks()))
      throw Error("partition \"" + text + "\" is not a congruence of " + alg.name());
    return c;
  }
  int index = std::stoi(text);
  if (index < 0 || index >= static_cast<int>(all.size()))
    throw Error("congruence index " + std::to_string(index) + " out of range 0.." +
                std::to_string(all.size() - 1));
  return all[static_cast<std::size_t>(index)];
}

std::vector<int> parse_elements(const std::string& text, const FiniteAlgebra& alg) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw Error("empty element in list \"" + text + "\"");
    int v = std::stoi(tok);
    if (v < 0 || v >= alg.size())
      throw Error("element " + std::to_string(v) + " outside the universe of " + alg.name());
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Auto-derives a jonsson-n system: the smallest even level found is padded
// up to the requested n.
JonssonSystem auto_jonsson(const FiniteAlgebra& alg, int n, std::size_t cap) {
  bool hit_cap = false;
  for (int k = 2; k <= n; k += 2) {
    FindResult r = find_terms(alg, SystemFlavor::jonsson(k), cap);
    if (r.status == SearchStatus::Found) {
      JonssonSystem sys = *r.system;
      if (k < n) sys = pad_system(alg, sys, n);
      return sys;
    }
    if (r.status == SearchStatus::Inconclusive) hit_cap = true;
  }
  if (hit_cap) throw ResourceLimitError("term search hit the closure cap");
  throw Error("no jonsson-" + std::to_string(n) + " system found for " + alg.name());
}

int cmd_terms(const AlgebraSource& src, const std::string& flavor_name, int n, int n_max,
              bool level_scan) {
  FiniteAlgebra alg = src.load();
  std::size_t cap = closure_cap();
  if (level_scan) {
    LevelResult r = distributivity_level(alg, n_max, cap);
    Json out{{"algebra", alg.name()}, {"n_max", n_max}};
    switch (r.status) {
      case SearchStatus::Found:
        out["level"] = r.level;
        out["system"] = system_to_json(*r.system);
        emit(out);
        return kOk;
      case SearchStatus::NotFound:
        out["level"] = Json();
        emit(out);
        return kNotFound;
      case SearchStatus::Inconclusive:
        out["level"] = "inconclusive";
        emit(out);
        return kInconclusive;
    }
  }
  SystemFlavor flavor;
  if (flavor_name == "jonsson")
    flavor = SystemFlavor::jonsson(n);
  else if (flavor_name == "alvin")
    flavor = SystemFlavor::alvin(n);
  else if (flavor_name == "defective4")
    flavor = SystemFlavor::defective4();
  else
    throw Error("unknown flavor: " + flavor_name);
  FindResult r = find_terms(alg, flavor, cap);
  Json out{{"algebra", alg.name()}, {"flavor", flavor.text()},
           {"closure_size", r.closure_size}};
  switch (r.status) {
    case SearchStatus::Found:
      out["system"] = system_to_json(*r.system);
      emit(out);
      return kOk;
    case SearchStatus::NotFound:
      out["system"] = Json();
      emit(out);
      return kNotFound;
    case SearchStatus::Inconclusive:
      out["system"] = "inconclusive";
      emit(out);
      return kInconclusive;
  }
  return kOk;
}

struct ChainArgs {
  AlgebraSource src;
  std::string construction = "core";
  std::string system_path;
  std::string alpha = "top", beta, gamma;
  std::string elements;
  int n = 0;       // witness chain length cross-check
  int n_dist = 4;  // system level for extended/alvin
  std::string reading = "try-all";
  std::string format = "json";
  bool defective = false;
  std::optional<int> bridge_left, bridge_right;
};

int cmd_chain(const ChainArgs& args) {
  FiniteAlgebra alg = args.src.load();
  std::vector<Congruence> cons = all_congruences(alg);
  std::size_t cap = closure_cap();

  ChainContext ctx;
  ctx.alg = &alg;
  ctx.alpha = resolve_congruence(args.alpha, alg, cons);
  if (args.beta.empty() || args.gamma.empty()) throw Error("--beta and --gamma are required");
  ctx.beta = resolve_congruence(args.beta, alg, cons);
  ctx.gamma = resolve_congruence(args.gamma, alg, cons);
  if (args.elements.empty()) throw Error("--elements is required");
  ctx.b = parse_elements(args.elements, alg);
  if (args.n > 0 && ctx.n() != args.n)
    throw Error("--elements lists " + std::to_string(ctx.n() + 1) + " elements but --n is " +
                std::to_string(args.n));

  ReadingPolicy policy =
      args.reading == "strict" ? ReadingPolicy::Strict : ReadingPolicy::TryAll;

  JonssonSystem alvin_system;
  bool need_jonsson = args.construction != "alvin";
  int level = args.construction == "extended" ? args.n_dist : 4;
  if (need_jonsson) {
    if (!args.system_path.empty()) {
      ctx.system = load_system_file(args.system_path);
      SystemReport rep = verify_system(alg, ctx.system);
      if (!rep.ok) {
        std::cerr << "system fails verification: " << rep.first_failure() << "\n";
        return kValidationFailed;
      }
    } else {
      ctx.system = auto_jonsson(alg, level, cap);
    }
  } else {
    if (!args.system_path.empty()) {
      alvin_system = load_system_file(args.system_path);
      SystemReport rep = verify_system(alg, alvin_system);
      if (!rep.ok) {
        std::cerr << "system fails verification: " << rep.first_failure() << "\n";
        return kValidationFailed;
      }
    } else {
      FindResult r = find_terms(alg, SystemFlavor::alvin(args.n_dist + 2), cap);
      if (r.status == SearchStatus::Inconclusive)
        throw ResourceLimitError("alvin term search hit the closure cap");
      if (r.status != SearchStatus::Found)
        throw Error("no alvin-" + std::to_string(args.n_dist + 2) + " system found");
      alvin_system = *r.system;
    }
  }

  Json out{{"algebra", alg.name()}, {"construction", args.construction}};
  WitnessChain chain;
  std::vector<ReduceReport> reduce_reports;

  if (args.construction == "core") {
    chain = build_core_chain(ctx, args.defective);
  } else if (args.construction == "full-reduction") {
    FullReduction fr = full_reduction(ctx, policy);
    chain = fr.flattened;
    reduce_reports = fr.reduce_reports;
    out["final_ell"] = fr.final_chain.ell;
    out["ladder"] = nln_to_json(fr.final_chain);
  } else if (args.construction == "extended") {
    chain = build_extended_chain(ctx);
  } else if (args.construction == "alvin") {
    chain = build_alvin_chain(ctx, alvin_system, args.bridge_left, args.bridge_right);
    out["system"] = system_to_json(alvin_system);
  } else {
    throw Error("unknown construction: " + args.construction +
                " (core, full-reduction, extended, alvin)");
  }

  if (!reduce_reports.empty()) {
    Json rr = Json::array();
    for (const ReduceReport& r : reduce_reports) {
      Json j{{"b0_reading", r.b0_reading}, {"c_first_reading", r.c_first_reading}};
      if (!r.rejected.empty()) j["rejected"] = r.rejected;
      rr.push_back(std::move(j));
    }
    out["reduce_reports"] = std::move(rr);
  }
  ValidationReport validation = validate_chain(alg, chain, ctx.alpha, ctx.beta, ctx.gamma);
  out["chain"] = chain_to_json(chain, validation);
  if (args.format == "text")
    std::cout << render_chain_text(chain);
  else
    emit(out);
  return validation.ok ? kOk : kValidationFailed;
}

int cmd_spectrum(const AlgebraSource& src, const std::string& m_list_text, int k_max,
                 const std::string& format) {
  FiniteAlgebra alg = src.load();
  std::vector<int> m_list;
  std::size_t pos = 0;
  while (pos <= m_list_text.size()) {
    std::size_t comma = m_list_text.find(',', pos);
    m_list.push_back(std::stoi(
        m_list_text.substr(pos, comma == std::string::npos ? comma : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  Spectrum s = spectrum(alg, m_list, k_max);
  if (format == "csv")
    std::cout << spectrum_to_csv(s);
  else
    emit(spectrum_to_json(s));
  return kOk;
}

int cmd_congruences(const AlgebraSource& src) {
  FiniteAlgebra alg = src.load();
  std::vector<Congruence> cons = all_congruences(alg);
  Json rows = Json::array();
  for (std::size_t i = 0; i < cons.size(); ++i)
    rows.push_back({{"index", i},
                    {"blocks", cons[i].block_text()},
                    {"block_count", cons[i].num_blocks()}});
  emit(Json{{"algebra", alg.name()}, {"count", cons.size()}, {"congruences", std::move(rows)}});
  return kOk;
}

int cmd_check(const AlgebraSource& src, const std::string& alpha, const std::string& beta,
              const std::string& gamma, int m, int k, const std::string& rhs_start) {
  FiniteAlgebra alg = src.load();
  std::vector<Congruence> cons = all_congruences(alg);
  Congruence a = resolve_congruence(alpha, alg, cons);
  Congruence b = resolve_congruence(beta, alg, cons);
  Congruence g = resolve_congruence(gamma, alg, cons);
  RhsStart start = rhs_start == "gamma" ? RhsStart::Gamma : RhsStart::Beta;
  bool holds = check_identity(a.binrel(), b.binrel(), g.binrel(), m, k, start);
  Json out{{"algebra", alg.name()}, {"m", m},        {"k", k},
           {"rhs_start", rhs_start}, {"holds", holds}};
  if (!holds) {
    BinRel lhs = lhs_relation(a.binrel(), b.binrel(), g.binrel(), m);
    BinRel ab = a.binrel().intersect(b.binrel());
    BinRel ag = a.binrel().intersect(g.binrel());
    BinRel rhs = start == RhsStart::Beta ? alt_compose(ab, ag, k) : alt_compose(ag, ab, k);
    if (auto pair = lhs.first_pair_not_in(rhs)) out["witness_pair"] = {pair->first, pair->second};
  }
  emit(out);
  return holds ? kOk : kNotFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-algebra toolkit: term systems, witness chains, congruence identities"};
  app.require_subcommand(1);

  auto* terms = app.add_subcommand("terms", "search for a term system");
  AlgebraSource terms_src;
  terms_src.add_options(terms);
  std::string flavor = "jonsson";
  int terms_n = 2, terms_nmax = 6;
  bool level_scan = false;
  terms->add_option("--flavor", flavor, "jonsson | alvin | defective4");
  terms->add_option("--n", terms_n, "flavor parameter");
  terms->add_flag("--level", level_scan, "scan for the least jonsson level");
  terms->add_option("--n-max", terms_nmax, "largest level to scan");

  auto* chain = app.add_subcommand("chain", "build and validate a witness chain");
  ChainArgs chain_args;
  chain_args.src.add_options(chain);
  chain->add_option("--construction", chain_args.construction,
                    "core | full-reduction | extended | alvin");
  chain->add_flag("--defective", chain_args.defective, "defective variant of core");
  chain->add_option("--system", chain_args.system_path,
                    "term system JSON file (default: search)");
  chain->add_option("--alpha", chain_args.alpha, "congruence (index, blocks, or name)");
  chain->add_option("--beta", chain_args.beta, "congruence");
  chain->add_option("--gamma", chain_args.gamma, "congruence");
  chain->add_option("--elements", chain_args.elements, "witness chain a,b_1,...,c");
  chain->add_option("--n", chain_args.n, "expected witness chain length");
  chain->add_option("--n-dist", chain_args.n_dist, "system level for extended/alvin");
  chain->add_option("--paper-reading", chain_args.reading, "strict | try-all");
  chain->add_option("--format", chain_args.format, "json | text");
  int bridge_left = -1, bridge_right = -1;
  chain->add_option("--x", bridge_left, "left bridge element for alvin");
  chain->add_option("--x2", bridge_right, "right bridge element for alvin");

  auto* spec = app.add_subcommand("spectrum", "minimal-k table over all congruence triples");
  AlgebraSource spec_src;
  spec_src.add_options(spec);
  std::string m_list = "2";
  int k_max = 0;
  std::string spec_format = "csv";
  spec->add_option("--m", m_list, "comma-separated left-side factor counts");
  spec->add_option("--k-max", k_max, "largest k to try (default 2*size^2)");
  spec->add_option("--format", spec_format, "csv | json");

  auto* cong = app.add_subcommand("congruences", "list every congruence");
  AlgebraSource cong_src;
  cong_src.add_options(cong);

  auto* check = app.add_subcommand("check", "check one identity instance");
  AlgebraSource check_src;
  check_src.add_options(check);
  std::string c_alpha = "top", c_beta, c_gamma, rhs_start = "beta";
  int c_m = 2, c_k = 4;
  check->add_option("--alpha", c_alpha, "congruence");
  check->add_option("--beta", c_beta, "congruence")->required();
  check->add_option("--gamma", c_gamma, "congruence")->required();
  check->add_option("--m", c_m, "left-side factors");
  check->add_option("--k", c_k, "right-side factors");
  check->add_option("--rhs-start", rhs_start, "beta | gamma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*terms) return cmd_terms(terms_src, flavor, terms_n, terms_nmax, level_scan);
    if (*chain) {
      if (chain->count("--x")) chain_args.bridge_left = bridge_left;
      if (chain->count("--x2")) chain_args.bridge_right = bridge_right;
      return cmd_chain(chain_args);
    }
    if (*spec) return cmd_spectrum(spec_src, m_list, k_max, spec_format);
    if (*cong) return cmd_congruences(cong_src);
    if (*check) return cmd_check(check_src, c_alpha, c_beta, c_gamma, c_m, c_k, rhs_start);
  } catch (const StepValidationError& e) {
    std::cerr << "step validation failed: " << e.what() << "\n";
    return kValidationFailed;
  } catch (const AmbiguousFormulaError& e) {
    std::cerr << "chain construction failed: " << e.what() << "\n";
    return kValidationFailed;
  } catch (const NoBridgeElementError& e) {
    std::cerr << "premise unavailable: " << e.what() << "\n";
    return kNotFound;
  } catch (const VerificationFailedError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kValidationFailed;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource cap hit: " << e.what() << "\n";
    return kInconclusive;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
