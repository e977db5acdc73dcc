#include "jlab/term.hpp"

#include <algorithm>
#include <cctype>

#include "jlab/errors.hpp"

namespace jlab {

Term Term::variable(int index) {
  Term t;
  t.var = index;
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  Term t;
  t.symbol = std::move(symbol);
  t.args = std::move(args);
  return t;
}

int Term::depth() const {
  if (is_var()) return 0;
  int d = 0;
  for (const Term& a : args) d = std::max(d, a.depth());
  return d + 1;
}

int Term::node_count() const {
  if (is_var()) return 1;
  int n = 1;
  for (const Term& a : args) n += a.node_count();
  return n;
}

bool Term::operator==(const Term& other) const {
  if (var != other.var || symbol != other.symbol) return false;
  return args == other.args;
}

int eval_term(const FiniteAlgebra& alg, const Term& t, const Assignment& asg) {
  if (t.is_var()) {
    if (t.var > 2) throw Error("variable index " + std::to_string(t.var) + " outside x,y,z");
    return asg[static_cast<std::size_t>(t.var)];
  }
  int op = alg.op_index(t.symbol);
  if (op < 0) throw UnknownSymbolError(t.symbol);
  const Operation& f = alg.op(op);
  if (static_cast<int>(t.args.size()) != f.arity)
    throw ArityMismatchError(t.symbol, f.arity, static_cast<int>(t.args.size()));
  std::vector<int> vals;
  vals.reserve(t.args.size());
  for (const Term& a : t.args) vals.push_back(eval_term(alg, a, asg));
  return f.apply(alg.size(), vals);
}

std::vector<int> eval_table(const FiniteAlgebra& alg, const Term& t) {
  int s = alg.size();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(s) * s * s);
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y)
      for (int z = 0; z < s; ++z) out.push_back(eval_term(alg, t, {x, y, z}));
  return out;
}

bool check_equation(const FiniteAlgebra& alg, const Term& lhs, const Term& rhs) {
  return !equation_failure(alg, lhs, rhs).has_value();
}

std::optional<Assignment> equation_failure(const FiniteAlgebra& alg, const Term& lhs,
                                           const Term& rhs) {
  int s = alg.size();
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y)
      for (int z = 0; z < s; ++z) {
        Assignment asg{x, y, z};
        if (eval_term(alg, lhs, asg) != eval_term(alg, rhs, asg)) return asg;
      }
  return std::nullopt;
}

Term subst(const Term& t, const Term& for_x, const Term& for_y, const Term& for_z) {
  if (t.is_var()) {
    switch (t.var) {
      case 0: return for_x;
      case 1: return for_y;
      default: return for_z;
    }
  }
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(subst(a, for_x, for_y, for_z));
  return Term::apply(t.symbol, std::move(args));
}

Term reverse_term(const Term& t) { return subst(t, Term::z(), Term::y(), Term::x()); }

std::string term_to_string(const Term& t) {
  if (t.is_var()) {
    static const char* names[] = {"x", "y", "z"};
    if (t.var <= 2) return names[t.var];
    return "v" + std::to_string(t.var);
  }
  std::string out = t.symbol;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ',';
    out += term_to_string(t.args[i]);
  }
  out += ')';
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '+' || text[pos] == '*' || text[pos] == '^'))
      ++pos;
    if (pos == start) throw ParseError("expected identifier", pos);
    return text.substr(start, pos - start);
  }

  Term term() {
    std::string name = ident();
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      std::vector<Term> args;
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
      } else {
        while (true) {
          args.push_back(term());
          skip_ws();
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
          }
          throw ParseError("expected ',' or ')'", pos);
        }
      }
      return Term::apply(std::move(name), std::move(args));
    }
    if (name == "x") return Term::x();
    if (name == "y") return Term::y();
    if (name == "z") return Term::z();
    // A bare identifier other than a variable is a nullary application.
    return Term::apply(std::move(name), {});
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  Parser p{text};
  Term t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input after term", p.pos);
  return t;
}

}  // namespace jlab
