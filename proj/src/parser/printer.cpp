#include <sstream>

#include "mqc/parser.hpp"

namespace mqc {

namespace {

// Formula levels: 0 implication / quantifier, 1 disjunction, 2 conjunction,
// 3 atom.
std::string formula_at(const Formula& f, int level);

std::string wrap(std::string s, bool parens) { return parens ? "(" + s + ")" : s; }

std::string formula_at(const Formula& f, int level) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      if (f.args.empty()) return f.name;
      std::string s = f.name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) s += ", ";
        s += print_individual(f.args[i]);
      }
      return s + ")";
    }
    case Formula::Kind::Imp:
      return wrap(formula_at(*f.lhs, 1) + " -> " + formula_at(*f.rhs, 0), level > 0);
    case Formula::Kind::Or:
      return wrap(formula_at(*f.lhs, 1) + " \\/ " + formula_at(*f.rhs, 2), level > 1);
    case Formula::Kind::And:
      return wrap(formula_at(*f.lhs, 2) + " /\\ " + formula_at(*f.rhs, 3), level > 2);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const char* q = f.kind == Formula::Kind::Forall ? "forall " : "exists ";
      return wrap(q + f.name + ". " + formula_at(*f.lhs, 0), level > 0);
    }
  }
  return {};
}

bool is_binder_form(const Term& p) {
  switch (p.kind) {
    case Term::Kind::Lam:
    case Term::Kind::Gen:
    case Term::Kind::Shift:
    case Term::Kind::Case:
    case Term::Kind::Dest:
      return true;
    default:
      return false;
  }
}

// Term levels: 0 binding forms, 1 application, 2 prefix operators, 3 atoms.
std::string term_at(const Term& p, int level) {
  switch (p.kind) {
    case Term::Kind::Hyp:
      return p.var;
    case Term::Kind::Pair:
      return "(" + term_at(*p.p, 0) + ", " + term_at(*p.q, 0) + ")";
    case Term::Kind::ExPair:
      return "[" + print_individual(p.ind) + ", " + term_at(*p.p, 0) + "]";
    case Term::Kind::Inj1:
      return wrap("inl " + term_at(*p.p, 2), level > 2);
    case Term::Kind::Inj2:
      return wrap("inr " + term_at(*p.p, 2), level > 2);
    case Term::Kind::Proj1:
      return wrap("fst " + term_at(*p.p, 2), level > 2);
    case Term::Kind::Proj2:
      return wrap("snd " + term_at(*p.p, 2), level > 2);
    case Term::Kind::Reset:
      return wrap("# " + term_at(*p.p, 2), level > 2);
    case Term::Kind::App:
      return wrap(term_at(*p.p, 1) + " " + term_at(*p.q, 2), level > 1);
    case Term::Kind::Inst:
      return wrap(term_at(*p.p, 1) + " @ " + print_individual(p.ind), level > 1);
    case Term::Kind::Lam:
      return wrap("fun " + p.var + " => " + term_at(*p.p, 0), level > 0);
    case Term::Kind::Gen:
      return wrap("gen " + p.var + " => " + term_at(*p.p, 0), level > 0);
    case Term::Kind::Shift:
      return wrap("shift " + p.var + " => " + term_at(*p.p, 0), level > 0);
    case Term::Kind::Case: {
      // A binding form in the first branch would swallow the `|`.
      auto q1 = term_at(*p.q, is_binder_form(*p.q) ? 1 : 0);
      return wrap("case " + term_at(*p.p, 1) + " of inl " + p.var + " => " + q1 + " | inr " + p.var2 +
                      " => " + term_at(*p.r, 0),
                  level > 0);
    }
    case Term::Kind::Dest:
      return wrap("dest " + term_at(*p.p, 1) + " as [" + p.var + ", " + p.var2 + "] in " + term_at(*p.q, 0),
                  level > 0);
  }
  return {};
}

}  // namespace

std::string print_individual(const Individual& t) {
  if (t.is_var() || t.args.empty()) return t.name;
  std::string s = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ", ";
    s += print_individual(t.args[i]);
  }
  return s + ")";
}

std::string print_formula(const FormulaRef& f) { return formula_at(*f, 0); }

std::string print_proof(const TermRef& p) { return term_at(*p, 0); }

std::string print_context(const HypContext& ctx) {
  std::string s;
  for (const auto& e : ctx.entries()) {
    if (!s.empty()) s += ", ";
    s += e.name + " : " + print_formula(e.formula);
  }
  return s;
}

std::string print_file(const SourceFile& f) {
  std::ostringstream out;
  for (const auto& [name, arity] : f.signature.predicates) out << "pred " << name << "/" << arity << ".\n";
  for (const auto& [name, arity] : f.signature.functions) out << "fn " << name << "/" << arity << ".\n";
  if (f.annotation)
    out << "annot " << f.annotation_name.value_or("T") << " := " << print_formula(*f.annotation) << ".\n";
  for (const auto& e : f.hypotheses.entries()) out << "hyp " << e.name << " : " << print_formula(e.formula) << ".\n";
  for (const auto& t : f.theorems) {
    out << "thm " << t.name << " : " << print_formula(t.statement) << "\n";
    out << "  := " << print_proof(t.proof) << ".\n";
  }
  return out.str();
}

}  // namespace mqc
