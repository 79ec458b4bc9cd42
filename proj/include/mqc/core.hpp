#pragma once

// Abstract syntax for MQC+: individuals, formulas and proof terms, together
// with free variables, capture-avoiding substitution and alpha-equivalence.
//
// Formulas and proof terms are immutable trees shared through
// std::shared_ptr<const ...>. Substitution returns the original node whenever
// nothing below it changes, so reducts share most of their structure with the
// term they came from.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mqc {

using NameSet = std::set<std::string>;

// ---------------------------------------------------------------------------
// Individuals

struct Individual {
  enum class Kind { Var, Fn };

  Kind kind = Kind::Var;
  std::string name;
  std::vector<Individual> args;  // empty for variables and constants

  static Individual var(std::string name);
  static Individual fn(std::string symbol, std::vector<Individual> args = {});

  bool is_var() const { return kind == Kind::Var; }

  friend bool operator==(const Individual&, const Individual&) = default;
};

void collect_vars(const Individual& t, NameSet& out);
NameSet free_ind_vars(const Individual& t);
bool occurs(std::string_view x, const Individual& t);
Individual subst_ind(const Individual& t, std::string_view x, const Individual& by);

// ---------------------------------------------------------------------------
// Signatures

struct Signature {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;

  bool has_predicate(std::string_view name) const;
  bool has_function(std::string_view name) const;
};

// ---------------------------------------------------------------------------
// Formulas

struct Formula;
using FormulaRef = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, And, Or, Imp, Forall, Exists };

  Kind kind = Kind::Atom;
  std::string name;              // predicate symbol, or the bound variable
  std::vector<Individual> args;  // atom arguments
  FormulaRef lhs;                // left operand, or quantifier body
  FormulaRef rhs;                // right operand

  bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }
  bool is_binary() const {
    return kind == Kind::And || kind == Kind::Or || kind == Kind::Imp;
  }
  const FormulaRef& body() const { return lhs; }
};

FormulaRef atom(std::string pred, std::vector<Individual> args = {});
FormulaRef conj(FormulaRef a, FormulaRef b);
FormulaRef disj(FormulaRef a, FormulaRef b);
FormulaRef imp(FormulaRef a, FormulaRef b);
FormulaRef forall(std::string x, FormulaRef body);
FormulaRef exists(std::string x, FormulaRef body);
FormulaRef binary(Formula::Kind kind, FormulaRef a, FormulaRef b);
FormulaRef quantifier(Formula::Kind kind, std::string x, FormulaRef body);

/// True iff no implication and no universal quantifier occurs in `f`.
bool is_sigma(const Formula& f);

NameSet free_ind_vars(const Formula& f);
void collect_free_ind_vars(const Formula& f, NameSet& out);
FormulaRef subst_ind(const FormulaRef& f, std::string_view x, const Individual& t);
bool alpha_eq(const FormulaRef& f, const FormulaRef& g);

/// Structure-insensitive size, used by generators and shrinking.
std::size_t formula_size(const Formula& f);

// ---------------------------------------------------------------------------
// Proof terms

struct Term;
using TermRef = std::shared_ptr<const Term>;

struct Term {
  enum class Kind {
    Hyp,
    Inj1,
    Inj2,
    Case,
    Pair,
    Proj1,
    Proj2,
    Lam,
    App,
    Gen,
    Inst,
    ExPair,
    Dest,
    Reset,
    Shift
  };

  Kind kind = Kind::Hyp;
  // Hyp: the variable. Lam/Shift: bound hypothesis. Gen: bound individual.
  // Case: a1. Dest: the bound individual x.
  std::string var;
  // Case: a2. Dest: the bound hypothesis a.
  std::string var2;
  // Inst and ExPair carry an individual.
  Individual ind;
  // Children. Case: scrutinee, q1, q2. Dest: scrutinee, body.
  // App/Pair: p, q. Everything else: p only.
  TermRef p, q, r;
};

TermRef hyp(std::string a);
TermRef inj1(TermRef p);
TermRef inj2(TermRef p);
TermRef case_of(TermRef p, std::string a1, TermRef q1, std::string a2, TermRef q2);
TermRef pair(TermRef p, TermRef q);
TermRef proj1(TermRef p);
TermRef proj2(TermRef p);
TermRef lam(std::string a, TermRef body);
TermRef app(TermRef f, TermRef arg);
TermRef gen(std::string x, TermRef body);
TermRef inst(TermRef p, Individual t);
TermRef ex_pair(Individual t, TermRef p);
TermRef dest(TermRef p, std::string x, std::string a, TermRef body);
TermRef reset(TermRef p);
TermRef shift(std::string k, TermRef body);

/// Membership in the value grammar: a | inl V | inr V | (V,V) | [t,V] | fun | gen.
bool is_value(const Term& p);

NameSet free_hyp_vars(const Term& p);
NameSet free_ind_vars(const Term& p);

/// p{q/a}, capture-avoiding in both the hypothesis and the individual
/// namespace.
TermRef subst_hyp(const TermRef& p, std::string_view a, const TermRef& q);
/// p{t/x}, capture-avoiding under Gen and Dest.
TermRef subst_ind(const TermRef& p, std::string_view x, const Individual& t);

bool alpha_eq(const TermRef& p, const TermRef& q);
bool contains_control(const Term& p);
std::size_t term_size(const Term& p);

// ---------------------------------------------------------------------------
// Contexts and annotations

struct HypEntry {
  std::string name;
  FormulaRef formula;
};

class HypContext {
 public:
  HypContext() = default;
  HypContext(std::initializer_list<HypEntry> entries) : entries_(entries) {}

  /// Rightmost binding wins.
  const FormulaRef* lookup(std::string_view name) const;
  void push(std::string name, FormulaRef f) { entries_.push_back({std::move(name), std::move(f)}); }
  void pop() { entries_.pop_back(); }
  HypContext extended(std::string name, FormulaRef f) const;

  const std::vector<HypEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  NameSet free_ind_vars() const;
  NameSet names() const;

 private:
  std::vector<HypEntry> entries_;
};

/// The optional Sigma-formula under the turnstile.
using Annotation = std::optional<FormulaRef>;

// ---------------------------------------------------------------------------
// Fresh names

/// Returns a name built from `base` with a global counter suffix that is not
/// in `avoid`. Thread-safe.
std::string fresh_name(std::string_view base, const NameSet& avoid = {});
/// Returns `base` itself when it is not in `avoid`, otherwise primed variants
/// (base', base'') and finally a counter-suffixed name.
std::string pick_name(std::string_view base, const NameSet& avoid);

}  // namespace mqc
