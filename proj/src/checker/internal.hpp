#pragma once

// Elaboration machinery: formulas with metavariables, unification with
// postponed constraints, and the concrete derivation handed to the kernel.

#include <optional>
#include <string>
#include <vector>

#include "mqc/checker.hpp"

namespace mqc::detail {

struct TyNode;
using Ty = std::shared_ptr<const TyNode>;

/// A pending substitution, applied left to right.
struct SubstEntry {
  std::string x;
  Individual t;
};
using Subst = std::vector<SubstEntry>;

struct TyNode {
  // Ground wraps a metavariable-free formula; atoms are always ground.
  enum class Kind { Ground, And, Or, Imp, Forall, Exists, Meta };

  Kind kind = Kind::Ground;
  FormulaRef ground;
  std::string binder;
  Ty a, b;  // operands, or the quantifier body in `a`
  int meta = -1;
  Subst sigma;  // Meta: substitution still to apply to the solution
};

Ty ty_ground(FormulaRef f);
Ty ty_binary(TyNode::Kind kind, Ty a, Ty b);
Ty ty_quant(TyNode::Kind kind, std::string x, Ty body);

/// t[s/x], capture-avoiding; pushed onto metavariables as pending work.
Ty ty_subst(const Ty& t, const std::string& x, const Individual& s);

class Unifier {
 public:
  /// `scope`: invented binders the solution may mention because the
  /// metavariable sits under them.
  Ty fresh_meta(NameSet scope = {});
  /// A bound-variable name the unifier invented; such names never end up free
  /// in a solution.
  std::string fresh_binder(std::string_view base);
  const NameSet& scope_of(const Ty& meta) const { return scope_[static_cast<std::size_t>(meta->meta)]; }

  Ty resolve(Ty t) const;
  /// Head view: resolves metas and unfolds one level of a ground formula.
  Ty view(const Ty& t) const;

  bool unify(const Ty& a, const Ty& b);
  /// Retries postponed constraints, then searches among the remaining
  /// candidate solutions. False if no assignment satisfies everything.
  bool solve();

  /// Fully concrete formula; unassigned metas become the closed atom `Any`.
  FormulaRef zonk(const Ty& t);
  /// Concrete formula, or null while a metavariable is still open.
  FormulaRef ground_of(const Ty& t) const;

 private:
  struct Postponed {
    Ty meta;
    Ty other;
  };

  bool unify_meta(const Ty& m, const Ty& other);
  bool occurs(int id, const Ty& t) const;
  std::vector<FormulaRef> atom_candidates(const FormulaRef& atom, const Ty& meta) const;
  std::size_t assigned_count() const;

  std::vector<Ty> assign_;
  std::vector<NameSet> scope_;
  std::vector<Postponed> postponed_;
  NameSet internal_;
};

/// A zonked derivation: every node records the formula it was checked at.
struct Derivation {
  TermRef term;
  FormulaRef goal;
  std::vector<Derivation> kids;
};

struct KernelEnv {
  CheckMode::Kind mode = CheckMode::Kind::MqcPlus;
  /// The global annotation formula, when fixed.
  FormulaRef T;
};

/// Re-verifies a derivation rule by rule. Throws CheckError.
void kernel_check(const KernelEnv& env, const HypContext& ctx, bool delimited, const Derivation& d);

struct ElabResult {
  Derivation derivation;
  FormulaRef formula;
  std::optional<FormulaRef> resolved_T;
};

ElabResult elaborate(const CheckMode& mode, const HypContext& ctx, const Annotation& ann, const TermRef& p,
                     const FormulaRef& goal);

[[noreturn]] void fail(CheckErrorKind kind, const char* rule, const TermRef& at, const std::string& message);

}  // namespace mqc::detail
