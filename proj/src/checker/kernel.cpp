#include "checker/internal.hpp"
#include "mqc/parser.hpp"

namespace mqc::detail {

namespace {

void require(bool ok, const char* rule, const Derivation& d, const std::string& what) {
  if (!ok) fail(CheckErrorKind::RuleMismatch, rule, d.term, what + " at goal " + print_formula(d.goal));
}

void same(const FormulaRef& have, const FormulaRef& want, const char* rule, const Derivation& d) {
  if (!alpha_eq(have, want))
    fail(CheckErrorKind::RuleMismatch, rule, d.term,
         "expected " + print_formula(want) + ", found " + print_formula(have));
}

void fresh(const std::string& x, const KernelEnv& env, const HypContext& ctx,
           std::initializer_list<const FormulaRef*> also, const char* rule, const Derivation& d) {
  bool clash = ctx.free_ind_vars().count(x) > 0 || (env.T && free_ind_vars(*env.T).count(x) > 0);
  for (const FormulaRef* f : also) clash = clash || free_ind_vars(**f).count(x) > 0;
  if (clash)
    fail(CheckErrorKind::FreshnessViolation, rule, d.term, "eigenvariable '" + x + "' is not fresh");
}

}  // namespace

void kernel_check(const KernelEnv& env, const HypContext& ctx, bool delimited, const Derivation& d) {
  const Term& t = *d.term;
  const FormulaRef& G = d.goal;
  auto kid = [&](std::size_t i) -> const Derivation& {
    require(i < d.kids.size(), "derivation", d, "malformed derivation");
    return d.kids[i];
  };
  auto under = [&](const std::string& a, const FormulaRef& A, bool delim, const Derivation& sub) {
    kernel_check(env, ctx.extended(a, A), delim, sub);
  };

  switch (t.kind) {
    case Term::Kind::Hyp: {
      const FormulaRef* A = ctx.lookup(t.var);
      if (!A) fail(CheckErrorKind::UnboundHypothesis, "Ax", d.term, "hypothesis '" + t.var + "' is not in scope");
      same(*A, G, "Ax", d);
      return;
    }
    case Term::Kind::Inj1:
    case Term::Kind::Inj2: {
      const char* rule = t.kind == Term::Kind::Inj1 ? "OrI1" : "OrI2";
      require(G->kind == Formula::Kind::Or, rule, d, "injection needs a disjunction");
      const auto& k = kid(0);
      same(k.goal, t.kind == Term::Kind::Inj1 ? G->lhs : G->rhs, rule, d);
      kernel_check(env, ctx, delimited, k);
      return;
    }
    case Term::Kind::Case: {
      const auto& s = kid(0);
      require(s.goal->kind == Formula::Kind::Or, "OrE", d, "case scrutinee is not a disjunction");
      kernel_check(env, ctx, delimited, s);
      same(kid(1).goal, G, "OrE", d);
      same(kid(2).goal, G, "OrE", d);
      under(t.var, s.goal->lhs, delimited, kid(1));
      under(t.var2, s.goal->rhs, delimited, kid(2));
      return;
    }
    case Term::Kind::Pair:
      require(G->kind == Formula::Kind::And, "AndI", d, "pair needs a conjunction");
      same(kid(0).goal, G->lhs, "AndI", d);
      same(kid(1).goal, G->rhs, "AndI", d);
      kernel_check(env, ctx, delimited, kid(0));
      kernel_check(env, ctx, delimited, kid(1));
      return;
    case Term::Kind::Proj1:
    case Term::Kind::Proj2: {
      const char* rule = t.kind == Term::Kind::Proj1 ? "AndE1" : "AndE2";
      const auto& k = kid(0);
      require(k.goal->kind == Formula::Kind::And, rule, d, "projection from a non-conjunction");
      same(t.kind == Term::Kind::Proj1 ? k.goal->lhs : k.goal->rhs, G, rule, d);
      kernel_check(env, ctx, delimited, k);
      return;
    }
    case Term::Kind::Lam:
      require(G->kind == Formula::Kind::Imp, "ImpI", d, "abstraction needs an implication");
      same(kid(0).goal, G->rhs, "ImpI", d);
      under(t.var, G->lhs, delimited, kid(0));
      return;
    case Term::Kind::App: {
      const auto& f = kid(0);
      require(f.goal->kind == Formula::Kind::Imp, "ImpE", d, "applied term is not an implication");
      same(f.goal->rhs, G, "ImpE", d);
      same(kid(1).goal, f.goal->lhs, "ImpE", d);
      kernel_check(env, ctx, delimited, f);
      kernel_check(env, ctx, delimited, kid(1));
      return;
    }
    case Term::Kind::Gen:
      require(G->kind == Formula::Kind::Forall, "ForallI", d, "generalization needs a universal");
      fresh(t.var, env, ctx, {&G}, "ForallI", d);
      same(kid(0).goal, subst_ind(G->lhs, G->name, Individual::var(t.var)), "ForallI", d);
      kernel_check(env, ctx, delimited, kid(0));
      return;
    case Term::Kind::Inst: {
      const auto& k = kid(0);
      require(k.goal->kind == Formula::Kind::Forall, "ForallE", d, "instantiated term is not a universal");
      same(subst_ind(k.goal->lhs, k.goal->name, t.ind), G, "ForallE", d);
      kernel_check(env, ctx, delimited, k);
      return;
    }
    case Term::Kind::ExPair:
      require(G->kind == Formula::Kind::Exists, "ExistsI", d, "witness pair needs an existential");
      same(kid(0).goal, subst_ind(G->lhs, G->name, t.ind), "ExistsI", d);
      kernel_check(env, ctx, delimited, kid(0));
      return;
    case Term::Kind::Dest: {
      const auto& s = kid(0);
      require(s.goal->kind == Formula::Kind::Exists, "ExistsE", d, "destructed term is not an existential");
      fresh(t.var, env, ctx, {&G, &s.goal}, "ExistsE", d);
      same(kid(1).goal, G, "ExistsE", d);
      kernel_check(env, ctx, delimited, s);
      under(t.var2, subst_ind(s.goal->lhs, s.goal->name, Individual::var(t.var)), delimited, kid(1));
      return;
    }
    case Term::Kind::Reset:
      if (env.mode == CheckMode::Kind::MqcOnly)
        fail(CheckErrorKind::ControlInMqc, "Reset", d.term, "reset is not part of minimal logic");
      if (!is_sigma(*G))
        fail(CheckErrorKind::SigmaViolation, "Reset", d.term, "reset at non-Sigma formula " + print_formula(G));
      if (!env.T || !alpha_eq(G, env.T))
        fail(CheckErrorKind::GlobalTConflict, "Reset", d.term, "reset at " + print_formula(G) + " differs from the global formula");
      same(kid(0).goal, G, "Reset", d);
      kernel_check(env, ctx, true, kid(0));
      return;
    case Term::Kind::Shift:
      if (env.mode == CheckMode::Kind::MqcOnly)
        fail(CheckErrorKind::ControlInMqc, "Shift", d.term, "shift is not part of minimal logic");
      if (!delimited || !env.T)
        fail(CheckErrorKind::ShiftOutsideDelimiter, "Shift", d.term, "shift requires an annotation or enclosing reset");
      same(kid(0).goal, env.T, "Shift", d);
      under(t.var, imp(G, env.T), true, kid(0));
      return;
  }
}

void fail(CheckErrorKind kind, const char* rule, const TermRef& at, const std::string& message) {
  throw CheckError(kind, rule, at, message);
}

}  // namespace mqc::detail
