#include "mqc/translator.hpp"

namespace mqc {

FormulaRef not_T(const FormulaRef& f, const FormulaRef& T) { return imp(f, T); }

FormulaRef translate_formula_sub(const FormulaRef& f, const FormulaRef& T) {
  const Formula& g = *f;
  switch (g.kind) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      auto a = translate_formula_sub(g.lhs, T);
      auto b = translate_formula_sub(g.rhs, T);
      return a == g.lhs && b == g.rhs ? f : binary(g.kind, a, b);
    }
    case Formula::Kind::Imp:
      return imp(translate_formula_sub(g.lhs, T), translate_formula_super(g.rhs, T));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      if (g.kind == Formula::Kind::Exists && is_sigma(*g.lhs)) return f;
      // The body will mention T, which must not be captured by the binder.
      std::string x = g.name;
      FormulaRef body = g.lhs;
      NameSet tv = free_ind_vars(*T);
      if (tv.count(x)) {
        NameSet avoid = free_ind_vars(*body);
        avoid.insert(tv.begin(), tv.end());
        x = fresh_name(g.name, avoid);
        body = subst_ind(body, g.name, Individual::var(x));
      }
      if (g.kind == Formula::Kind::Exists) return exists(x, translate_formula_sub(body, T));
      return forall(x, translate_formula_super(body, T));
    }
  }
  return f;
}

FormulaRef translate_formula_super(const FormulaRef& f, const FormulaRef& T) {
  return not_T(not_T(translate_formula_sub(f, T), T), T);
}

HypContext translate_context(const HypContext& ctx, const FormulaRef& T) {
  HypContext out;
  for (const auto& e : ctx.entries()) out.push(e.name, translate_formula_sub(e.formula, T));
  return out;
}

namespace {

NameSet fv(const TermRef& p) { return free_hyp_vars(*p); }

NameSet fv_minus(const TermRef& p, const std::string& a) {
  auto s = free_hyp_vars(*p);
  s.erase(a);
  return s;
}

NameSet join(NameSet a, const NameSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

NameSet with(NameSet a, std::initializer_list<std::string> names) {
  for (const auto& n : names) a.insert(n);
  return a;
}

TermRef var(const std::string& a) { return hyp(a); }

TermRef id_cont() { return lam("a", var("a")); }

TermRef cps(const TermRef& p) {
  const Term& t = *p;
  switch (t.kind) {
    case Term::Kind::Hyp: {
      auto k = pick_name("k", {t.var});
      return lam(k, app(var(k), p));
    }
    case Term::Kind::Lam: {
      auto k = pick_name("k", fv(p));
      auto k1 = pick_name("k'", with(fv(t.p), {t.var}));
      auto b = pick_name("b", {k1});
      return lam(k, app(var(k), lam(t.var, lam(k1, app(cps(t.p), lam(b, app(var(k1), var(b))))))));
    }
    case Term::Kind::App: {
      auto k = pick_name("k", fv(p));
      auto f = pick_name("f", with(fv(t.q), {k}));
      auto a = pick_name("a", {f, k});
      auto b = pick_name("b", {k});
      return lam(k, app(cps(t.p), lam(f, app(cps(t.q), lam(a, app(app(var(f), var(a)), lam(b, app(var(k), var(b)))))))));
    }
    case Term::Kind::Pair: {
      auto k = pick_name("k", fv(p));
      auto a = pick_name("a", with(fv(t.q), {k}));
      auto b = pick_name("b", {k, a});
      return lam(k, app(cps(t.p), lam(a, app(cps(t.q), lam(b, app(var(k), pair(var(a), var(b))))))));
    }
    case Term::Kind::Proj1:
    case Term::Kind::Proj2: {
      auto k = pick_name("k", fv(p));
      auto c = pick_name("c", {k});
      auto proj = t.kind == Term::Kind::Proj1 ? proj1(var(c)) : proj2(var(c));
      return lam(k, app(cps(t.p), lam(c, app(var(k), proj))));
    }
    case Term::Kind::Inj1:
    case Term::Kind::Inj2: {
      auto k = pick_name("k", fv(p));
      auto a = pick_name("a", {k});
      auto inj = t.kind == Term::Kind::Inj1 ? inj1(var(a)) : inj2(var(a));
      return lam(k, app(cps(t.p), lam(a, app(var(k), inj))));
    }
    case Term::Kind::Case: {
      auto k = pick_name("k", with(join(join(fv(t.p), fv(t.q)), fv(t.r)), {t.var, t.var2}));
      auto c = pick_name("c", with(join(fv_minus(t.q, t.var), fv_minus(t.r, t.var2)), {k}));
      return lam(k, app(cps(t.p), lam(c, case_of(var(c), t.var, app(cps(t.q), var(k)), t.var2,
                                                  app(cps(t.r), var(k))))));
    }
    case Term::Kind::Gen: {
      auto k = pick_name("k", fv(p));
      auto k1 = pick_name("k'", fv(t.p));
      auto b = pick_name("b", {k1});
      return lam(k, app(var(k), gen(t.var, lam(k1, app(cps(t.p), lam(b, app(var(k1), var(b))))))));
    }
    case Term::Kind::Inst: {
      auto k = pick_name("k", fv(p));
      auto f = pick_name("f", {k});
      return lam(k, app(cps(t.p), lam(f, app(inst(var(f), t.ind), var(k)))));
    }
    case Term::Kind::ExPair: {
      auto k = pick_name("k", fv(p));
      auto a = pick_name("a", {k});
      return lam(k, app(cps(t.p), lam(a, app(var(k), ex_pair(t.ind, var(a))))));
    }
    case Term::Kind::Dest: {
      auto k = pick_name("k", with(join(fv(t.p), fv(t.q)), {t.var2}));
      auto c = pick_name("c", with(fv_minus(t.q, t.var2), {k}));
      return lam(k, app(cps(t.p), lam(c, dest(var(c), t.var, t.var2, app(cps(t.q), var(k))))));
    }
    case Term::Kind::Reset: {
      auto k = pick_name("k", fv(p));
      return lam(k, app(var(k), app(cps(t.p), id_cont())));
    }
    case Term::Kind::Shift: {
      auto k = pick_name("k", fv(t.p));
      auto a = pick_name("a", {k});
      auto k1 = pick_name("k'", {k, a});
      auto wrapper = lam(a, lam(k1, app(var(k1), app(var(k), var(a)))));
      return lam(k, subst_hyp(app(cps(t.p), id_cont()), t.var, wrapper));
    }
  }
  return p;
}

}  // namespace

TermRef cps_term(const TermRef& p, const TranslationEnv& env) {
  if (!env.T && contains_control(*p))
    throw TranslationError("UnresolvedT: the term uses shift or reset but no annotation formula is known");
  return cps(p);
}

}  // namespace mqc
