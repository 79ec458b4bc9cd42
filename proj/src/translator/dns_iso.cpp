#include <algorithm>

#include "mqc/parser.hpp"
#include "mqc/translator.hpp"

namespace mqc {

HypContext DnsAxiomHandles::context() const {
  HypContext ctx;
  for (const auto& a : axioms) ctx.push(a.name, a.formula);
  return ctx;
}

namespace {

void ordered_vars(const Individual& t, const NameSet& bound, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (!bound.count(t.name) && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) ordered_vars(a, bound, out);
}

// Free variables in order of first occurrence, which survives renaming.
void ordered_vars(const Formula& f, NameSet& bound, std::vector<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      for (const auto& a : f.args) ordered_vars(a, bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool added = bound.insert(f.name).second;
      ordered_vars(*f.lhs, bound, out);
      if (added) bound.erase(f.name);
      return;
    }
    default:
      ordered_vars(*f.lhs, bound, out);
      ordered_vars(*f.rhs, bound, out);
  }
}

TermRef h(const std::string& a) { return hyp(a); }
TermRef ap(TermRef f, TermRef a) { return app(std::move(f), std::move(a)); }
TermRef ap(TermRef f, TermRef a, TermRef b) { return app(app(std::move(f), std::move(a)), std::move(b)); }

class Builder {
 public:
  Builder(FormulaRef T, const DnsAxiomHandles* handles)
      : T_(std::move(T)), tvars_(free_ind_vars(*T_)), handles_(handles) {}

  DnsAxiomHandles collected;

  FormulaRef nn(const FormulaRef& f) const { return not_T(not_T(f, T_), T_); }

  // Returns {~~f -> f^T, f^T -> ~~f}.
  std::pair<TermRef, TermRef> iso(const FormulaRef& f, const NameSet& scope) {
    const Formula& g = *f;
    switch (g.kind) {
      case Formula::Kind::Atom: {
        auto id = lam("c", h("c"));
        return {id, id};
      }
      case Formula::Kind::And: {
        auto A = iso(g.lhs, scope);
        auto B = iso(g.rhs, scope);
        return {conj_term(A.first, B.first), conj_term(A.second, B.second)};
      }
      case Formula::Kind::Or: {
        auto A = iso(g.lhs, scope);
        auto B = iso(g.rhs, scope);
        return {disj_term(A.first, B.first), disj_term(A.second, B.second)};
      }
      case Formula::Kind::Exists: {
        auto [z, body] = open(g, scope);
        auto A = iso(body, with(scope, z));
        return {exists_term(z, A.first), exists_term(z, A.second)};
      }
      case Formula::Kind::Imp: {
        auto A = iso(g.lhs, scope);
        auto B = iso(g.rhs, scope);
        auto At = translate_formula_sub(g.lhs, T_);
        auto Bt = translate_formula_super(g.rhs, T_);
        auto dns_to = need(DnsAxiom::Kind::Imp, imp(imp(At, nn(Bt)), nn(imp(At, Bt))));
        auto dns_from = need(DnsAxiom::Kind::Imp, imp(imp(g.lhs, nn(g.rhs)), nn(f)));
        // to: fun c => fun k => IH_A<- (fun k' => D (fun a => fun k'' => k' a) k)
        //       (fun a => IH_B-> (fun k' => c (fun f => k' (f a))) (fun b => k (fun a' => fun k' => k' b)))
        auto to = lam("c", lam("k", ap(A.second, dns_arg(dns_to),
                                       lam("a", ap(B.first, lam("k'", ap(h("c"), lam("f", ap(h("k'"), ap(h("f"), h("a")))))),
                                                   lam("b", ap(h("k"), lam("a'", lam("k'", ap(h("k'"), h("b")))))))))));
        // from: fun c => fun k => IH_A-> (fun k' => D (fun a => fun k'' => k' a) k)
        //       (fun a => IH_B<- (fun k' => c (fun f => f a k')) (fun b => k (fun a' => b)))
        auto from = lam("c", lam("k", ap(A.first, dns_arg(dns_from),
                                         lam("a", ap(B.second, lam("k'", ap(h("c"), lam("f", ap(h("f"), h("a"), h("k'"))))),
                                                     lam("b", ap(h("k"), lam("a'", h("b")))))))));
        return {to, from};
      }
      case Formula::Kind::Forall: {
        auto [z, body] = open(g, scope);
        auto A = iso(body, with(scope, z));
        auto zi = Individual::var(z);
        auto dns = need(DnsAxiom::Kind::Forall, imp(forall(z, nn(body)), nn(forall(z, body))));
        // to: fun c => fun k => c (fun g => k (gen z => IH-> (fun k' => k' (g @ z))))
        auto to = lam("c", lam("k", ap(h("c"), lam("g", ap(h("k"), gen(z, ap(A.first, lam("k'", ap(h("k'"), inst(h("g"), zi))))))))));
        // from: fun c => fun k => c (fun g => D (gen z => IH<- (g @ z)) k)
        auto from = lam("c", lam("k", ap(h("c"), lam("g", ap(dns, gen(z, ap(A.second, inst(h("g"), zi))), h("k"))))));
        return {to, from};
      }
    }
    return {};
  }

 private:
  static NameSet with(NameSet s, const std::string& x) {
    s.insert(x);
    return s;
  }

  // Renames the binder away from the variables in scope and those of T.
  std::pair<std::string, FormulaRef> open(const Formula& g, const NameSet& scope) const {
    NameSet avoid = scope;
    avoid.insert(tvars_.begin(), tvars_.end());
    auto body_vars = free_ind_vars(*g.lhs);
    body_vars.erase(g.name);
    avoid.insert(body_vars.begin(), body_vars.end());
    auto z = pick_name(g.name, avoid);
    return {z, z == g.name ? g.lhs : subst_ind(g.lhs, g.name, Individual::var(z))};
  }

  // fun c => fun k => IH_A (fun k' => c (fun d => k' (fst d)))
  //   (fun a => IH_B (fun k' => c (fun d => k' (snd d))) (fun b => k (a, b)))
  static TermRef conj_term(const TermRef& ihA, const TermRef& ihB) {
    auto left = lam("k'", ap(h("c"), lam("d", ap(h("k'"), proj1(h("d"))))));
    auto right = lam("k'", ap(h("c"), lam("d", ap(h("k'"), proj2(h("d"))))));
    return lam("c", lam("k", ap(ihA, left, lam("a", ap(ihB, right, lam("b", ap(h("k"), pair(h("a"), h("b")))))))));
  }

  // fun a => fun k => a (fun c => case c of inl a1 => IH_A (fun l => l a1) (fun b => k (inl b))
  //                                       | inr a2 => IH_B (fun l => l a2) (fun b => k (inr b)))
  static TermRef disj_term(const TermRef& ihA, const TermRef& ihB) {
    auto left = ap(ihA, lam("l", ap(h("l"), h("a1"))), lam("b", ap(h("k"), inj1(h("b")))));
    auto right = ap(ihB, lam("l", ap(h("l"), h("a2"))), lam("b", ap(h("k"), inj2(h("b")))));
    return lam("a", lam("k", ap(h("a"), lam("c", case_of(h("c"), "a1", left, "a2", right)))));
  }

  // fun a => fun k => a (fun c => dest c as [z, a1] in IH (fun l => l a1) (fun b => k [z, b]))
  static TermRef exists_term(const std::string& z, const TermRef& ih) {
    auto body = ap(ih, lam("l", ap(h("l"), h("a1"))), lam("b", ap(h("k"), ex_pair(Individual::var(z), h("b")))));
    return lam("a", lam("k", ap(h("a"), lam("c", dest(h("c"), z, "a1", body)))));
  }

  // fun k' => D (fun a => fun k'' => k' a) k
  static TermRef dns_arg(const TermRef& dns) {
    return lam("k'", ap(dns, lam("a", lam("k''", ap(h("k'"), h("a")))), h("k")));
  }

  TermRef need(DnsAxiom::Kind kind, const FormulaRef& instance) {
    NameSet bound;
    std::vector<std::string> vars;
    ordered_vars(*instance, bound, vars);
    FormulaRef closed = instance;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) closed = forall(*it, closed);

    const DnsAxiom* found = nullptr;
    auto search = [&](const DnsAxiomHandles& hs) {
      for (const auto& a : hs.axioms)
        if (a.kind == kind && alpha_eq(a.formula, closed)) return &a;
      return static_cast<const DnsAxiom*>(nullptr);
    };
    if (handles_) {
      found = search(*handles_);
      if (!found) throw TranslationError("missing DNS instance " + print_formula(closed));
    } else {
      found = search(collected);
      if (!found) {
        std::size_t n = 1 + std::count_if(collected.axioms.begin(), collected.axioms.end(),
                                          [&](const DnsAxiom& a) { return a.kind == kind; });
        std::string name = (kind == DnsAxiom::Kind::Forall ? "dns_forall_" : "dns_imp_") + std::to_string(n);
        collected.axioms.push_back({kind, name, closed});
        found = &collected.axioms.back();
      }
    }
    TermRef t = h(found->name);
    for (const auto& v : vars) t = inst(t, Individual::var(v));
    return t;
  }

  FormulaRef T_;
  NameSet tvars_;
  const DnsAxiomHandles* handles_;
};

}  // namespace

DnsAxiomHandles collect_dns_axioms(const FormulaRef& f, const FormulaRef& T) {
  Builder b(T, nullptr);
  b.iso(f, free_ind_vars(*f));
  return b.collected;
}

DnsIso dns_iso(const FormulaRef& f, const FormulaRef& T, const DnsAxiomHandles& axioms) {
  Builder b(T, &axioms);
  auto [to, from] = b.iso(f, free_ind_vars(*f));
  auto sup = translate_formula_super(f, T);
  return {to, from, imp(b.nn(f), sup), imp(sup, b.nn(f))};
}

}  // namespace mqc
