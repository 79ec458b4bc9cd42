#include "checker/internal.hpp"
#include "mqc/parser.hpp"

namespace mqc::detail {

namespace {

using K = TyNode::Kind;

struct ElabNode {
  TermRef term;
  Ty goal;
  std::vector<ElabNode> kids;
};

struct Scope {
  std::vector<std::pair<std::string, Ty>> hyps;

  const Ty* lookup(const std::string& a) const {
    for (auto it = hyps.rbegin(); it != hyps.rend(); ++it)
      if (it->first == a) return &it->second;
    return nullptr;
  }
};

class Elaborator {
 public:
  Elaborator(const CheckMode& mode, const Annotation& ann) : mode_(mode.kind) {
    if (mode.global_T) {
      T_ = ty_ground(*mode.global_T);
      T_fixed_ = true;
    }
    if (ann) {
      if (T_ && !alpha_eq(*mode.global_T, *ann))
        fail(CheckErrorKind::GlobalTConflict, "annotation", nullptr,
             "annotation " + print_formula(*ann) + " differs from the global formula " +
                 print_formula(*mode.global_T));
      T_ = ty_ground(*ann);
      T_fixed_ = true;
    }
    if (!T_) T_ = u_.fresh_meta();
  }

  Unifier& unifier() { return u_; }
  const Ty& T() const { return T_; }
  bool T_fixed() const { return T_fixed_; }

  ElabNode elab(Scope& sc, bool delimited, const TermRef& p, const Ty& goal) {
    ElabNode node{p, goal, {}};
    const Term& t = *p;
    switch (t.kind) {
      case Term::Kind::Hyp: {
        const Ty* a = sc.lookup(t.var);
        if (!a) fail(CheckErrorKind::UnboundHypothesis, "Ax", p, "hypothesis '" + t.var + "' is not in scope");
        if (!u_.unify(*a, goal)) mismatch("Ax", p, *a, goal);
        break;
      }
      case Term::Kind::Inj1:
      case Term::Kind::Inj2: {
        const char* rule = t.kind == Term::Kind::Inj1 ? "OrI1" : "OrI2";
        auto [A, B] = expect_binary(K::Or, goal, rule, p);
        node.kids.push_back(elab(sc, delimited, t.p, t.kind == Term::Kind::Inj1 ? A : B));
        break;
      }
      case Term::Kind::Case: {
        auto A = u_.fresh_meta();
        auto B = u_.fresh_meta();
        node.kids.push_back(elab(sc, delimited, t.p, ty_binary(K::Or, A, B)));
        node.kids.push_back(under(sc, t.var, A, delimited, t.q, goal));
        node.kids.push_back(under(sc, t.var2, B, delimited, t.r, goal));
        break;
      }
      case Term::Kind::Pair: {
        auto [A, B] = expect_binary(K::And, goal, "AndI", p);
        node.kids.push_back(elab(sc, delimited, t.p, A));
        node.kids.push_back(elab(sc, delimited, t.q, B));
        break;
      }
      case Term::Kind::Proj1:
        node.kids.push_back(elab(sc, delimited, t.p, ty_binary(K::And, goal, u_.fresh_meta())));
        break;
      case Term::Kind::Proj2:
        node.kids.push_back(elab(sc, delimited, t.p, ty_binary(K::And, u_.fresh_meta(), goal)));
        break;
      case Term::Kind::Lam: {
        auto [A, B] = expect_binary(K::Imp, goal, "ImpI", p);
        node.kids.push_back(under(sc, t.var, A, delimited, t.p, B));
        break;
      }
      case Term::Kind::App: {
        auto A = u_.fresh_meta();
        auto F = ty_binary(K::Imp, A, goal);
        if (t.p->kind == Term::Kind::Lam) {
          auto arg = elab(sc, delimited, t.q, A);
          node.kids.push_back(elab(sc, delimited, t.p, F));
          node.kids.push_back(std::move(arg));
        } else {
          node.kids.push_back(elab(sc, delimited, t.p, F));
          node.kids.push_back(elab(sc, delimited, t.q, A));
        }
        break;
      }
      case Term::Kind::Gen: {
        auto [y, B] = expect_quant(K::Forall, goal, "ForallI", p);
        node.kids.push_back(elab(sc, delimited, t.p, ty_subst(B, y, Individual::var(t.var))));
        break;
      }
      case Term::Kind::Inst: {
        auto y = u_.fresh_binder("y");
        auto M = u_.fresh_meta({y});
        node.kids.push_back(elab(sc, delimited, t.p, ty_quant(K::Forall, y, M)));
        auto inst = ty_subst(M, y, t.ind);
        if (!u_.unify(inst, goal)) mismatch("ForallE", p, inst, goal);
        break;
      }
      case Term::Kind::ExPair: {
        auto [y, B] = expect_quant(K::Exists, goal, "ExistsI", p);
        node.kids.push_back(elab(sc, delimited, t.p, ty_subst(B, y, t.ind)));
        break;
      }
      case Term::Kind::Dest: {
        auto y = u_.fresh_binder("y");
        auto M = u_.fresh_meta({y});
        node.kids.push_back(elab(sc, delimited, t.p, ty_quant(K::Exists, y, M)));
        node.kids.push_back(under(sc, t.var2, ty_subst(M, y, Individual::var(t.var)), delimited, t.q, goal));
        break;
      }
      case Term::Kind::Reset: {
        if (mode_ == CheckMode::Kind::MqcOnly)
          fail(CheckErrorKind::ControlInMqc, "Reset", p, "reset is not part of minimal logic");
        if (auto g = u_.ground_of(goal); g && !is_sigma(*g))
          fail(CheckErrorKind::SigmaViolation, "Reset", p, "reset at non-Sigma formula " + print_formula(g));
        if (!u_.unify(goal, T_)) {
          fail(CheckErrorKind::GlobalTConflict, "Reset", p,
               "reset at " + show(goal) + " but the global formula is " + show(T_));
        }
        T_fixed_ = true;
        node.kids.push_back(elab(sc, true, t.p, goal));
        break;
      }
      case Term::Kind::Shift: {
        if (mode_ == CheckMode::Kind::MqcOnly)
          fail(CheckErrorKind::ControlInMqc, "Shift", p, "shift is not part of minimal logic");
        if (!delimited)
          fail(CheckErrorKind::ShiftOutsideDelimiter, "Shift", p, "shift requires an annotation or enclosing reset");
        T_fixed_ = true;
        node.kids.push_back(under(sc, t.var, ty_binary(K::Imp, goal, T_), true, t.p, T_));
        break;
      }
    }
    return node;
  }

  Derivation zonk(const ElabNode& n) {
    Derivation d{n.term, u_.zonk(n.goal), {}};
    d.kids.reserve(n.kids.size());
    for (const auto& k : n.kids) d.kids.push_back(zonk(k));
    return d;
  }

 private:
  ElabNode under(Scope& sc, const std::string& a, const Ty& A, bool delimited, const TermRef& body, const Ty& goal) {
    sc.hyps.emplace_back(a, A);
    auto n = elab(sc, delimited, body, goal);
    sc.hyps.pop_back();
    return n;
  }

  std::pair<Ty, Ty> expect_binary(K kind, const Ty& goal, const char* rule, const TermRef& p) {
    Ty v = u_.view(goal);
    if (v->kind == kind) return {v->a, v->b};
    if (v->kind != K::Meta) mismatch(rule, p, goal, nullptr);
    auto tmpl = ty_binary(kind, u_.fresh_meta(u_.scope_of(v)), u_.fresh_meta(u_.scope_of(v)));
    if (v->kind != K::Meta || !u_.unify(goal, tmpl)) mismatch(rule, p, goal, nullptr);
    return {tmpl->a, tmpl->b};
  }

  std::pair<std::string, Ty> expect_quant(K kind, const Ty& goal, const char* rule, const TermRef& p) {
    Ty v = u_.view(goal);
    if (v->kind == kind) return {v->binder, v->a};
    if (v->kind != K::Meta) mismatch(rule, p, goal, nullptr);
    auto y = u_.fresh_binder("y");
    NameSet scope = u_.scope_of(v);
    scope.insert(y);
    auto tmpl = ty_quant(kind, y, u_.fresh_meta(std::move(scope)));
    if (v->kind != K::Meta || !u_.unify(goal, tmpl)) mismatch(rule, p, goal, nullptr);
    return {tmpl->binder, tmpl->a};
  }

  std::string show(const Ty& t) {
    auto g = u_.ground_of(t);
    return g ? print_formula(g) : "<unresolved>";
  }

  [[noreturn]] void mismatch(const char* rule, const TermRef& p, const Ty& have, const Ty& want) {
    std::string msg = std::string("term does not fit rule ") + rule + " at goal " + show(want ? want : have);
    if (want) msg += " (it has shape " + show(have) + ")";
    fail(CheckErrorKind::RuleMismatch, rule, p, msg);
  }

  CheckMode::Kind mode_;
  Unifier u_;
  Ty T_;
  bool T_fixed_ = false;
};

}  // namespace

ElabResult elaborate(const CheckMode& mode, const HypContext& ctx, const Annotation& ann, const TermRef& p,
                     const FormulaRef& goal) {
  if (mode.kind == CheckMode::Kind::MqcOnly && ann)
    fail(CheckErrorKind::ControlInMqc, "annotation", p, "minimal logic judgments carry no annotation");
  if (ann && !is_sigma(**ann))
    fail(CheckErrorKind::SigmaViolation, "annotation", p, "annotation " + print_formula(*ann) + " is not a Sigma formula");
  if (mode.global_T && !is_sigma(**mode.global_T))
    fail(CheckErrorKind::SigmaViolation, "annotation", p,
         "global formula " + print_formula(*mode.global_T) + " is not a Sigma formula");

  Elaborator el(mode, ann);
  Scope sc;
  for (const auto& e : ctx.entries()) sc.hyps.emplace_back(e.name, ty_ground(e.formula));
  Ty g = goal ? ty_ground(goal) : el.unifier().fresh_meta();
  auto root = el.elab(sc, ann.has_value(), p, g);
  if (!el.unifier().solve())
    fail(CheckErrorKind::RuleMismatch, "unification", p, "no consistent assignment of formulas to the sub-terms");

  ElabResult r;
  r.derivation = el.zonk(root);
  r.formula = r.derivation.goal;
  if (el.T_fixed()) r.resolved_T = el.unifier().zonk(el.T());
  return r;
}

}  // namespace mqc::detail
