#include "mqc/reducer.hpp"

#include "mqc/checker.hpp"
#include "mqc/parser.hpp"

namespace mqc {

const char* to_string(ReductionErrorKind kind) {
  switch (kind) {
    case ReductionErrorKind::Stuck: return "Stuck";
    case ReductionErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ReductionErrorKind::TopLevelCapture: return "TopLevelCapture";
    case ReductionErrorKind::ShapeViolation: return "ShapeViolation";
  }
  return "?";
}

ReductionError::ReductionError(ReductionErrorKind kind, const std::string& message, TermRef at)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), term_(std::move(at)) {}

namespace {

TermRef with_child(const TermRef& node, int slot, TermRef child) {
  auto n = std::make_shared<Term>(*node);
  (slot == 0 ? n->p : n->q) = std::move(child);
  return n;
}

[[noreturn]] void stuck(const TermRef& p, const std::string& why) {
  throw ReductionError(ReductionErrorKind::Stuck, why + ": " + print_proof(p), p);
}

StepOutcome stepped(TermRef t, std::string rule) {
  StepOutcome o;
  o.kind = StepOutcome::Kind::Stepped;
  o.term = std::move(t);
  o.rule = std::move(rule);
  return o;
}

// Reduces inside child `slot` of `node`, passing captures outward.
StepOutcome congruence(const TermRef& node, int slot) {
  const TermRef& child = slot == 0 ? node->p : node->q;
  StepOutcome o = step(child);
  if (o.kind == StepOutcome::Kind::Stepped) {
    o.term = with_child(node, slot, o.term);
  } else if (o.kind == StepOutcome::Kind::Capture) {
    o.context.frames.push_back({node, slot});
  }
  return o;
}

}  // namespace

TermRef PureContext::plug(const TermRef& hole) const {
  TermRef t = hole;
  for (const auto& f : frames) t = with_child(f.node, f.slot, t);
  return t;
}

bool PureContext::is_pure() const {
  for (const auto& f : frames)
    if (f.node->kind == Term::Kind::Reset || f.node->kind == Term::Kind::Shift) return false;
  return true;
}

NameSet PureContext::free_hyp_vars() const {
  auto names = mqc::free_hyp_vars(*plug(hyp("")));
  names.erase("");
  return names;
}

StepOutcome step(const TermRef& p) {
  if (is_value(*p)) {
    StepOutcome o;
    o.term = p;
    return o;
  }
  const Term& t = *p;
  switch (t.kind) {
    case Term::Kind::Inj1:
    case Term::Kind::Inj2:
    case Term::Kind::ExPair:
      return congruence(p, 0);
    case Term::Kind::Pair:
      return congruence(p, is_value(*t.p) ? 1 : 0);
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      if (!is_value(*t.p)) return congruence(p, 0);
      if (t.p->kind != Term::Kind::Pair) stuck(p, "projection from a non-pair");
      return stepped(t.kind == Term::Kind::Proj1 ? t.p->p : t.p->q, "proj");
    case Term::Kind::App:
      if (!is_value(*t.p)) return congruence(p, 0);
      if (!is_value(*t.q)) return congruence(p, 1);
      if (t.p->kind != Term::Kind::Lam) stuck(p, "application of a non-abstraction");
      return stepped(subst_hyp(t.p->p, t.p->var, t.q), "beta");
    case Term::Kind::Inst:
      if (!is_value(*t.p)) return congruence(p, 0);
      if (t.p->kind != Term::Kind::Gen) stuck(p, "instantiation of a non-generalization");
      return stepped(subst_ind(t.p->p, t.p->var, t.ind), "inst");
    case Term::Kind::Case: {
      if (!is_value(*t.p)) return congruence(p, 0);
      const Term& s = *t.p;
      if (s.kind == Term::Kind::Inj1) return stepped(subst_hyp(t.q, t.var, s.p), "case");
      if (s.kind == Term::Kind::Inj2) return stepped(subst_hyp(t.r, t.var2, s.p), "case");
      stuck(p, "case on a non-injection");
    }
    case Term::Kind::Dest: {
      if (!is_value(*t.p)) return congruence(p, 0);
      const Term& s = *t.p;
      if (s.kind != Term::Kind::ExPair) stuck(p, "dest on a non-witness pair");
      return stepped(subst_hyp(subst_ind(t.q, t.var, s.ind), t.var2, s.p), "dest");
    }
    case Term::Kind::Reset: {
      if (is_value(*t.p)) return stepped(t.p, "reset");
      StepOutcome o = step(t.p);
      if (o.kind == StepOutcome::Kind::Stepped) {
        o.term = reset(o.term);
        return o;
      }
      // Capture: <P[Sk.body]> -> <body{(fun a => <P[a]>)/k}>
      auto a = pick_name("a", o.context.free_hyp_vars());
      auto cont = lam(a, reset(o.context.plug(hyp(a))));
      auto r = stepped(reset(subst_hyp(o.body, o.k, cont)), "capture");
      r.shift = o.shift;
      r.k = o.k;
      r.body = o.body;
      r.context = std::move(o.context);
      r.continuation = cont;
      return r;
    }
    case Term::Kind::Shift: {
      StepOutcome o;
      o.kind = StepOutcome::Kind::Capture;
      o.term = p;
      o.shift = p;
      o.k = t.var;
      o.body = t.p;
      return o;
    }
    default:
      break;
  }
  stuck(p, "no rule applies");
}

Trace normalize(const TermRef& p, std::uint64_t max_steps, bool keep_trace) {
  Trace tr;
  tr.entries.push_back({p, "", "", nullptr});
  TermRef cur = p;
  for (std::uint64_t n = 0;; ++n) {
    StepOutcome o = step(cur);
    if (o.kind == StepOutcome::Kind::IsValue) break;
    if (o.kind == StepOutcome::Kind::Capture)
      throw ReductionError(ReductionErrorKind::TopLevelCapture, "shift without an enclosing reset", cur);
    if (n >= max_steps)
      throw ReductionError(ReductionErrorKind::StepLimitExceeded,
                           "no value after " + std::to_string(max_steps) + " steps", cur);
    cur = o.term;
    ++tr.step_count;
    TraceEntry e{cur, o.rule, o.k, o.continuation};
    if (keep_trace || tr.entries.size() < 2) {
      tr.entries.push_back(std::move(e));
    } else {
      tr.entries.back() = std::move(e);
    }
  }
  return tr;
}

Witness extract(const TermRef& p, const FormulaRef& goal, const HypContext& ctx, std::uint64_t max_steps) {
  if (goal->kind != Formula::Kind::Or && goal->kind != Formula::Kind::Exists)
    throw ReductionError(ReductionErrorKind::ShapeViolation, "goal " + print_formula(goal) + " is neither a disjunction nor an existential", p);
  auto tr = normalize(p, max_steps, false);
  const TermRef& v = tr.value();
  Witness w;
  w.normal_form = v;
  w.steps = tr.steps();
  if (goal->kind == Formula::Kind::Or) {
    if (v->kind == Term::Kind::Inj1) {
      w.kind = Witness::Kind::Left;
      w.formula = goal->lhs;
    } else if (v->kind == Term::Kind::Inj2) {
      w.kind = Witness::Kind::Right;
      w.formula = goal->rhs;
    } else {
      throw ReductionError(ReductionErrorKind::ShapeViolation, "normal form is not an injection", v);
    }
    w.value = v->p;
  } else {
    if (v->kind != Term::Kind::ExPair)
      throw ReductionError(ReductionErrorKind::ShapeViolation, "normal form is not a witness pair", v);
    w.kind = Witness::Kind::Individual;
    w.individual = v->ind;
    w.value = v->p;
    w.formula = subst_ind(goal->lhs, goal->name, v->ind);
  }
  try {
    check(CheckMode::mqc_plus(), ctx, std::nullopt, w.value, w.formula);
  } catch (const CheckError& e) {
    throw ReductionError(ReductionErrorKind::ShapeViolation, std::string("payload does not re-check: ") + e.what(), w.value);
  }
  return w;
}

}  // namespace mqc
