#include <cassert>

#include "mqc/core.hpp"

namespace mqc {

namespace {

std::shared_ptr<Term> node(Term::Kind kind) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  return t;
}

TermRef unary(Term::Kind kind, TermRef p) {
  assert(p);
  auto t = node(kind);
  t->p = std::move(p);
  return t;
}

// Copy of `t` with replaced children; returns `t` itself when nothing moved.
TermRef rebuild(const TermRef& t, TermRef p, TermRef q, TermRef r) {
  if (p == t->p && q == t->q && r == t->r) return t;
  auto out = std::make_shared<Term>(*t);
  out->p = std::move(p);
  out->q = std::move(q);
  out->r = std::move(r);
  return out;
}

}  // namespace

TermRef hyp(std::string a) {
  auto t = node(Term::Kind::Hyp);
  t->var = std::move(a);
  return t;
}
TermRef inj1(TermRef p) { return unary(Term::Kind::Inj1, std::move(p)); }
TermRef inj2(TermRef p) { return unary(Term::Kind::Inj2, std::move(p)); }
TermRef case_of(TermRef p, std::string a1, TermRef q1, std::string a2, TermRef q2) {
  auto t = node(Term::Kind::Case);
  t->p = std::move(p);
  t->var = std::move(a1);
  t->q = std::move(q1);
  t->var2 = std::move(a2);
  t->r = std::move(q2);
  return t;
}
TermRef pair(TermRef p, TermRef q) {
  auto t = node(Term::Kind::Pair);
  t->p = std::move(p);
  t->q = std::move(q);
  return t;
}
TermRef proj1(TermRef p) { return unary(Term::Kind::Proj1, std::move(p)); }
TermRef proj2(TermRef p) { return unary(Term::Kind::Proj2, std::move(p)); }
TermRef lam(std::string a, TermRef body) {
  auto t = node(Term::Kind::Lam);
  t->var = std::move(a);
  t->p = std::move(body);
  return t;
}
TermRef app(TermRef f, TermRef arg) {
  auto t = node(Term::Kind::App);
  t->p = std::move(f);
  t->q = std::move(arg);
  return t;
}
TermRef gen(std::string x, TermRef body) {
  auto t = node(Term::Kind::Gen);
  t->var = std::move(x);
  t->p = std::move(body);
  return t;
}
TermRef inst(TermRef p, Individual ind) {
  auto t = node(Term::Kind::Inst);
  t->p = std::move(p);
  t->ind = std::move(ind);
  return t;
}
TermRef ex_pair(Individual ind, TermRef p) {
  auto t = node(Term::Kind::ExPair);
  t->ind = std::move(ind);
  t->p = std::move(p);
  return t;
}
TermRef dest(TermRef p, std::string x, std::string a, TermRef body) {
  auto t = node(Term::Kind::Dest);
  t->p = std::move(p);
  t->var = std::move(x);
  t->var2 = std::move(a);
  t->q = std::move(body);
  return t;
}
TermRef reset(TermRef p) { return unary(Term::Kind::Reset, std::move(p)); }
TermRef shift(std::string k, TermRef body) {
  auto t = node(Term::Kind::Shift);
  t->var = std::move(k);
  t->p = std::move(body);
  return t;
}

bool is_value(const Term& p) {
  switch (p.kind) {
    case Term::Kind::Hyp:
    case Term::Kind::Lam:
    case Term::Kind::Gen:
      return true;
    case Term::Kind::Inj1:
    case Term::Kind::Inj2:
    case Term::Kind::ExPair:
      return is_value(*p.p);
    case Term::Kind::Pair:
      return is_value(*p.p) && is_value(*p.q);
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void free_hyp_rec(const Term& p, NameSet& bound, NameSet& out);

void under_hyp_binder(const std::string& b, const Term& body, NameSet& bound, NameSet& out) {
  bool inserted = bound.insert(b).second;
  free_hyp_rec(body, bound, out);
  if (inserted) bound.erase(b);
}

void free_hyp_rec(const Term& p, NameSet& bound, NameSet& out) {
  switch (p.kind) {
    case Term::Kind::Hyp:
      if (!bound.count(p.var)) out.insert(p.var);
      return;
    case Term::Kind::Lam:
    case Term::Kind::Shift:
      under_hyp_binder(p.var, *p.p, bound, out);
      return;
    case Term::Kind::Case:
      free_hyp_rec(*p.p, bound, out);
      under_hyp_binder(p.var, *p.q, bound, out);
      under_hyp_binder(p.var2, *p.r, bound, out);
      return;
    case Term::Kind::Dest:
      free_hyp_rec(*p.p, bound, out);
      under_hyp_binder(p.var2, *p.q, bound, out);
      return;
    default:
      if (p.p) free_hyp_rec(*p.p, bound, out);
      if (p.q) free_hyp_rec(*p.q, bound, out);
      if (p.r) free_hyp_rec(*p.r, bound, out);
      return;
  }
}

void free_ind_rec(const Term& p, NameSet& bound, NameSet& out) {
  auto add_ind = [&](const Individual& t) {
    NameSet vs;
    collect_vars(t, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
  };
  switch (p.kind) {
    case Term::Kind::Gen: {
      bool inserted = bound.insert(p.var).second;
      free_ind_rec(*p.p, bound, out);
      if (inserted) bound.erase(p.var);
      return;
    }
    case Term::Kind::Dest: {
      free_ind_rec(*p.p, bound, out);
      bool inserted = bound.insert(p.var).second;
      free_ind_rec(*p.q, bound, out);
      if (inserted) bound.erase(p.var);
      return;
    }
    case Term::Kind::Inst:
      free_ind_rec(*p.p, bound, out);
      add_ind(p.ind);
      return;
    case Term::Kind::ExPair:
      add_ind(p.ind);
      free_ind_rec(*p.p, bound, out);
      return;
    default:
      if (p.p) free_ind_rec(*p.p, bound, out);
      if (p.q) free_ind_rec(*p.q, bound, out);
      if (p.r) free_ind_rec(*p.r, bound, out);
      return;
  }
}

}  // namespace

NameSet free_hyp_vars(const Term& p) {
  NameSet bound, out;
  free_hyp_rec(p, bound, out);
  return out;
}

NameSet free_ind_vars(const Term& p) {
  NameSet bound, out;
  free_ind_rec(p, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct HypSubst {
  std::string a;
  TermRef q;
  NameSet q_hyp;
  NameSet q_ind;

  // Renames hypothesis binder `b` of `body` if it would capture a free
  // variable of q at an occurrence of `a`.
  std::pair<std::string, TermRef> open_hyp_binder(const std::string& b, const TermRef& body) const {
    if (!q_hyp.count(b)) return {b, body};
    auto fv = free_hyp_vars(*body);
    if (!fv.count(a)) return {b, body};
    NameSet avoid = fv;
    avoid.insert(q_hyp.begin(), q_hyp.end());
    avoid.insert(a);
    auto fresh = fresh_name(b, avoid);
    return {fresh, subst_hyp(body, b, hyp(fresh))};
  }

  std::pair<std::string, TermRef> open_ind_binder(const std::string& x, const TermRef& body) const {
    if (!q_ind.count(x)) return {x, body};
    if (!free_hyp_vars(*body).count(a)) return {x, body};
    NameSet avoid = free_ind_vars(*body);
    avoid.insert(q_ind.begin(), q_ind.end());
    auto fresh = fresh_name(x, avoid);
    return {fresh, subst_ind(body, x, Individual::var(fresh))};
  }

  TermRef under_hyp(const std::string& b, const TermRef& body, std::string& out_binder) const {
    out_binder = b;
    if (b == a) return body;
    auto [nb, nbody] = open_hyp_binder(b, body);
    out_binder = nb;
    return go(nbody);
  }

  TermRef go(const TermRef& p) const {
    switch (p->kind) {
      case Term::Kind::Hyp:
        return p->var == a ? q : p;
      case Term::Kind::Lam:
      case Term::Kind::Shift: {
        std::string b;
        auto body = under_hyp(p->var, p->p, b);
        if (b == p->var) return rebuild(p, body, nullptr, nullptr);
        return p->kind == Term::Kind::Lam ? lam(b, body) : shift(b, body);
      }
      case Term::Kind::Gen: {
        auto [x, body] = open_ind_binder(p->var, p->p);
        auto nb = go(body);
        if (x == p->var) return rebuild(p, nb, nullptr, nullptr);
        return gen(x, nb);
      }
      case Term::Kind::Case: {
        auto s = go(p->p);
        std::string b1, b2;
        auto q1 = under_hyp(p->var, p->q, b1);
        auto q2 = under_hyp(p->var2, p->r, b2);
        if (b1 == p->var && b2 == p->var2) return rebuild(p, s, q1, q2);
        return case_of(s, b1, q1, b2, q2);
      }
      case Term::Kind::Dest: {
        auto s = go(p->p);
        auto [x, body0] = open_ind_binder(p->var, p->q);
        std::string b;
        auto body = under_hyp(p->var2, body0, b);
        if (x == p->var && b == p->var2) return rebuild(p, s, body, nullptr);
        return dest(s, x, b, body);
      }
      default:
        return rebuild(p, p->p ? go(p->p) : nullptr, p->q ? go(p->q) : nullptr,
                       p->r ? go(p->r) : nullptr);
    }
  }
};

struct IndSubst {
  std::string x;
  Individual t;
  NameSet t_vars;

  std::pair<std::string, TermRef> open_binder(const std::string& y, const TermRef& body) const {
    if (!t_vars.count(y)) return {y, body};
    auto fv = free_ind_vars(*body);
    if (!fv.count(x)) return {y, body};
    NameSet avoid = fv;
    avoid.insert(t_vars.begin(), t_vars.end());
    avoid.insert(x);
    auto fresh = fresh_name(y, avoid);
    return {fresh, subst_ind(body, y, Individual::var(fresh))};
  }

  TermRef go(const TermRef& p) const {
    switch (p->kind) {
      case Term::Kind::Hyp:
        return p;
      case Term::Kind::Gen: {
        if (p->var == x) return p;
        auto [y, body] = open_binder(p->var, p->p);
        auto nb = go(body);
        if (y == p->var) return rebuild(p, nb, nullptr, nullptr);
        return gen(y, nb);
      }
      case Term::Kind::Dest: {
        auto s = go(p->p);
        if (p->var == x) return rebuild(p, s, p->q, nullptr);
        auto [y, body] = open_binder(p->var, p->q);
        auto nb = go(body);
        if (y == p->var) return rebuild(p, s, nb, nullptr);
        return dest(s, y, p->var2, nb);
      }
      case Term::Kind::Inst:
      case Term::Kind::ExPair: {
        auto np = go(p->p);
        auto nt = subst_ind(p->ind, x, t);
        if (np == p->p && nt == p->ind) return p;
        return p->kind == Term::Kind::Inst ? inst(np, nt) : ex_pair(nt, np);
      }
      default:
        return rebuild(p, p->p ? go(p->p) : nullptr, p->q ? go(p->q) : nullptr,
                       p->r ? go(p->r) : nullptr);
    }
  }
};

}  // namespace

TermRef subst_hyp(const TermRef& p, std::string_view a, const TermRef& q) {
  HypSubst s{std::string(a), q, free_hyp_vars(*q), free_ind_vars(*q)};
  return s.go(p);
}

TermRef subst_ind(const TermRef& p, std::string_view x, const Individual& t) {
  IndSubst s{std::string(x), t, free_ind_vars(t)};
  return s.go(p);
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool same_var(const Env& env, const std::string& l, const std::string& r) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    bool lm = it->first == l, rm = it->second == r;
    if (lm || rm) return lm && rm;
  }
  return l == r;
}

bool ind_eq(const Individual& s, const Individual& t, const Env& env) {
  if (s.kind != t.kind) return false;
  if (s.is_var()) return same_var(env, s.name, t.name);
  if (s.name != t.name || s.args.size() != t.args.size()) return false;
  for (std::size_t i = 0; i < s.args.size(); ++i)
    if (!ind_eq(s.args[i], t.args[i], env)) return false;
  return true;
}

struct AlphaTerm {
  Env hyps;
  Env inds;

  bool bind_hyp(const std::string& l, const std::string& r, const TermRef& a, const TermRef& b) {
    hyps.emplace_back(l, r);
    bool ok = go(a, b);
    hyps.pop_back();
    return ok;
  }

  bool go(const TermRef& a, const TermRef& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Term::Kind::Hyp:
        return same_var(hyps, a->var, b->var);
      case Term::Kind::Lam:
      case Term::Kind::Shift:
        return bind_hyp(a->var, b->var, a->p, b->p);
      case Term::Kind::Gen: {
        inds.emplace_back(a->var, b->var);
        bool ok = go(a->p, b->p);
        inds.pop_back();
        return ok;
      }
      case Term::Kind::Case:
        return go(a->p, b->p) && bind_hyp(a->var, b->var, a->q, b->q) &&
               bind_hyp(a->var2, b->var2, a->r, b->r);
      case Term::Kind::Dest: {
        if (!go(a->p, b->p)) return false;
        inds.emplace_back(a->var, b->var);
        bool ok = bind_hyp(a->var2, b->var2, a->q, b->q);
        inds.pop_back();
        return ok;
      }
      case Term::Kind::Inst:
      case Term::Kind::ExPair:
        return ind_eq(a->ind, b->ind, inds) && go(a->p, b->p);
      default:
        if (static_cast<bool>(a->q) != static_cast<bool>(b->q)) return false;
        return go(a->p, b->p) && (!a->q || go(a->q, b->q));
    }
  }
};

}  // namespace

bool alpha_eq(const TermRef& p, const TermRef& q) {
  if (p == q) return true;
  if (!p || !q) return false;
  AlphaTerm a;
  return a.go(p, q);
}

bool contains_control(const Term& p) {
  if (p.kind == Term::Kind::Reset || p.kind == Term::Kind::Shift) return true;
  return (p.p && contains_control(*p.p)) || (p.q && contains_control(*p.q)) ||
         (p.r && contains_control(*p.r));
}

std::size_t term_size(const Term& p) {
  std::size_t n = 1;
  if (p.p) n += term_size(*p.p);
  if (p.q) n += term_size(*p.q);
  if (p.r) n += term_size(*p.r);
  return n;
}

}  // namespace mqc
