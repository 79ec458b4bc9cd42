#include <algorithm>

#include "checker/internal.hpp"

namespace mqc::detail {

namespace {

using K = TyNode::Kind;

TyNode::Kind kind_of(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::And: return K::And;
    case Formula::Kind::Or: return K::Or;
    case Formula::Kind::Imp: return K::Imp;
    case Formula::Kind::Forall: return K::Forall;
    case Formula::Kind::Exists: return K::Exists;
    case Formula::Kind::Atom: break;
  }
  return K::Ground;
}

Formula::Kind formula_kind(TyNode::Kind k) {
  switch (k) {
    case K::And: return Formula::Kind::And;
    case K::Or: return Formula::Kind::Or;
    case K::Imp: return Formula::Kind::Imp;
    case K::Forall: return Formula::Kind::Forall;
    case K::Exists: return Formula::Kind::Exists;
    default: return Formula::Kind::Atom;
  }
}

bool is_quant(K k) { return k == K::Forall || k == K::Exists; }

Ty meta_with(const TyNode& m, Subst sigma) {
  auto n = std::make_shared<TyNode>();
  n->kind = K::Meta;
  n->meta = m.meta;
  n->sigma = std::move(sigma);
  return n;
}

Individual apply_subst(Individual t, const Subst& sigma) {
  for (const auto& e : sigma) t = subst_ind(t, e.x, e.t);
  return t;
}

bool same_subst(const Subst& a, const Subst& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].x != b[i].x || !(a[i].t == b[i].t)) return false;
  return true;
}

// All s with s[sigma] == g, variables of the substitution domain first.
void individual_candidates(const Individual& g, const Subst& sigma, const NameSet& banned,
                           std::vector<Individual>& out, std::size_t cap) {
  std::vector<std::string> vars;
  for (const auto& e : sigma)
    if (std::find(vars.begin(), vars.end(), e.x) == vars.end()) vars.push_back(e.x);
  std::size_t domain = vars.size();
  for (const auto& v : free_ind_vars(g))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i >= domain && banned.count(vars[i])) continue;
    if (apply_subst(Individual::var(vars[i]), sigma) == g) out.push_back(Individual::var(vars[i]));
  }
  if (g.is_var()) return;
  std::vector<std::vector<Individual>> per_arg;
  for (const auto& arg : g.args) {
    std::vector<Individual> c;
    individual_candidates(arg, sigma, banned, c, cap);
    if (c.empty()) return;
    per_arg.push_back(std::move(c));
  }
  std::vector<std::size_t> idx(per_arg.size(), 0);
  for (;;) {
    std::vector<Individual> args;
    for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(per_arg[i][idx[i]]);
    out.push_back(Individual::fn(g.name, std::move(args)));
    if (out.size() >= cap) return;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == per_arg[i].size()) idx[i++] = 0;
    if (i == idx.size()) return;
  }
}

}  // namespace

Ty ty_ground(FormulaRef f) {
  auto n = std::make_shared<TyNode>();
  n->kind = K::Ground;
  n->ground = std::move(f);
  return n;
}

Ty ty_binary(TyNode::Kind kind, Ty a, Ty b) {
  auto n = std::make_shared<TyNode>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Ty ty_quant(TyNode::Kind kind, std::string x, Ty body) {
  auto n = std::make_shared<TyNode>();
  n->kind = kind;
  n->binder = std::move(x);
  n->a = std::move(body);
  return n;
}

Ty ty_subst(const Ty& t, const std::string& x, const Individual& s) {
  switch (t->kind) {
    case K::Ground: {
      auto f = subst_ind(t->ground, x, s);
      return f == t->ground ? t : ty_ground(f);
    }
    case K::Meta: {
      Subst sigma = t->sigma;
      sigma.push_back({x, s});
      return meta_with(*t, std::move(sigma));
    }
    case K::And:
    case K::Or:
    case K::Imp:
      return ty_binary(t->kind, ty_subst(t->a, x, s), ty_subst(t->b, x, s));
    case K::Forall:
    case K::Exists: {
      if (t->binder == x) return t;
      if (occurs(t->binder, s)) {
        auto z = fresh_name(t->binder);
        auto body = ty_subst(t->a, t->binder, Individual::var(z));
        return ty_quant(t->kind, z, ty_subst(body, x, s));
      }
      return ty_quant(t->kind, t->binder, ty_subst(t->a, x, s));
    }
  }
  return t;
}

Ty Unifier::fresh_meta(NameSet scope) {
  auto n = std::make_shared<TyNode>();
  n->kind = K::Meta;
  n->meta = static_cast<int>(assign_.size());
  assign_.push_back(nullptr);
  scope_.push_back(std::move(scope));
  return n;
}

std::string Unifier::fresh_binder(std::string_view base) {
  auto z = fresh_name(base);
  internal_.insert(z);
  return z;
}

Ty Unifier::resolve(Ty t) const {
  while (t->kind == K::Meta && assign_[t->meta]) {
    Ty sol = assign_[t->meta];
    for (const auto& e : t->sigma) sol = ty_subst(sol, e.x, e.t);
    t = sol;
  }
  return t;
}

Ty Unifier::view(const Ty& t) const {
  Ty r = resolve(t);
  if (r->kind != K::Ground) return r;
  const Formula& f = *r->ground;
  if (f.kind == Formula::Kind::Atom) return r;
  if (f.is_quantifier()) return ty_quant(kind_of(f.kind), f.name, ty_ground(f.lhs));
  return ty_binary(kind_of(f.kind), ty_ground(f.lhs), ty_ground(f.rhs));
}

FormulaRef Unifier::ground_of(const Ty& t) const {
  Ty r = resolve(t);
  switch (r->kind) {
    case K::Ground: return r->ground;
    case K::Meta: return nullptr;
    case K::Forall:
    case K::Exists: {
      auto body = ground_of(r->a);
      return body ? quantifier(formula_kind(r->kind), r->binder, body) : nullptr;
    }
    default: {
      auto a = ground_of(r->a);
      if (!a) return nullptr;
      auto b = ground_of(r->b);
      return b ? binary(formula_kind(r->kind), a, b) : nullptr;
    }
  }
}

FormulaRef Unifier::zonk(const Ty& t) {
  Ty r = resolve(t);
  switch (r->kind) {
    case K::Ground: return r->ground;
    case K::Meta: {
      static const FormulaRef any = atom("Any");
      assign_[r->meta] = ty_ground(any);
      return any;
    }
    case K::Forall:
    case K::Exists: return quantifier(formula_kind(r->kind), r->binder, zonk(r->a));
    default: {
      auto a = zonk(r->a);
      return binary(formula_kind(r->kind), a, zonk(r->b));
    }
  }
}

bool Unifier::occurs(int id, const Ty& t) const {
  Ty r = resolve(t);
  switch (r->kind) {
    case K::Ground: return false;
    case K::Meta: return r->meta == id;
    case K::Forall:
    case K::Exists: return occurs(id, r->a);
    default: return occurs(id, r->a) || occurs(id, r->b);
  }
}

std::vector<FormulaRef> Unifier::atom_candidates(const FormulaRef& g, const Ty& m) const {
  constexpr std::size_t cap = 64;
  NameSet banned;
  const auto& scope = scope_[static_cast<std::size_t>(m->meta)];
  for (const auto& z : internal_)
    if (!scope.count(z)) banned.insert(z);
  std::vector<std::vector<Individual>> per_arg;
  for (const auto& arg : g->args) {
    std::vector<Individual> c;
    individual_candidates(arg, m->sigma, banned, c, cap);
    if (c.empty()) return {};
    per_arg.push_back(std::move(c));
  }
  std::vector<FormulaRef> out;
  std::vector<std::size_t> idx(per_arg.size(), 0);
  for (;;) {
    std::vector<Individual> args;
    for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(per_arg[i][idx[i]]);
    out.push_back(atom(g->name, std::move(args)));
    if (out.size() >= cap) break;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == per_arg[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

bool Unifier::unify(const Ty& a0, const Ty& b0) {
  Ty a = resolve(a0);
  Ty b = resolve(b0);
  if (a->kind == K::Ground && b->kind == K::Ground) return alpha_eq(a->ground, b->ground);
  if (a->kind == K::Meta) {
    if (b->kind == K::Meta && a->meta == b->meta && same_subst(a->sigma, b->sigma)) return true;
    return unify_meta(a, b);
  }
  if (b->kind == K::Meta) return unify_meta(b, a);

  Ty va = view(a);
  Ty vb = view(b);
  if (va->kind != vb->kind) return false;
  if (va->kind == K::Ground) return alpha_eq(va->ground, vb->ground);
  if (!is_quant(va->kind)) return unify(va->a, vb->a) && unify(va->b, vb->b);

  const auto& x = va->binder;
  const auto& y = vb->binder;
  if (x == y) return unify(va->a, vb->a);
  // Prefer renaming a ground body to the other side's binder, so the
  // metavariable side keeps its own bound name.
  if (auto gb = ground_of(vb->a); gb && !free_ind_vars(*gb).count(x))
    return unify(va->a, ty_subst(vb->a, y, Individual::var(x)));
  if (auto ga = ground_of(va->a); ga && !free_ind_vars(*ga).count(y))
    return unify(ty_subst(va->a, x, Individual::var(y)), vb->a);
  auto z = Individual::var(fresh_binder("z"));
  return unify(ty_subst(va->a, x, z), ty_subst(vb->a, y, z));
}

bool Unifier::unify_meta(const Ty& m, const Ty& other) {
  if (m->sigma.empty()) {
    if (other->kind == K::Meta && other->meta == m->meta) {
      postponed_.push_back({m, other});
      return true;
    }
    if (occurs(m->meta, other)) return false;
    assign_[m->meta] = other;
    return true;
  }
  if (other->kind == K::Meta) {
    if (other->sigma.empty() && other->meta != m->meta) return unify_meta(other, m);
    postponed_.push_back({m, other});
    return true;
  }
  Ty v = view(other);
  if (v->kind == K::Ground) {
    auto cands = atom_candidates(v->ground, m);
    if (cands.empty()) return false;
    if (cands.size() == 1) {
      assign_[m->meta] = ty_ground(cands.front());
      return true;
    }
    postponed_.push_back({m, other});
    return true;
  }
  NameSet scope = scope_[static_cast<std::size_t>(m->meta)];
  Ty tmpl;
  if (is_quant(v->kind)) {
    auto z = fresh_binder("z");
    NameSet inner = scope;
    inner.insert(z);
    tmpl = ty_quant(v->kind, z, fresh_meta(std::move(inner)));
  } else {
    tmpl = ty_binary(v->kind, fresh_meta(scope), fresh_meta(scope));
  }
  if (occurs(m->meta, other)) return false;
  assign_[m->meta] = tmpl;
  return unify(m, other);
}

std::size_t Unifier::assigned_count() const {
  return static_cast<std::size_t>(std::count_if(assign_.begin(), assign_.end(), [](const Ty& t) { return t != nullptr; }));
}

bool Unifier::solve() {
  for (;;) {
    if (postponed_.empty()) return true;
    auto before = assigned_count();
    auto pending = std::move(postponed_);
    postponed_.clear();
    for (const auto& c : pending)
      if (!unify(c.meta, c.other)) return false;
    if (postponed_.empty()) return true;
    if (assigned_count() != before) continue;

    // Stuck: branch on the candidate solutions of one atom constraint.
    for (const auto& c : postponed_) {
      Ty m = resolve(c.meta);
      Ty o = resolve(c.other);
      if (m->kind != K::Meta) std::swap(m, o);
      if (m->kind != K::Meta || o->kind != K::Ground) continue;
      for (const auto& cand : atom_candidates(o->ground, m)) {
        Unifier trial = *this;
        trial.assign_[m->meta] = ty_ground(cand);
        if (trial.solve()) {
          *this = std::move(trial);
          return true;
        }
      }
      return false;
    }
    // Only metavariable-against-metavariable constraints remain.
    Ty m = resolve(postponed_.front().meta);
    if (m->kind != K::Meta) m = resolve(postponed_.front().other);
    zonk(m);
  }
}

}  // namespace mqc::detail
