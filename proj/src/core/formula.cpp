#include <cassert>

#include "mqc/core.hpp"

namespace mqc {

FormulaRef atom(std::string pred, std::vector<Individual> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Atom;
  f->name = std::move(pred);
  f->args = std::move(args);
  return f;
}

FormulaRef binary(Formula::Kind kind, FormulaRef a, FormulaRef b) {
  assert(a && b);
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaRef quantifier(Formula::Kind kind, std::string x, FormulaRef body) {
  assert(body);
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->name = std::move(x);
  f->lhs = std::move(body);
  return f;
}

FormulaRef conj(FormulaRef a, FormulaRef b) { return binary(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaRef disj(FormulaRef a, FormulaRef b) { return binary(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaRef imp(FormulaRef a, FormulaRef b) { return binary(Formula::Kind::Imp, std::move(a), std::move(b)); }
FormulaRef forall(std::string x, FormulaRef body) {
  return quantifier(Formula::Kind::Forall, std::move(x), std::move(body));
}
FormulaRef exists(std::string x, FormulaRef body) {
  return quantifier(Formula::Kind::Exists, std::move(x), std::move(body));
}

bool is_sigma(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return true;
    case Formula::Kind::Imp:
    case Formula::Kind::Forall:
      return false;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return is_sigma(*f.lhs) && is_sigma(*f.rhs);
    case Formula::Kind::Exists:
      return is_sigma(*f.lhs);
  }
  return false;
}

namespace {

void collect_free(const Formula& f, NameSet& bound, NameSet& out) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      NameSet vs;
      for (const auto& a : f.args) collect_vars(a, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      collect_free(*f.lhs, bound, out);
      collect_free(*f.rhs, bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool inserted = bound.insert(f.name).second;
      collect_free(*f.lhs, bound, out);
      if (inserted) bound.erase(f.name);
      return;
    }
  }
}

}  // namespace

void collect_free_ind_vars(const Formula& f, NameSet& out) {
  NameSet bound;
  collect_free(f, bound, out);
}

NameSet free_ind_vars(const Formula& f) {
  NameSet out;
  collect_free_ind_vars(f, out);
  return out;
}

namespace {

FormulaRef subst_rec(const FormulaRef& f, std::string_view x, const Individual& t, const NameSet& tvars) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      bool changed = false;
      std::vector<Individual> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) {
        args.push_back(subst_ind(a, x, t));
        changed = changed || !(args.back() == a);
      }
      return changed ? atom(f->name, std::move(args)) : f;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      auto l = subst_rec(f->lhs, x, t, tvars);
      auto r = subst_rec(f->rhs, x, t, tvars);
      if (l == f->lhs && r == f->rhs) return f;
      return binary(f->kind, std::move(l), std::move(r));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (f->name == x) return f;
      auto fv = free_ind_vars(*f->lhs);
      if (!fv.count(std::string(x))) return f;
      if (tvars.count(f->name)) {
        NameSet avoid = fv;
        avoid.insert(tvars.begin(), tvars.end());
        avoid.insert(std::string(x));
        auto y = fresh_name(f->name, avoid);
        auto renamed = subst_rec(f->lhs, f->name, Individual::var(y), {y});
        return quantifier(f->kind, y, subst_rec(renamed, x, t, tvars));
      }
      auto body = subst_rec(f->lhs, x, t, tvars);
      return body == f->lhs ? f : quantifier(f->kind, f->name, std::move(body));
    }
  }
  return f;
}

using BinderEnv = std::vector<std::pair<std::string, std::string>>;

// Position of the innermost binder for `name` on the given side, or -1.
int bound_index(const BinderEnv& env, const std::string& name, bool left) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
    const auto& b = left ? env[i].first : env[i].second;
    if (b == name) return i;
  }
  return -1;
}

bool ind_alpha_eq(const Individual& s, const Individual& t, const BinderEnv& env) {
  if (s.kind != t.kind) return false;
  if (s.is_var()) {
    int i = bound_index(env, s.name, true);
    int j = bound_index(env, t.name, false);
    if (i != j) return false;
    return i >= 0 || s.name == t.name;
  }
  if (s.name != t.name || s.args.size() != t.args.size()) return false;
  for (std::size_t k = 0; k < s.args.size(); ++k)
    if (!ind_alpha_eq(s.args[k], t.args[k], env)) return false;
  return true;
}

bool alpha_rec(const Formula& f, const Formula& g, BinderEnv& env) {
  if (f.kind != g.kind) return false;
  switch (f.kind) {
    case Formula::Kind::Atom:
      if (f.name != g.name || f.args.size() != g.args.size()) return false;
      for (std::size_t i = 0; i < f.args.size(); ++i)
        if (!ind_alpha_eq(f.args[i], g.args[i], env)) return false;
      return true;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return alpha_rec(*f.lhs, *g.lhs, env) && alpha_rec(*f.rhs, *g.rhs, env);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      env.emplace_back(f.name, g.name);
      bool ok = alpha_rec(*f.lhs, *g.lhs, env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

FormulaRef subst_ind(const FormulaRef& f, std::string_view x, const Individual& t) {
  return subst_rec(f, x, t, free_ind_vars(t));
}

bool alpha_eq(const FormulaRef& f, const FormulaRef& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  BinderEnv env;
  return alpha_rec(*f, *g, env);
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return 1;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return 1 + formula_size(*f.lhs) + formula_size(*f.rhs);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return 1 + formula_size(*f.lhs);
  }
  return 1;
}

// ---------------------------------------------------------------------------

const FormulaRef* HypContext::lookup(std::string_view name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->name == name) return &it->formula;
  return nullptr;
}

HypContext HypContext::extended(std::string name, FormulaRef f) const {
  HypContext out = *this;
  out.push(std::move(name), std::move(f));
  return out;
}

NameSet HypContext::free_ind_vars() const {
  NameSet out;
  for (const auto& e : entries_) collect_free_ind_vars(*e.formula, out);
  return out;
}

NameSet HypContext::names() const {
  NameSet out;
  for (const auto& e : entries_) out.insert(e.name);
  return out;
}

}  // namespace mqc
