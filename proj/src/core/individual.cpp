#include "mqc/core.hpp"

namespace mqc {

Individual Individual::var(std::string name) {
  Individual t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  return t;
}

Individual Individual::fn(std::string symbol, std::vector<Individual> args) {
  Individual t;
  t.kind = Kind::Fn;
  t.name = std::move(symbol);
  t.args = std::move(args);
  return t;
}

void collect_vars(const Individual& t, NameSet& out) {
  if (t.is_var()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

NameSet free_ind_vars(const Individual& t) {
  NameSet out;
  collect_vars(t, out);
  return out;
}

bool occurs(std::string_view x, const Individual& t) {
  if (t.is_var()) return t.name == x;
  for (const auto& a : t.args)
    if (occurs(x, a)) return true;
  return false;
}

Individual subst_ind(const Individual& t, std::string_view x, const Individual& by) {
  if (t.is_var()) return t.name == x ? by : t;
  Individual out = t;
  for (auto& a : out.args) a = subst_ind(a, x, by);
  return out;
}

bool Signature::has_predicate(std::string_view name) const {
  return predicates.find(std::string(name)) != predicates.end();
}

bool Signature::has_function(std::string_view name) const {
  return functions.find(std::string(name)) != functions.end();
}

}  // namespace mqc
