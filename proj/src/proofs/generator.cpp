#include <algorithm>
#include <numeric>

#include "mqc/checker.hpp"
#include "mqc/proofs.hpp"

namespace mqc {

const Signature& generator_signature() {
  static const Signature sig = [] {
    Signature s;
    s.predicates = {{"P", 1}, {"Q", 1}, {"R", 0}};
    s.functions = {{"c", 0}, {"d", 0}, {"f", 1}};
    return s;
  }();
  return sig;
}

const HypContext& axiom_context() {
  static const HypContext ctx{
      {"ax_p", atom("P", {Individual::fn("c")})},
      {"ax_q", atom("Q", {Individual::fn("d")})},
      {"ax_r", atom("R")},
  };
  return ctx;
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using Typed = std::pair<TermRef, FormulaRef>;

Individual abstract_ind(const Individual& s, const Individual& t, const std::string& y) {
  if (s == t) return Individual::var(y);
  if (s.is_var()) return s;
  Individual r = s;
  for (auto& a : r.args) a = abstract_ind(a, t, y);
  return r;
}

// Replaces the free occurrences of t in f by the variable y.
FormulaRef abstract(const FormulaRef& f, const Individual& t, const std::string& y) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      std::vector<Individual> args;
      for (const auto& a : f->args) args.push_back(abstract_ind(a, t, y));
      return atom(f->name, std::move(args));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      if (occurs(f->name, t)) return f;
      return quantifier(f->kind, f->name, abstract(f->lhs, t, y));
    default:
      return binary(f->kind, abstract(f->lhs, t, y), abstract(f->rhs, t, y));
  }
}

void collect_inds(const Individual& t, const NameSet& bound, std::vector<Individual>& out) {
  NameSet vs = free_ind_vars(t);
  bool free = std::none_of(vs.begin(), vs.end(), [&](const std::string& v) { return bound.count(v); });
  if (free && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  for (const auto& a : t.args) collect_inds(a, bound, out);
}

// Individuals occurring free in f.
void collect_inds(const Formula& f, NameSet& bound, std::vector<Individual>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      for (const auto& a : f.args) collect_inds(a, bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool added = bound.insert(f.name).second;
      collect_inds(*f.lhs, bound, out);
      if (added) bound.erase(f.name);
      return;
    }
    default:
      collect_inds(*f.lhs, bound, out);
      collect_inds(*f.rhs, bound, out);
  }
}

std::vector<Individual> inds_of(const FormulaRef& f) {
  NameSet bound;
  std::vector<Individual> out;
  collect_inds(*f, bound, out);
  return out;
}

// Same connective skeleton, ignoring individuals.
bool skeleton_eq(const Formula& f, const Formula& g) {
  if (f.kind != g.kind) return false;
  switch (f.kind) {
    case Formula::Kind::Atom: return f.name == g.name;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return skeleton_eq(*f.lhs, *g.lhs);
    default: return skeleton_eq(*f.lhs, *g.lhs) && skeleton_eq(*f.rhs, *g.rhs);
  }
}

// Whether eliminating f could end in g.
bool could_reach(const Formula& f, const Formula& g, int depth = 4) {
  if (skeleton_eq(f, g)) return true;
  if (depth == 0) return false;
  switch (f.kind) {
    case Formula::Kind::Imp:
    case Formula::Kind::Forall: return could_reach(f.kind == Formula::Kind::Imp ? *f.rhs : *f.lhs, g, depth - 1);
    case Formula::Kind::And: return could_reach(*f.lhs, g, depth - 1) || could_reach(*f.rhs, g, depth - 1);
    default: return false;
  }
}

}  // namespace

FormulaRef abstract_individual(const FormulaRef& f, const Individual& t, const std::string& y) {
  return abstract(f, t, y);
}

struct TermGenerator::State {
  struct Scope {
    HypContext ctx;
    std::vector<std::string> vars;
    bool delimited = false;
    NameSet opened;
    // Not under a binder, so reduction will reach it.
    bool eval = true;
    bool in_reset = false;
  };

  // Shifts reached by reduction outside every reset end the run with a
  // top-level capture, so they are kept rarer than shifts under a reset.
  double shift_weight(const Scope& s) const {
    return g.opts_.shift_weight * (s.in_reset || !s.eval ? 1 : 0.3);
  }

  enum Rule { kHyp, kIntro, kElim, kLeft, kReset, kShift, kExpand };

  TermGenerator& g;
  FormulaRef T;
  long fuel = 20000;
  int counter = 0;
  // Set by reset for the goal call that builds its body.
  bool reset_body = false;

  State(TermGenerator& gen, FormulaRef t) : g(gen), T(std::move(t)) {}

  std::mt19937_64& rng() { return g.rng_; }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng()); }
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng()); }
  template <class V>
  auto choose(const V& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

  std::string fresh(const char* base) { return base + std::to_string(++counter); }

  std::vector<Individual> individuals(const Scope& s, const FormulaRef& hint = nullptr) {
    std::vector<Individual> out;
    if (hint) out = inds_of(hint);
    auto add = [&](Individual t) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    };
    add(Individual::fn("c"));
    add(Individual::fn("d"));
    for (const auto& v : s.vars) add(Individual::var(v));
    add(Individual::fn("f", {Individual::fn("c")}));
    return out;
  }

  // Rule order: a weighted shuffle.
  std::vector<Rule> order(std::vector<std::pair<Rule, double>> w) {
    std::vector<Rule> out;
    while (!w.empty()) {
      double total = 0;
      for (auto& [r, x] : w) total += x;
      if (total <= 0) break;
      double u = std::uniform_real_distribution<double>(0, total)(rng());
      std::size_t i = 0;
      for (; i + 1 < w.size(); ++i) {
        u -= w[i].second;
        if (u <= 0) break;
      }
      out.push_back(w[i].first);
      w.erase(w.begin() + static_cast<long>(i));
    }
    return out;
  }

  static Scope with_hyp(Scope s, const std::string& a, FormulaRef f) {
    s.ctx.push(a, std::move(f));
    return s;
  }

  // ---- goal-directed ----------------------------------------------------

  TermRef goal(const Scope& s, const FormulaRef& G, int b) {
    if (--fuel < 0 || b < 0) return nullptr;
    bool ctl = g.opts_.control;
    double shift_w = shift_weight(s) * (reset_body ? 4 : 1);
    reset_body = false;
    std::vector<std::pair<Rule, double>> w{{kHyp, 6}, {kIntro, 3}, {kElim, 2}, {kLeft, 1}};
    if (ctl && T && alpha_eq(G, T) && b >= 1) w.push_back({kReset, 2});
    if (ctl && s.delimited && T && b >= 2) w.push_back({kShift, shift_w});
    if (b >= 3) w.push_back({kExpand, g.opts_.expansion_weight});
    for (Rule r : order(std::move(w))) {
      TermRef t;
      switch (r) {
        case kHyp: t = by_hyp(s, G); break;
        case kIntro: t = intro(s, G, b); break;
        case kElim: t = elim(s, G, b); break;
        case kLeft: t = left(s, G, b); break;
        case kReset: t = by_reset(s, b); break;
        case kShift: t = by_shift(s, G, b); break;
        case kExpand: t = expand(s, G, b); break;
      }
      if (t) return t;
    }
    return nullptr;
  }

  TermRef by_hyp(const Scope& s, const FormulaRef& G) {
    const auto& es = s.ctx.entries();
    for (auto it = es.rbegin(); it != es.rend(); ++it)
      if (s.ctx.lookup(it->name) == &it->formula && alpha_eq(it->formula, G)) return hyp(it->name);
    return nullptr;
  }

  TermRef intro(const Scope& s, const FormulaRef& G, int b) {
    const Formula& f = *G;
    switch (f.kind) {
      case Formula::Kind::Atom: return nullptr;
      case Formula::Kind::Imp: {
        auto a = fresh("h");
        auto body = goal(with_hyp(s, a, f.lhs), f.rhs, b - 1);
        return body ? lam(a, body) : nullptr;
      }
      case Formula::Kind::And: {
        int bl = (b - 1) / 2 + below(2);
        auto l = goal(s, f.lhs, bl);
        if (!l) return nullptr;
        auto r = goal(s, f.rhs, b - 1 - static_cast<int>(term_size(*l)));
        return r ? pair(l, r) : nullptr;
      }
      case Formula::Kind::Or: {
        bool first = coin(0.5);
        for (int i = 0; i < 2; ++i, first = !first) {
          if (auto p = goal(s, first ? f.lhs : f.rhs, b - 1)) return first ? inj1(p) : inj2(p);
        }
        return nullptr;
      }
      case Formula::Kind::Forall: {
        auto x = fresh("x");
        Scope s2 = s;
        s2.vars.push_back(x);
        auto body = goal(s2, subst_ind(f.lhs, f.name, Individual::var(x)), b - 1);
        return body ? gen(x, body) : nullptr;
      }
      case Formula::Kind::Exists: {
        auto cands = individuals(s, nullptr);
        std::shuffle(cands.begin(), cands.end(), rng());
        if (cands.size() > 4) cands.resize(4);
        for (const auto& t : cands)
          if (auto p = goal(s, subst_ind(f.lhs, f.name, t), b - 1)) return ex_pair(t, p);
        return nullptr;
      }
    }
    return nullptr;
  }

  TermRef elim(const Scope& s, const FormulaRef& G, int b) {
    auto es = s.ctx.entries();
    std::shuffle(es.begin(), es.end(), rng());
    for (const auto& e : es) {
      if (s.ctx.lookup(e.name) == nullptr || !could_reach(*e.formula, *G)) continue;
      if (auto t = eliminate(s, hyp(e.name), e.formula, G, b - 1, 0)) return t;
    }
    return nullptr;
  }

  TermRef eliminate(const Scope& s, const TermRef& p, const FormulaRef& F, const FormulaRef& G, int b, int depth) {
    if (alpha_eq(F, G)) return p;
    if (depth > 3 || b < 0 || --fuel < 0) return nullptr;
    const Formula& f = *F;
    switch (f.kind) {
      case Formula::Kind::Imp: {
        if (!could_reach(*f.rhs, *G)) return nullptr;
        auto arg = goal(s, f.lhs, b / 2);
        if (!arg) return nullptr;
        return eliminate(s, app(p, arg), f.rhs, G, b - 1 - static_cast<int>(term_size(*arg)), depth + 1);
      }
      case Formula::Kind::And: {
        bool first = coin(0.5);
        for (int i = 0; i < 2; ++i, first = !first) {
          const auto& side = first ? f.lhs : f.rhs;
          if (!could_reach(*side, *G)) continue;
          if (auto t = eliminate(s, first ? proj1(p) : proj2(p), side, G, b - 1, depth + 1)) return t;
        }
        return nullptr;
      }
      case Formula::Kind::Forall: {
        for (const auto& t : individuals(s, G)) {
          auto body = subst_ind(f.lhs, f.name, t);
          if (!could_reach(*body, *G)) continue;
          if (auto r = eliminate(s, inst(p, t), body, G, b - 1, depth + 1)) return r;
        }
        return nullptr;
      }
      default:
        return nullptr;
    }
  }

  // case / dest on a hypothesis
  TermRef left(const Scope& s, const FormulaRef& G, int b) {
    std::vector<HypEntry> cands;
    for (const auto& e : s.ctx.entries())
      if ((e.formula->kind == Formula::Kind::Or || e.formula->kind == Formula::Kind::Exists) &&
          !s.opened.count(e.name) && s.ctx.lookup(e.name) == &e.formula)
        cands.push_back(e);
    if (cands.empty() || b < 2) return nullptr;
    const auto& e = choose(cands);
    Scope s2 = s;
    s2.opened.insert(e.name);
    const Formula& f = *e.formula;
    if (f.kind == Formula::Kind::Or) {
      auto a1 = fresh("h"), a2 = fresh("h");
      auto q1 = goal(with_hyp(s2, a1, f.lhs), G, (b - 1) / 2);
      if (!q1) return nullptr;
      auto q2 = goal(with_hyp(s2, a2, f.rhs), G, (b - 1) / 2);
      return q2 ? case_of(hyp(e.name), a1, q1, a2, q2) : nullptr;
    }
    auto x = fresh("x"), a = fresh("h");
    s2.vars.push_back(x);
    auto body = goal(with_hyp(s2, a, subst_ind(f.lhs, f.name, Individual::var(x))), G, b - 1);
    return body ? dest(hyp(e.name), x, a, body) : nullptr;
  }

  TermRef by_reset(const Scope& s, int b) {
    Scope s2 = s;
    s2.delimited = true;
    s2.in_reset = true;
    reset_body = true;
    auto body = goal(s2, T, b - 1);
    return body ? reset(body) : nullptr;
  }

  TermRef by_shift(const Scope& s, const FormulaRef& G, int b) {
    auto k = fresh("k");
    Scope s2 = with_hyp(s, k, imp(G, T));
    if (coin(0.65)) {
      if (auto q = goal(s2, G, b - 2)) return shift(k, app(hyp(k), q));
    }
    auto body = goal(s2, T, b - 1);
    return body ? shift(k, body) : nullptr;
  }

  TermRef expand(const Scope& s, const FormulaRef& G, int b) {
    switch (below(5)) {
      case 0: {  // (fun a => p) q
        auto [q, A] = any(s, std::max(1, b / 3));
        auto a = fresh("h");
        auto body = goal(with_hyp(s, a, A), G, b - 1 - static_cast<int>(term_size(*q)));
        return body ? app(lam(a, body), q) : nullptr;
      }
      case 1: {  // fst (p, q)
        auto [q, B] = any(s, std::max(1, b / 3));
        auto p = goal(s, G, b - 1 - static_cast<int>(term_size(*q)));
        if (!p) return nullptr;
        return coin(0.5) ? proj1(pair(p, q)) : proj2(pair(q, p));
      }
      case 2: {  // case inl q of ...
        auto [q, A] = any(s, std::max(1, b / 3));
        auto B = g.formula(1, s.vars);
        auto a1 = fresh("h"), a2 = fresh("h");
        bool left_side = coin(0.5);
        int rest = (b - 1 - static_cast<int>(term_size(*q))) / 2;
        auto q1 = goal(with_hyp(s, a1, left_side ? A : B), G, rest);
        if (!q1) return nullptr;
        auto q2 = goal(with_hyp(s, a2, left_side ? B : A), G, rest);
        if (!q2) return nullptr;
        return case_of(left_side ? inj1(q) : inj2(q), a1, q1, a2, q2);
      }
      case 3: {  // dest [t, q] as [x, a] in p
        auto [q, A] = any(s, std::max(1, b / 3));
        auto ts = individuals(s, A);
        auto t = ts.front();
        auto x = fresh("x"), a = fresh("h");
        Scope s2 = with_hyp(s, a, abstract(A, t, x));
        s2.vars.push_back(x);
        auto body = goal(s2, G, b - 1 - static_cast<int>(term_size(*q)));
        return body ? dest(ex_pair(t, q), x, a, body) : nullptr;
      }
      default: {  // (gen x => p) @ t
        auto ts = individuals(s, G);
        auto t = ts.front();
        auto x = fresh("x");
        Scope s2 = s;
        s2.vars.push_back(x);
        auto body = goal(s2, abstract(G, t, x), b - 2);
        return body ? inst(gen(x, body), t) : nullptr;
      }
    }
  }

  // ---- bottom-up --------------------------------------------------------

  Typed any(const Scope& s, int b) {
    if (b > 1 && --fuel >= 0) {
      bool ctl = g.opts_.control;
      std::vector<std::pair<Rule, double>> w{
          {kHyp, 1}, {kIntro, s.eval ? 1.5 : 2.5}, {kElim, 3}, {kExpand, 2 * g.opts_.expansion_weight}};
      if (ctl && T) w.push_back({kReset, s.delimited && !s.in_reset ? 4 : 1.5});
      if (ctl && s.delimited && T) w.push_back({kShift, shift_weight(s)});
      for (Rule r : order(std::move(w))) {
        std::optional<Typed> t;
        switch (r) {
          case kIntro: t = any_intro(s, b); break;
          case kElim: t = any_elim(s, b); break;
          case kExpand: t = any_goal(s, b); break;
          case kReset:
            if (auto p = by_reset(s, b)) t = Typed{p, T};
            break;
          case kShift: t = any_shift(s, b); break;
          default: break;
        }
        if (t) return *t;
      }
    }
    const auto& e = choose(s.ctx.entries());
    return {hyp(e.name), e.formula};
  }

  std::optional<Typed> any_intro(const Scope& s, int b) {
    double binder_w = s.eval ? 0.4 : 1;
    std::discrete_distribution<int> pick{binder_w, 1, 1, binder_w, 1};
    switch (pick(rng())) {
      case 0: {
        auto a = fresh("h");
        auto A = coin(0.5) ? choose(s.ctx.entries()).formula : g.formula(below(2) + 1, s.vars);
        auto s2 = with_hyp(s, a, A);
        s2.eval = false;
        auto [body, B] = any(s2, b - 1);
        return Typed{lam(a, body), imp(A, B)};
      }
      case 1: {
        auto [p, A] = any(s, (b - 1) / 2);
        auto [q, B] = any(s, (b - 1) / 2);
        return Typed{pair(p, q), conj(A, B)};
      }
      case 2: {
        auto [p, A] = any(s, b - 1);
        auto B = g.formula(below(2) + 1, s.vars);
        return coin(0.5) ? Typed{inj1(p), disj(A, B)} : Typed{inj2(p), disj(B, A)};
      }
      case 3: {
        auto x = fresh("x");
        Scope s2 = s;
        s2.vars.push_back(x);
        s2.eval = false;
        auto [p, A] = any(s2, b - 1);
        return Typed{gen(x, p), forall(x, A)};
      }
      default: {
        auto [p, A] = any(s, b - 1);
        auto ts = individuals(s, A);
        const auto& t = ts.front();
        auto y = fresh("u");
        return Typed{ex_pair(t, p), exists(y, abstract(A, t, y))};
      }
    }
  }

  std::optional<Typed> any_elim(const Scope& s, int b) {
    auto [p, F] = any(s, b - 1);
    int rest = b - 1 - static_cast<int>(term_size(*p));
    const Formula& f = *F;
    switch (f.kind) {
      case Formula::Kind::And:
        return coin(0.5) ? Typed{proj1(p), f.lhs} : Typed{proj2(p), f.rhs};
      case Formula::Kind::Imp:
        if (auto q = goal(s, f.lhs, std::max(1, rest))) return Typed{app(p, q), f.rhs};
        return std::nullopt;
      case Formula::Kind::Forall: {
        const auto& t = choose(individuals(s, nullptr));
        return Typed{inst(p, t), subst_ind(f.lhs, f.name, t)};
      }
      case Formula::Kind::Or: {
        auto a1 = fresh("h"), a2 = fresh("h");
        auto [q1, C] = any(with_hyp(s, a1, f.lhs), std::max(1, rest / 2));
        TermRef q2 = goal(with_hyp(s, a2, f.rhs), C, std::max(1, rest / 2));
        if (!q2) {
          std::tie(q1, C) = any(s, std::max(1, rest / 2));
          q2 = q1;
        }
        return Typed{case_of(p, a1, q1, a2, q2), C};
      }
      case Formula::Kind::Exists: {
        auto x = fresh("x"), a = fresh("h");
        Scope s2 = with_hyp(s, a, subst_ind(f.lhs, f.name, Individual::var(x)));
        s2.vars.push_back(x);
        auto [body, C] = any(s2, std::max(1, rest));
        auto d = dest(p, x, a, body);
        if (!free_ind_vars(*C).count(x)) return Typed{d, C};
        auto y = fresh("u");
        auto wrapped = dest(p, x, a, ex_pair(Individual::var(x), body));
        return Typed{wrapped, exists(y, abstract(C, Individual::var(x), y))};
      }
      default:
        return std::nullopt;
    }
  }

  // A redex-shaped proof of a formula we know to be provable.
  std::optional<Typed> any_goal(const Scope& s, int b) {
    FormulaRef G;
    switch (below(3)) {
      case 0: G = choose(s.ctx.entries()).formula; break;
      case 1: {
        auto A = g.formula(below(2) + 1, s.vars);
        G = imp(A, A);
        break;
      }
      default: G = T ? T : choose(s.ctx.entries()).formula;
    }
    if (auto p = expand(s, G, b)) return Typed{p, G};
    return std::nullopt;
  }

  std::optional<Typed> any_shift(const Scope& s, int b) {
    auto k = fresh("k");
    if (coin(0.6)) {
      auto [q, A] = any(s, b - 2);
      return Typed{shift(k, app(hyp(k), q)), A};
    }
    auto A = g.formula(below(2) + 1, s.vars);
    if (auto body = goal(with_hyp(s, k, imp(A, T)), T, b - 1)) return Typed{shift(k, body), A};
    return std::nullopt;
  }
};

TermGenerator::TermGenerator(std::uint64_t seed, GeneratorOptions opts) : rng_(seed), opts_(opts) {}

namespace {

void verify(const GeneratedTerm& g) {
  try {
    check(CheckMode::mqc_plus(g.T ? std::optional<FormulaRef>(g.T) : std::nullopt), g.context, g.annotation, g.term,
          g.formula);
  } catch (const CheckError& e) {
    throw std::logic_error("generated term does not check: " + print_proof(g.term) + " : " +
                           print_formula(g.formula) + " (" + e.what() + ")");
  }
}

}  // namespace

GeneratedTerm TermGenerator::any(int budget, const Annotation& ann, const FormulaRef& T, const HypContext& ctx) {
  State st(*this, T);
  State::Scope s{ctx, {}, ann.has_value(), {}};
  auto [p, A] = st.any(s, std::max(1, budget));
  GeneratedTerm out{p, A, ctx, ann, T};
  verify(out);
  return out;
}

GeneratedTerm TermGenerator::for_goal(const FormulaRef& goal, int budget, const Annotation& ann, const FormulaRef& T,
                                      const HypContext& ctx) {
  for (int attempt = 0; attempt < 6; ++attempt) {
    State st(*this, T);
    State::Scope s{ctx, {}, ann.has_value(), {}};
    if (auto p = st.goal(s, goal, std::max(1, budget) + attempt)) {
      GeneratedTerm out{p, goal, ctx, ann, T};
      verify(out);
      return out;
    }
  }
  throw GenerationExhausted("no proof of " + print_formula(goal) + " within budget " + std::to_string(budget));
}

GeneratedTerm TermGenerator::sigma_value(int depth, const Annotation& ann, const FormulaRef& T) {
  State st(*this, T);
  std::function<Typed(int)> go = [&](int d) -> Typed {
    int r = d <= 0 ? 0 : st.below(4);
    switch (r) {
      case 1: {
        auto [p, A] = go(d - 1);
        auto B = sigma_formula(1);
        return st.coin(0.5) ? Typed{inj1(p), disj(A, B)} : Typed{inj2(p), disj(B, A)};
      }
      case 2: {
        auto [p, A] = go(d - 1);
        auto [q, B] = go(d - 1);
        return {pair(p, q), conj(A, B)};
      }
      case 3: {
        auto [p, A] = go(d - 1);
        auto ts = inds_of(A);
        auto t = ts.empty() ? Individual::fn("c") : st.choose(ts);
        auto y = st.fresh("u");
        return {ex_pair(t, p), exists(y, abstract(A, t, y))};
      }
      default: {
        const auto& e = st.choose(axiom_context().entries());
        return {hyp(e.name), e.formula};
      }
    }
  };
  auto [p, A] = go(depth);
  GeneratedTerm out{p, A, axiom_context(), ann, T};
  verify(out);
  return out;
}

Individual TermGenerator::individual(const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(vars.size()) + 2);
  int i = d(rng_);
  if (i < static_cast<int>(vars.size())) return Individual::var(vars[static_cast<std::size_t>(i)]);
  if (i == static_cast<int>(vars.size())) return Individual::fn("c");
  if (i == static_cast<int>(vars.size()) + 1) return Individual::fn("d");
  return Individual::fn("f", {individual(vars)});
}

namespace {

FormulaRef random_formula(TermGenerator& g, int depth, std::vector<std::string> vars, bool sigma) {
  auto& rng = g.rng();
  int choice = depth <= 0 ? 0 : std::uniform_int_distribution<int>(0, sigma ? 3 : 5)(rng);
  static const Formula::Kind kBin[] = {Formula::Kind::And, Formula::Kind::Or, Formula::Kind::Imp};
  static const char* const kBinders[] = {"v", "w"};
  switch (choice) {
    case 0: {
      int p = std::uniform_int_distribution<int>(0, 2)(rng);
      if (p == 2) return atom("R");
      return atom(p == 0 ? "P" : "Q", {g.individual(vars)});
    }
    case 1:
    case 2:
    case 4: {
      auto kind = choice == 4 ? Formula::Kind::Imp : kBin[choice - 1];
      auto a = random_formula(g, depth - 1, vars, sigma);
      return binary(kind, a, random_formula(g, depth - 1, vars, sigma));
    }
    default: {
      auto kind = choice == 3 ? Formula::Kind::Exists : Formula::Kind::Forall;
      std::string x = kBinders[std::uniform_int_distribution<int>(0, 1)(rng)];
      vars.push_back(x);
      return quantifier(kind, x, random_formula(g, depth - 1, vars, sigma));
    }
  }
}

}  // namespace

FormulaRef TermGenerator::formula(int depth, const std::vector<std::string>& vars) {
  return random_formula(*this, depth, vars, false);
}

FormulaRef TermGenerator::sigma_formula(int depth, const std::vector<std::string>& vars) {
  return random_formula(*this, depth, vars, true);
}

FormulaRef TermGenerator::provable_sigma(int depth) { return sigma_value(depth, std::nullopt, nullptr).formula; }

GeneratedTerm generate_well_typed(int budget, const Annotation& ann, const std::optional<FormulaRef>& goal,
                                  std::uint64_t seed, const FormulaRef& T) {
  if (budget < 1) throw GenerationExhausted("budget must be at least 1");
  TermGenerator g(seed);
  FormulaRef t = ann ? *ann : T ? T : g.provable_sigma(1);
  if (goal) return g.for_goal(*goal, budget, ann, t);
  return g.any(budget, ann, t);
}

// ---------------------------------------------------------------------------

std::vector<FormulaRef> enumerate_formulas(int max_connectives) {
  // by_size[n]: formulas with exactly n connectives
  std::vector<std::vector<FormulaRef>> by_size(static_cast<std::size_t>(max_connectives) + 1);
  auto x = Individual::var("x");
  by_size[0] = {atom("P", {x}), atom("Q", {x})};
  for (int n = 1; n <= max_connectives; ++n) {
    auto& out = by_size[static_cast<std::size_t>(n)];
    for (const auto& f : by_size[static_cast<std::size_t>(n - 1)]) {
      out.push_back(forall("x", f));
      out.push_back(exists("x", f));
    }
    for (int l = 0; l <= n - 1; ++l) {
      for (const auto& a : by_size[static_cast<std::size_t>(l)])
        for (const auto& b : by_size[static_cast<std::size_t>(n - 1 - l)])
          for (auto k : {Formula::Kind::And, Formula::Kind::Or, Formula::Kind::Imp}) out.push_back(binary(k, a, b));
    }
  }
  std::vector<FormulaRef> all;
  for (auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

}  // namespace mqc
