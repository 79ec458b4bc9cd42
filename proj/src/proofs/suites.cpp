#include <chrono>

#include "json.hpp"

#include "mqc/checker.hpp"
#include "mqc/proofs.hpp"
#include "mqc/reducer.hpp"
#include "mqc/translator.hpp"

namespace mqc {

namespace {

using Failure = std::optional<std::string>;

// A single case: the term under test, and the property re-run on shrinking
// candidates. The property returns a message when it is violated and
// nothing when it holds or when the candidate is outside its domain.
struct Case {
  TermRef term;
  FormulaRef formula;
  std::function<Failure(const TermRef&)> property;
  /// Re-derives a formula for a shrinking candidate.
  std::function<std::optional<FormulaRef>(const TermRef&)> retype;
};

struct Counters {
  std::vector<std::pair<std::string, double>> values;
  void add(const std::string& k, double v = 1) {
    for (auto& [name, x] : values)
      if (name == k) {
        x += v;
        return;
      }
    values.emplace_back(k, v);
  }
};

std::string what(const std::exception& e) { return e.what(); }

FormulaRef pick_T(TermGenerator& g) { return g.provable_sigma(std::uniform_int_distribution<int>(0, 2)(g.rng())); }

int pick_budget(TermGenerator& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g.rng()); }

CheckMode mode_for(const FormulaRef& T) {
  return T ? CheckMode::mqc_plus(T) : CheckMode::mqc_plus();
}

// Both halves of a capture: ctx, k:A->T |-_T body : T and ctx, a:A |-_T P[a] : B.
Failure decomposition(const HypContext& ctx, const Annotation& ann, const FormulaRef& T, const TermRef& whole,
                      const FormulaRef& whole_formula, const StepOutcome& o, const FormulaRef& B) {
  if (!o.context.is_pure()) return "captured context is not pure";
  auto A = formula_of_subterm(mode_for(T), ctx, ann, whole, whole_formula, o.shift.get());
  if (!A) return "shift node missing from the derivation";
  try {
    check(CheckMode::mqc_plus(T), ctx.extended(o.k, imp(*A, T)), T, o.body, T);
  } catch (const CheckError& e) {
    return "shift body does not check at the annotation: " + what(e);
  }
  NameSet avoid = o.context.free_hyp_vars();
  auto names = ctx.names();
  avoid.insert(names.begin(), names.end());
  auto a = pick_name("a", avoid);
  try {
    check(CheckMode::mqc_plus(T), ctx.extended(a, *A), T, o.context.plug(hyp(a)), B);
  } catch (const CheckError& e) {
    return "pure context does not check around the hole: " + what(e);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Case subject_reduction(std::size_t i, TermGenerator& g, Counters& c) {
  auto T = pick_T(g);
  bool annotated = i % 2 == 1;
  Annotation ann = annotated ? Annotation(T) : std::nullopt;
  auto gt = g.any(pick_budget(g, 6, 18), ann, T);
  const HypContext& ctx = gt.context;
  auto prop = [ctx, ann, T, &c](const TermRef& p, const FormulaRef& A, bool count) -> Failure {
    auto mode = CheckMode::mqc_plus(T);
    TermRef cur = p;
    bool captured = false;
    for (int n = 0; n < 20000; ++n) {
      StepOutcome o;
      try {
        o = step(cur);
      } catch (const ReductionError& e) {
        return "step " + std::to_string(n) + ": " + what(e);
      }
      if (o.kind == StepOutcome::Kind::IsValue) break;
      if (o.kind == StepOutcome::Kind::Capture) {
        if (!ann) return "undelimited capture in an unannotated term";
        if (auto f = decomposition(ctx, ann, T, cur, A, o, A)) return "top-level capture: " + *f;
        if (count) c.add("top_level_captures");
        break;
      }
      if (o.rule == "capture") {
        captured = true;
        if (count) c.add("capture_steps");
        if (auto f = decomposition(ctx, ann, T, cur, A, o, T)) return "capture step " + std::to_string(n) + ": " + *f;
      }
      try {
        check(mode, ctx, ann, o.term, A);
      } catch (const CheckError& e) {
        return "step " + std::to_string(n) + " (" + o.rule + ") to " + print_proof(o.term) + ": " + what(e);
      }
      cur = o.term;
      if (count) c.add("steps");
    }
    if (count && captured) c.add(ann ? "annotated_cases_with_capture" : "unannotated_cases_with_capture");
    return std::nullopt;
  };
  if (annotated) c.add("annotated_cases");
  auto A = gt.formula;
  auto first = std::make_shared<bool>(true);
  return {gt.term, A,
          [prop, A, first](const TermRef& p) {
            bool count = *first;
            *first = false;
            return prop(p, A, count);
          },
          [ctx, ann, T](const TermRef& p) { return infer(CheckMode::mqc_plus(T), ctx, ann, p); }};
}

Case progress(std::size_t, TermGenerator& g, Counters& c, bool whole) {
  auto T = pick_T(g);
  auto gt = g.any(pick_budget(g, 6, 20), std::nullopt, T);
  HypContext ctx = gt.context;
  auto A = gt.formula;
  auto prop = [ctx, T, A, whole, &c](const TermRef& p) -> Failure {
    if (whole) {
      try {
        auto tr = normalize(p, kDefaultMaxSteps, false);
        if (!is_value(*tr.value())) return "normal form is not a value";
        check(CheckMode::mqc_plus(T), ctx, std::nullopt, tr.value(), A);
        c.add("steps", static_cast<double>(tr.steps()));
      } catch (const ReductionError& e) {
        return what(e);
      } catch (const CheckError& e) {
        return "value does not check: " + what(e);
      }
      return std::nullopt;
    }
    TermRef cur = p;
    for (std::uint64_t n = 0; n < kDefaultMaxSteps; ++n) {
      try {
        auto o = step(cur);
        if (o.kind == StepOutcome::Kind::IsValue) return std::nullopt;
        if (o.kind == StepOutcome::Kind::Capture) return "closed unannotated term reached a top-level capture";
        cur = o.term;
      } catch (const ReductionError& e) {
        return what(e);
      }
    }
    return "no value within the step limit";
  };
  return {gt.term, A, prop, [ctx, T](const TermRef& p) { return infer(CheckMode::mqc_plus(T), ctx, std::nullopt, p); }};
}

Case weakening(std::size_t, TermGenerator& g, Counters&) {
  TermGenerator pure(g.rng()(), GeneratorOptions{false});
  auto gt = pure.any(pick_budget(g, 3, 16), std::nullopt, nullptr);
  auto Tp = g.sigma_formula(pick_budget(g, 0, 3));
  HypContext ctx = gt.context;
  auto A = gt.formula;
  auto prop = [ctx, Tp, A](const TermRef& p) -> Failure {
    Judgment j;
    try {
      j = check(CheckMode::mqc_plus(), ctx, std::nullopt, p, A);
    } catch (const CheckError&) {
      return std::nullopt;
    }
    try {
      check_weakening_instance(j, Tp);
    } catch (const CheckError& e) {
      return "rejected under " + print_formula(Tp) + ": " + what(e);
    }
    return std::nullopt;
  };
  return {gt.term, A, prop, [ctx](const TermRef& p) { return infer(CheckMode::mqc_plus(), ctx, std::nullopt, p); }};
}

Case strengthening(std::size_t, TermGenerator& g, Counters& c) {
  auto S = pick_T(g);
  auto G = g.provable_sigma(pick_budget(g, 0, 3));
  TermRef V;
  try {
    auto gt = g.for_goal(G, pick_budget(g, 3, 10), Annotation(S), S);
    auto tr = normalize(gt.term, kDefaultMaxSteps, false);
    V = tr.value();
    c.add("from_normalization");
  } catch (const GenerationExhausted&) {
  } catch (const ReductionError&) {
  }
  if (!V) {
    auto sv = g.sigma_value(pick_budget(g, 0, 3), Annotation(S), S);
    V = sv.term;
    G = sv.formula;
    c.add("direct_values");
  }
  HypContext ctx = axiom_context();
  auto prop = [ctx, S, G](const TermRef& v) -> Failure {
    if (!is_value(*v) || !accepts(CheckMode::mqc_plus(S), ctx, S, v, G)) return std::nullopt;
    try {
      check(CheckMode::mqc_plus(), ctx, std::nullopt, v, G);
    } catch (const CheckError& e) {
      return "value rejected without annotation: " + what(e);
    }
    return std::nullopt;
  };
  if (!accepts(CheckMode::mqc_plus(S), ctx, S, V, G))
    return {V, G, [](const TermRef&) -> Failure { return "value does not check under its annotation"; }, {}};
  return {V, G, prop, {}};
}

Case substitution(std::size_t i, TermGenerator& g, Counters& c) {
  auto T = pick_T(g);
  Annotation ann = g.rng()() % 2 ? Annotation(T) : std::nullopt;
  if (i % 2 == 0) {
    c.add("hypothesis_cases");
    auto q = g.any(pick_budget(g, 1, 6), ann, T);
    auto ctx_a = axiom_context().extended("sub_a", q.formula);
    auto p = g.any(pick_budget(g, 3, 12), ann, T, ctx_a);
    HypContext ctx = axiom_context();
    auto B = p.formula;
    auto qt = q.term;
    auto prop = [ctx, ann, T, B, qt](const TermRef& body) -> Failure {
      auto r = subst_hyp(body, "sub_a", qt);
      try {
        check(CheckMode::mqc_plus(T), ctx, ann, r, B);
      } catch (const CheckError& e) {
        return "substituting " + print_proof(qt) + " gives " + print_proof(r) + ": " + what(e);
      }
      return std::nullopt;
    };
    return {p.term, B, prop,
            [ctx_a, ann, T](const TermRef& x) { return infer(CheckMode::mqc_plus(T), ctx_a, ann, x); }};
  }
  c.add("individual_cases");
  auto ctx_z = axiom_context().extended("ax_z", atom("P", {Individual::var("z")}));
  auto p = g.any(pick_budget(g, 3, 12), ann, T, ctx_z);
  auto t = g.individual();
  auto B = p.formula;
  auto prop = [ctx_z, ann, T, B, t](const TermRef& body) -> Failure {
    HypContext ctx;
    for (const auto& e : ctx_z.entries()) ctx.push(e.name, subst_ind(e.formula, "z", t));
    auto r = subst_ind(body, "z", t);
    try {
      check(CheckMode::mqc_plus(T), ctx, ann, r, subst_ind(B, "z", t));
    } catch (const CheckError& e) {
      return "substituting " + print_individual(t) + " for z: " + what(e);
    }
    return std::nullopt;
  };
  return {p.term, B, prop, [ctx_z, ann, T](const TermRef& x) { return infer(CheckMode::mqc_plus(T), ctx_z, ann, x); }};
}

Failure cps_property(const HypContext& ctx, const FormulaRef& T, const TermRef& p, const FormulaRef& A) {
  TermRef q;
  try {
    q = cps_term(p, TranslationEnv{T});
  } catch (const TranslationError& e) {
    return what(e);
  }
  if (contains_control(*q)) return "translation contains control operators";
  try {
    check(CheckMode::mqc_only(), translate_context(ctx, T), std::nullopt, q, translate_formula_super(A, T));
  } catch (const CheckError& e) {
    return "translation " + print_proof(q) + " does not check: " + what(e);
  }
  return std::nullopt;
}

Case cps(std::size_t i, TermGenerator& g, Counters& c) {
  auto T = pick_T(g);
  Annotation ann = i % 2 ? Annotation(T) : std::nullopt;
  auto gt = g.any(pick_budget(g, 3, 14), ann, T);
  if (contains_control(*gt.term)) c.add("with_control");
  HypContext ctx = gt.context;
  auto A = gt.formula;
  auto prop = [ctx, T, ann, A](const TermRef& p) -> Failure {
    if (!accepts(CheckMode::mqc_plus(T), ctx, ann, p, A)) return std::nullopt;
    return cps_property(ctx, T, p, A);
  };
  return {gt.term, A, prop, [ctx, ann, T](const TermRef& p) { return infer(CheckMode::mqc_plus(T), ctx, ann, p); }};
}

Failure dns_property(const FormulaRef& f, const FormulaRef& T) {
  try {
    auto axioms = collect_dns_axioms(f, T);
    auto iso = dns_iso(f, T, axioms);
    if (f->kind == Formula::Kind::Atom) {
      auto id = lam("c", hyp("c"));
      if (!alpha_eq(iso.to, id) || !alpha_eq(iso.from, id)) return "atomic formula without identity terms";
    }
    auto ctx = axioms.context();
    try {
      check(CheckMode::mqc_only(), ctx, std::nullopt, iso.to, iso.to_formula);
    } catch (const CheckError& e) {
      return "to-direction " + print_proof(iso.to) + ": " + what(e);
    }
    try {
      check(CheckMode::mqc_only(), ctx, std::nullopt, iso.from, iso.from_formula);
    } catch (const CheckError& e) {
      return "from-direction " + print_proof(iso.from) + ": " + what(e);
    }
  } catch (const TranslationError& e) {
    return what(e);
  }
  return std::nullopt;
}

Case extraction(std::size_t i, TermGenerator& g, Counters& c) {
  bool want_or = i % 2 == 0;
  for (int attempt = 0; attempt < 50; ++attempt) {
    FormulaRef G;
    auto P = g.provable_sigma(pick_budget(g, 0, 2));
    if (want_or) {
      auto other = g.rng()() % 3 ? g.formula(pick_budget(g, 0, 2)) : g.provable_sigma(1);
      G = g.rng()() % 2 ? disj(P, other) : disj(other, P);
    } else {
      auto src = g.rng()() % 2 ? P : imp(P, P);
      auto t = g.rng()() % 3 ? Individual::fn("c") : Individual::fn("d");
      auto body = abstract_individual(src, t, "y");
      G = exists("y", body);
    }
    auto T = G && is_sigma(*G) && g.rng()() % 2 ? G : pick_T(g);
    try {
      auto gt = g.for_goal(G, pick_budget(g, 3, 12), std::nullopt, T);
      c.add(want_or ? "or" : "exists");
      if (contains_control(*gt.term)) c.add("with_control");
      HypContext ctx = gt.context;
      auto prop = [ctx, T, G](const TermRef& p) -> Failure {
        if (!accepts(CheckMode::mqc_plus(T), ctx, std::nullopt, p, G)) return std::nullopt;
        try {
          auto w = extract(p, G, ctx);
          if (G->kind == Formula::Kind::Or && w.kind == Witness::Kind::Individual) return "disjunction gave a witness";
          if (G->kind == Formula::Kind::Exists && w.kind != Witness::Kind::Individual) return "existential gave a side";
        } catch (const ReductionError& e) {
          return what(e);
        }
        return std::nullopt;
      };
      return {gt.term, G, prop, {}};
    } catch (const GenerationExhausted&) {
      c.add("exhausted_goals");
    }
  }
  return {nullptr, nullptr, [](const TermRef&) -> Failure { return "no provable goal found"; }, {}};
}

// ---------------------------------------------------------------------------

void collect_subterms(const TermRef& p, std::vector<TermRef>& out) {
  out.push_back(p);
  for (const auto& k : {p->p, p->q, p->r})
    if (k) collect_subterms(k, out);
}

// All terms obtained by replacing one node with one of its descendants.
void replacements(const TermRef& p, std::vector<TermRef>& out) {
  std::vector<TermRef> subs;
  collect_subterms(p, subs);
  for (std::size_t i = 1; i < subs.size(); ++i) out.push_back(subs[i]);
  auto rebuild = [&](int slot, const TermRef& child) {
    auto n = std::make_shared<Term>(*p);
    (slot == 0 ? n->p : slot == 1 ? n->q : n->r) = child;
    return TermRef(n);
  };
  int slot = 0;
  for (const auto& k : {p->p, p->q, p->r}) {
    if (k) {
      std::vector<TermRef> inner;
      replacements(k, inner);
      for (const auto& c : inner) out.push_back(rebuild(slot, c));
    }
    ++slot;
  }
}

}  // namespace

std::optional<std::string> cps_violation(const HypContext& ctx, const FormulaRef& T, const TermRef& p,
                                         const FormulaRef& A) {
  return cps_property(ctx, T, p, A);
}

std::optional<std::string> dns_iso_violation(const FormulaRef& f, const FormulaRef& T) { return dns_property(f, T); }

TermRef shrink(const TermRef& p, const std::function<bool(const TermRef&)>& still_fails, int max_rounds) {
  TermRef cur = p;
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<TermRef> cands;
    replacements(cur, cands);
    std::stable_sort(cands.begin(), cands.end(),
                     [](const TermRef& a, const TermRef& b) { return term_size(*a) < term_size(*b); });
    bool improved = false;
    for (const auto& c : cands) {
      if (term_size(*c) >= term_size(*cur)) break;
      if (still_fails(c)) {
        cur = c;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return cur;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "subject-reduction", "progress",  "normalization", "weakening",     "strengthening",
      "substitution",      "cps-type-correctness", "dns-iso", "extraction", "sigma-fixpoint"};
  return names;
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["cases"] = cases;
  j["passed"] = passed;
  j["failed"] = failures.size();
  j["seconds"] = seconds;
  nlohmann::json st = nlohmann::json::object();
  for (const auto& [k, v] : stats) st[k] = v;
  j["stats"] = st;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : failures)
    fs.push_back({{"index", f.index},
                  {"seed", f.seed},
                  {"message", f.message},
                  {"term", f.term},
                  {"shrunk", f.shrunk},
                  {"formula", f.formula}});
  j["failures"] = fs;
  return j.dump();
}

Report run_suite(const std::string& name, std::size_t cases, std::uint64_t seed) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown suite '" + name + "'");
  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.suite = name;
  rep.cases = cases;
  Counters counters;

  for (std::size_t i = 0; i < cases; ++i) {
    auto cs = case_seed(seed, i);
    TermGenerator g(cs);
    SuiteFailure fail;
    fail.index = i;
    fail.seed = cs;
    Failure msg;
    try {
      if (name == "dns-iso" || name == "sigma-fixpoint") {
        auto T = g.sigma_formula(pick_budget(g, 0, 2), {"x"});
        auto f = name == "dns-iso" ? g.formula(pick_budget(g, 0, 4), {"x"}) : g.sigma_formula(pick_budget(g, 0, 5), {"x"});
        fail.formula = print_formula(f) + " with T = " + print_formula(T);
        if (name == "dns-iso") {
          msg = dns_property(f, T);
        } else {
          auto t = translate_formula_sub(f, T);
          if (print_formula(t) != print_formula(f) || !alpha_eq(t, f))
            msg = "translation changed the formula to " + print_formula(t);
        }
      } else {
        Case c;
        if (name == "subject-reduction") c = subject_reduction(i, g, counters);
        else if (name == "progress") c = progress(i, g, counters, false);
        else if (name == "normalization") c = progress(i, g, counters, true);
        else if (name == "weakening") c = weakening(i, g, counters);
        else if (name == "strengthening") c = strengthening(i, g, counters);
        else if (name == "substitution") c = substitution(i, g, counters);
        else if (name == "cps-type-correctness") c = cps(i, g, counters);
        else c = extraction(i, g, counters);
        msg = c.property(c.term);
        if (c.term) {
          fail.term = print_proof(c.term);
          if (c.formula) fail.formula = print_formula(c.formula);
        }
        if (msg && c.term) {
          auto retype = c.retype;
          auto property = c.property;
          fail.shrunk = print_proof(shrink(c.term, [&](const TermRef& cand) {
            if (retype && !retype(cand)) return false;
            return property(cand).has_value();
          }));
        }
      }
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    if (msg) {
      fail.message = *msg;
      rep.failures.push_back(std::move(fail));
    } else {
      ++rep.passed;
    }
  }

  rep.stats = counters.values;
  auto get = [&](const std::string& k) {
    for (const auto& [n, v] : rep.stats)
      if (n == k) return v;
    return 0.0;
  };
  if (name == "subject-reduction" && get("annotated_cases") > 0)
    rep.stats.emplace_back("annotated_capture_rate",
                           (get("annotated_cases_with_capture")) / get("annotated_cases"));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace mqc
