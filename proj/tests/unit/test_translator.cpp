#include "doctest.h"

#include "mqc/checker.hpp"
#include "mqc/parser.hpp"
#include "mqc/proofs.hpp"
#include "mqc/translator.hpp"

using namespace mqc;

namespace {

FormulaRef F(const char* s) { return parse_formula(s); }
TermRef P(const char* s) { return parse_proof(s); }

std::string sub(const char* f, const char* T) { return print_formula(translate_formula_sub(F(f), F(T))); }

void cps_checks(const char* goal, const char* proof, const char* T, const HypContext& ctx = {}) {
  auto q = cps_term(P(proof), TranslationEnv{F(T)});
  CHECK_FALSE(contains_control(*q));
  CHECK(accepts(CheckMode::mqc_only(), translate_context(ctx, F(T)), std::nullopt, q,
                translate_formula_super(F(goal), F(T))));
}

}  // namespace

TEST_CASE("subscript translation") {
  CHECK(sub("P(x)", "R") == "P(x)");
  CHECK(sub("P -> Q", "R") == "P -> (Q -> R) -> R");
  CHECK(sub("forall x. P(x)", "R") == "forall x. (P(x) -> R) -> R");
  CHECK(sub("(P -> Q) /\\ exists x. P(x)", "R") == "(P -> (Q -> R) -> R) /\\ (exists x. P(x))");
  CHECK(print_formula(translate_formula_super(F("P"), F("R"))) == "(P -> R) -> R");
  CHECK(print_formula(not_T(F("P"), F("R"))) == "P -> R");
}

TEST_CASE("sigma formulas are fixed by the subscript translation") {
  for (const char* f : {"P(x)", "P /\\ Q", "exists x. P(x) \\/ Q(x)", "exists x. exists y. P(x) /\\ Q(y)"})
    CHECK(sub(f, "exists z. P(z)") == print_formula(F(f)));
}

TEST_CASE("cps of the corpus terms") {
  cps_checks("(T -> S) -> ((S -> T) -> T) -> S", kMpTerm, "S");
  cps_checks("(forall x. ((P(x) -> Q(x)) -> T) -> T) -> ((forall x. P(x) -> Q(x)) -> T) -> T", kDnsTerm, "T");
}

TEST_CASE("cps of control-free terms") {
  cps_checks("P(c) \\/ Q(c) -> Q(c) \\/ P(c)", "fun o => case o of inl a => inr a | inr b => inl b", "R");
  cps_checks("(exists x. P(x)) -> exists y. P(y)", "fun e => dest e as [z, h] in [z, h]", "R");
  cps_checks("P(c) /\\ Q(c) -> Q(c)", "fun p => snd p", "R");
  cps_checks("(forall x. P(x)) -> P(c)", "fun h => h @ c", "R");
}

TEST_CASE("cps under a context") {
  HypContext ctx{{"ax", F("P(c)")}};
  cps_checks("exists x. P(x)", "# [c, shift k => k ax]", "exists x. P(x)", ctx);
}

TEST_CASE("cps needs T for control") {
  CHECK_THROWS_AS(cps_term(P("# a")), TranslationError);
  CHECK_NOTHROW(cps_term(P("fun a => a")));
}

TEST_CASE("dns iso on atoms is the identity") {
  auto f = F("P(x)");
  auto T = F("R");
  auto iso = dns_iso(f, T, collect_dns_axioms(f, T));
  CHECK(alpha_eq(iso.to, P("fun a => a")));
  CHECK(alpha_eq(iso.from, P("fun a => a")));
}

TEST_CASE("dns iso collects the needed instances") {
  auto T = F("R");
  CHECK(collect_dns_axioms(F("P(x) /\\ exists x. Q(x)"), T).axioms.empty());
  auto ax = collect_dns_axioms(F("forall x. P(x) -> Q(x)"), T);
  bool has_forall = false, has_imp = false;
  for (const auto& a : ax.axioms) {
    has_forall |= a.kind == DnsAxiom::Kind::Forall;
    has_imp |= a.kind == DnsAxiom::Kind::Imp;
    CHECK(free_ind_vars(*a.formula).empty());
  }
  CHECK(has_forall);
  CHECK(has_imp);
}

TEST_CASE("dns iso directions check in minimal logic") {
  for (const char* f : {"P(x) /\\ Q(x)", "P(x) \\/ Q(x)", "exists x. P(x)", "P(x) -> Q(x)", "forall x. P(x)",
                        "forall x. P(x) -> exists y. Q(y)", "((P(x) -> Q(x)) -> P(x)) -> P(x)",
                        "forall y. (forall x. P(x) -> Q(y)) /\\ P(y)"}) {
    for (const char* T : {"R", "P(c)", "Q(x)", "exists y. P(y) \\/ Q(x)"}) {
      auto msg = dns_iso_violation(F(f), F(T));
      INFO(f << " with T = " << T << ": " << msg.value_or(""));
      CHECK_FALSE(msg);
    }
  }
}

TEST_CASE("dns iso fails without its instances") {
  auto f = F("forall x. P(x)");
  CHECK_THROWS_AS(dns_iso(f, F("R"), DnsAxiomHandles{}), TranslationError);
}
