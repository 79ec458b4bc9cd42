#include "doctest.h"

#include "mqc/checker.hpp"
#include "mqc/parser.hpp"
#include "mqc/proofs.hpp"

using namespace mqc;

namespace {

FormulaRef F(const char* s) { return parse_formula(s); }
TermRef P(const char* s) { return parse_proof(s); }

bool ok(const char* goal, const char* proof, Annotation ann = std::nullopt, CheckMode mode = CheckMode::mqc_plus(),
        const HypContext& ctx = {}) {
  return accepts(mode, ctx, ann, P(proof), F(goal));
}

CheckErrorKind error_of(const char* goal, const char* proof, Annotation ann = std::nullopt,
                        CheckMode mode = CheckMode::mqc_plus(), const HypContext& ctx = {}) {
  try {
    check(mode, ctx, ann, P(proof), F(goal));
  } catch (const CheckError& e) {
    return e.kind();
  }
  FAIL("expected a check error for " << proof);
  return CheckErrorKind::RuleMismatch;
}

}  // namespace

TEST_CASE("markov principle relative to S") {
  auto j = check(CheckMode::mqc_plus(), {}, std::nullopt, P(kMpTerm), F("(T -> S) -> ((S -> T) -> T) -> S"));
  REQUIRE(j.resolved_T);
  CHECK(print_formula(*j.resolved_T) == "S");
}

TEST_CASE("double-negation shift relative to T") {
  auto goal = "(forall x. ((P(x) -> Q(x)) -> T) -> T) -> ((forall x. P(x) -> Q(x)) -> T) -> T";
  CHECK(ok(goal, kDnsTerm));
  CHECK_FALSE(ok(goal, kDnsTerm, std::nullopt, CheckMode::mqc_only()));
}

TEST_CASE("minimal logic rules") {
  CHECK(ok("(forall x. P(x)) -> P(c)", "fun h => h @ c"));
  CHECK(ok("(forall x. P(x) /\\ Q(x)) -> forall y. Q(y)", "fun h => gen y => snd (h @ y)"));
  CHECK(ok("(exists x. P(x)) -> exists y. P(y)", "fun e => dest e as [z, h] in [z, h]"));
  CHECK(ok("(forall x. P(x)) -> exists y. P(y)", "fun h => [c, h @ c]"));
  CHECK(ok("P(c) \\/ Q(c) -> Q(c) \\/ P(c)", "fun o => case o of inl a => inr a | inr b => inl b"));
  CHECK(ok("(((T -> T) -> T) -> T) /\\ (T -> (T -> T) -> T)", "(fun f => f (fun t => t), fun t => fun k => k t)",
           std::nullopt, CheckMode::mqc_only()));
  CHECK(ok("P(c) -> P(c)", "(fun f => f) (fun a => a)"));
}

TEST_CASE("context hypotheses") {
  HypContext ctx{{"ax", F("P(c)")}};
  CHECK(ok("P(c)", "ax", std::nullopt, CheckMode::mqc_plus(), ctx));
  CHECK(ok("exists x. P(x)", "[c, ax]", std::nullopt, CheckMode::mqc_plus(), ctx));
  CHECK_FALSE(ok("exists x. P(x)", "[d, ax]", std::nullopt, CheckMode::mqc_plus(), ctx));
}

TEST_CASE("shift under an annotation") {
  HypContext ctx{{"ax", F("P(c)")}};
  auto T = F("exists x. P(x)");
  CHECK(ok("exists x. P(x)", "# [c, shift k => k ax]", std::nullopt, CheckMode::mqc_plus(), ctx));
  CHECK(ok("Q(d)", "shift k => [c, ax]", Annotation(T), CheckMode::mqc_plus(), ctx));
  CHECK(ok("R", "#(shift k => [c, ax])", std::nullopt, CheckMode::mqc_plus(T), ctx) == false);
}

TEST_CASE("error kinds") {
  CHECK(error_of("P /\\ Q", "fun a => a") == CheckErrorKind::RuleMismatch);
  CHECK(error_of("P", "a") == CheckErrorKind::UnboundHypothesis);
  CHECK(error_of("(P -> P) -> P -> P", "fun a => # a") == CheckErrorKind::SigmaViolation);
  CHECK(error_of("P(c)", "shift k => k c") == CheckErrorKind::ShiftOutsideDelimiter);
  CHECK(error_of("P(x) -> forall x. P(x)", "fun a => gen x => a") == CheckErrorKind::FreshnessViolation);
  CHECK(error_of("P(c)", "# c", std::nullopt, CheckMode::mqc_only()) == CheckErrorKind::ControlInMqc);
  CHECK(error_of("P -> P", "fun a => shift k => k a", Annotation(F("P")), CheckMode::mqc_only()) ==
        CheckErrorKind::ControlInMqc);
  CHECK(error_of("(R -> R) /\\ (S -> S)", "(fun a => # a, fun b => # b)") == CheckErrorKind::GlobalTConflict);
  CHECK(error_of("S -> S", "fun b => # b", std::nullopt, CheckMode::mqc_plus(F("R"))) ==
        CheckErrorKind::GlobalTConflict);
}

TEST_CASE("annotations must be sigma formulas") {
  CHECK(error_of("P", "a", Annotation(F("P -> P")), CheckMode::mqc_plus(), {{"a", F("P")}}) ==
        CheckErrorKind::SigmaViolation);
}

TEST_CASE("check errors report the failing rule and sub-term") {
  try {
    check(CheckMode::mqc_plus(), {}, std::nullopt, P("fun a => b"), F("P -> P"));
    FAIL("expected a check error");
  } catch (const CheckError& e) {
    CHECK(e.kind() == CheckErrorKind::UnboundHypothesis);
    REQUIRE(e.subterm());
    CHECK(print_proof(e.subterm()) == "b");
  }
}

TEST_CASE("inference") {
  auto f = infer(CheckMode::mqc_plus(), {}, std::nullopt, P("fun a => (a, a)"));
  REQUIRE(f);
  CHECK((*f)->kind == Formula::Kind::Imp);
  CHECK((*f)->rhs->kind == Formula::Kind::And);
  CHECK_FALSE(infer(CheckMode::mqc_plus(), {}, std::nullopt, P("a")));
  CHECK_FALSE(infer(CheckMode::mqc_plus(), {}, std::nullopt, P("fun a => a a")));
}

TEST_CASE("formula of a sub-term") {
  auto p = P("fun a => fst a");
  auto node = p->p.get();
  auto f = formula_of_subterm(CheckMode::mqc_plus(), {}, std::nullopt, p, F("P /\\ Q -> P"), node);
  REQUIRE(f);
  CHECK(print_formula(*f) == "P");
}

TEST_CASE("weakening instance") {
  auto j = check(CheckMode::mqc_plus(), {}, std::nullopt, P("fun a => a"), F("P -> P"));
  auto w = check_weakening_instance(j, F("R"));
  REQUIRE(w.annotation);
  CHECK(print_formula(*w.annotation) == "R");
}

TEST_CASE("files thread the global annotation formula") {
  auto file = parse_file(
      "pred R/0. pred S/0.\n"
      "thm a : R -> R := fun x => # x.\n"
      "thm b : S -> S := fun x => # x.\n"
      "thm c : R -> R := fun x => x.\n");
  auto reports = check_file(file);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].ok);
  CHECK_FALSE(reports[1].ok);
  REQUIRE(reports[1].error_kind);
  CHECK(*reports[1].error_kind == CheckErrorKind::GlobalTConflict);
  CHECK(reports[1].location.line == 3);
  CHECK(reports[2].ok);
  CHECK_THROWS_AS(resolve_global_T(file), CheckError);
}

TEST_CASE("corpus files check") {
  for (const auto& e : load_corpus(MQC_CORPUS_DIR)) {
    for (const auto& r : check_file(e.source, e.mode)) {
      INFO(e.file << ": " << r.name << " " << r.error);
      CHECK(r.ok);
    }
  }
}
