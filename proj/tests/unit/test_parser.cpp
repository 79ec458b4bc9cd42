#include "doctest.h"

#include "mqc/parser.hpp"

using namespace mqc;

TEST_CASE("implication is right associative and binds loosest") {
  auto f = parse_formula("A -> B -> C /\\ D \\/ E");
  REQUIRE(f->kind == Formula::Kind::Imp);
  CHECK(f->lhs->name == "A");
  REQUIRE(f->rhs->kind == Formula::Kind::Imp);
  CHECK(f->rhs->rhs->kind == Formula::Kind::Or);
  CHECK(f->rhs->rhs->lhs->kind == Formula::Kind::And);
}

TEST_CASE("quantifiers extend to the right") {
  auto f = parse_formula("forall x. P(x) -> exists y. Q(y) /\\ P(x)");
  REQUIRE(f->kind == Formula::Kind::Forall);
  REQUIRE(f->lhs->kind == Formula::Kind::Imp);
  CHECK(f->lhs->rhs->kind == Formula::Kind::Exists);
}

TEST_CASE("formula printing round-trips") {
  for (const char* s : {"P(x)", "R", "P(f(x, c)) -> Q(x)", "(A -> B) -> C", "A /\\ (B \\/ C)", "(A \\/ B) /\\ C",
                        "forall x. exists y. P(x) -> Q(y)", "(forall x. P(x)) -> Q(c)",
                        "((P(x) -> Q(x)) -> P(x)) -> P(x)"}) {
    auto f = parse_formula(s);
    CHECK(print_formula(f) == s);
    CHECK(alpha_eq(parse_formula(print_formula(f)), f));
  }
}

TEST_CASE("proof printing round-trips") {
  for (const char* s : {"fun e => fun a => # (e (a (fun b => shift k => b)))",
                        "fun a => fun b => # (b (gen x => shift k => a @ x k))",
                        "fun o => case o of inl a => inr a | inr b => inl b",
                        "fun e => dest e as [z, h] in [z, h]", "(fst p, snd p)", "f a b", "f (g a)",
                        "h @ f(c) a", "inl (inr a)"}) {
    auto p = parse_proof(s);
    auto q = parse_proof(print_proof(p));
    CHECK(alpha_eq(p, q));
  }
}

TEST_CASE("application is left associative; prefix operators bind tighter") {
  auto p = parse_proof("f a b");
  REQUIRE(p->kind == Term::Kind::App);
  CHECK(p->p->kind == Term::Kind::App);
  auto q = parse_proof("fst p q");
  REQUIRE(q->kind == Term::Kind::App);
  CHECK(q->p->kind == Term::Kind::Proj1);
  auto r = parse_proof("# f a");
  REQUIRE(r->kind == Term::Kind::App);
  CHECK(r->p->kind == Term::Kind::Reset);
}

TEST_CASE("instantiation binds an individual") {
  auto p = parse_proof("h @ x k");
  REQUIRE(p->kind == Term::Kind::App);
  REQUIRE(p->p->kind == Term::Kind::Inst);
  CHECK(p->p->ind == Individual::var("x"));
}

TEST_CASE("declared constants are not variables") {
  auto file = parse_file("pred P/1. fn c/0.\nthm t : P(c) -> P(c) := fun a => a.");
  REQUIRE(file.theorems.size() == 1);
  CHECK(free_ind_vars(*file.theorems[0].statement).empty());
  auto g = parse_file("pred P/1.\nthm t : P(c) -> P(c) := fun a => a.");
  CHECK(free_ind_vars(*g.theorems[0].statement) == NameSet{"c"});
}

TEST_CASE("file declarations") {
  auto file = parse_file(
      "% comment\n"
      "pred P/1. pred Q/1. fn c/0.\n"
      "annot T := exists x. P(x).\n"
      "hyp ax : P(c).\n"
      "thm w : T := # [c, ax].\n");
  CHECK(file.signature.predicates.at("P") == 1);
  CHECK(file.signature.has_function("c"));
  REQUIRE(file.annotation);
  CHECK(print_formula(*file.annotation) == "exists x. P(x)");
  REQUIRE(file.hypotheses.lookup("ax"));
  REQUIRE(file.find("w"));
  CHECK(print_formula(file.find("w")->statement) == "exists x. P(x)");
  CHECK(file.find("w")->location.line == 5);
  CHECK(file.find("missing") == nullptr);
}

TEST_CASE("file printing round-trips") {
  auto file = read_file(MQC_CORPUS_DIR "/control.mqc");
  auto again = parse_file(print_file(file));
  REQUIRE(again.theorems.size() == file.theorems.size());
  for (std::size_t i = 0; i < file.theorems.size(); ++i) {
    CHECK(again.theorems[i].name == file.theorems[i].name);
    CHECK(alpha_eq(again.theorems[i].proof, file.theorems[i].proof));
    CHECK(alpha_eq(again.theorems[i].statement, file.theorems[i].statement));
  }
}

TEST_CASE("parse errors carry locations") {
  try {
    parse_proof("fun a => (a");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.location().line == 1);
    CHECK(e.location().column >= 11);
  }
  CHECK_THROWS_AS(parse_formula("P(x"), ParseError);
  CHECK_THROWS_AS(parse_formula("forall . P"), ParseError);
  CHECK_THROWS_AS(parse_file("pred P/1.\nthm t : P(c, d) := a."), ParseError);
  try {
    parse_file("pred P/1.\n\nthm t : P(c) := a a )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.location().line == 3);
  }
}
