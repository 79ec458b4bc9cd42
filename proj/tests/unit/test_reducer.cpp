#include "doctest.h"

#include "mqc/checker.hpp"
#include "mqc/parser.hpp"
#include "mqc/reducer.hpp"

using namespace mqc;

namespace {

FormulaRef F(const char* s) { return parse_formula(s); }
TermRef P(const char* s) { return parse_proof(s); }

std::string demo(const char* s) { return print_demo(demo_eval(parse_demo(s)).value); }

std::string value_of(const char* s) { return print_proof(normalize(P(s)).value()); }

}  // namespace

TEST_CASE("demo: discarded continuation") {
  auto r = demo_eval(parse_demo("1 + #(2 + shift k => 4)"));
  CHECK(print_demo(r.value) == "5");
  REQUIRE(r.trace.size() >= 2);
  CHECK(r.trace[1].note == "4{(fun a => #(2 + a))/k}");
}

TEST_CASE("demo: continuation used twice") {
  CHECK(demo("1 + #(2 + shift k => k 4 + k 8)") == "17");
}

TEST_CASE("demo: misc") {
  CHECK(demo("#(3)") == "3");
  CHECK(demo("(fun x => x + x) 3") == "6");
  CHECK(demo("#(1 + #(10 + shift k => k (k 1)))") == "22");
  CHECK_THROWS_AS(demo_eval(parse_demo("1 + shift k => 4")), ReductionError);
}

TEST_CASE("beta, projections, case, instantiation, dest") {
  CHECK(value_of("(fun a => (a, a)) b") == "(b, b)");
  CHECK(value_of("fst (a, b)") == "a");
  CHECK(value_of("snd (a, b)") == "b");
  CHECK(value_of("case inr b of inl x => (x, x) | inr y => y") == "b");
  CHECK(value_of("(gen x => [x, a]) @ c") == "[c, a]");
  CHECK(value_of("dest [c, a] as [x, h] in (h, [x, h])") == "(a, [c, a])");
}

TEST_CASE("call by value evaluates arguments first") {
  auto t = normalize(P("(fun a => b) ((fun c => c) d)"));
  REQUIRE(t.entries.size() == 3);
  CHECK(print_proof(t.entries[1].term) == "(fun a => b) d");
}

TEST_CASE("reset of a value steps to the value") {
  auto o = step(P("# (a, b)"));
  REQUIRE(o.kind == StepOutcome::Kind::Stepped);
  CHECK(o.rule == "reset");
  CHECK(print_proof(o.term) == "(a, b)");
}

TEST_CASE("capture through a pure context") {
  auto t = normalize(P("# fst (shift k => k (v1, v2))"));
  CHECK(print_proof(t.value()) == "v1");
  REQUIRE(t.entries.size() >= 2);
  CHECK(t.entries[1].rule == "capture");
  REQUIRE(t.entries[1].continuation);
  CHECK(alpha_eq(t.entries[1].continuation, P("fun a => # fst a")));
}

TEST_CASE("capture stops at the nearest reset") {
  auto o = step(P("# (a, # (b, shift k => c))"));
  REQUIRE(o.kind == StepOutcome::Kind::Stepped);
  CHECK(o.rule == "capture");
  CHECK(alpha_eq(o.term, P("# (a, # c)")));
}

TEST_CASE("step reports values and undelimited captures") {
  CHECK(step(P("fun a => a")).kind == StepOutcome::Kind::IsValue);
  auto o = step(P("f (shift k => k a)"));
  REQUIRE(o.kind == StepOutcome::Kind::Capture);
  CHECK(o.k == "k");
  CHECK(o.context.is_pure());
  CHECK(alpha_eq(o.context.plug(hyp("z")), P("f z")));
  try {
    normalize(P("f (shift k => k a)"));
    FAIL("expected top-level capture");
  } catch (const ReductionError& e) {
    CHECK(e.kind() == ReductionErrorKind::TopLevelCapture);
  }
}

TEST_CASE("stuck terms and step limits") {
  try {
    normalize(P("fst (fun a => a)"));
    FAIL("expected a stuck term");
  } catch (const ReductionError& e) {
    CHECK(e.kind() == ReductionErrorKind::Stuck);
  }
  try {
    normalize(P("(fun x => x x) (fun x => x x)"), 100);
    FAIL("expected the step limit");
  } catch (const ReductionError& e) {
    CHECK(e.kind() == ReductionErrorKind::StepLimitExceeded);
  }
}

TEST_CASE("normalize without trace keeps the step count") {
  auto full = normalize(P("# fst (shift k => k (v1, v2))"));
  auto lean = normalize(P("# fst (shift k => k (v1, v2))"), kDefaultMaxSteps, false);
  CHECK(full.steps() == lean.steps());
  CHECK(print_proof(lean.value()) == "v1");
}

TEST_CASE("extraction of a disjunct") {
  HypContext ctx{{"ax", F("Q(d)")}};
  auto goal = F("P(c) \\/ Q(d)");
  auto w = extract(P("(fun a => inr a) ax"), goal, ctx);
  CHECK(w.kind == Witness::Kind::Right);
  CHECK(print_proof(w.value) == "ax");
  CHECK(print_formula(w.formula) == "Q(d)");
}

TEST_CASE("extraction of a witness through control") {
  HypContext ctx{{"ax_p", F("P(c)")}};
  auto w = extract(P("# [c, shift k => k ax_p]"), F("exists x. P(x)"), ctx);
  CHECK(w.kind == Witness::Kind::Individual);
  CHECK(print_individual(w.individual) == "c");
  CHECK(print_formula(w.formula) == "P(c)");
  CHECK(w.steps == 4);
}

TEST_CASE("extraction rejects other goals") {
  try {
    extract(P("fun a => a"), F("P -> P"));
    FAIL("expected a shape violation");
  } catch (const ReductionError& e) {
    CHECK(e.kind() == ReductionErrorKind::ShapeViolation);
  }
}
