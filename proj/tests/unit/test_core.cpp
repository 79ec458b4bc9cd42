#include "doctest.h"

#include "mqc/core.hpp"
#include "mqc/parser.hpp"

using namespace mqc;

namespace {

FormulaRef F(const char* s) { return parse_formula(s); }
TermRef P(const char* s) { return parse_proof(s); }

}  // namespace

TEST_CASE("sigma formulas exclude implication and universal quantification") {
  CHECK(is_sigma(*F("P(x)")));
  CHECK(is_sigma(*F("exists x. P(x) /\\ (Q(x) \\/ R)")));
  CHECK_FALSE(is_sigma(*F("P(x) -> P(x)")));
  CHECK_FALSE(is_sigma(*F("exists x. forall y. P(y)")));
}

TEST_CASE("formula substitution avoids capture") {
  auto f = F("forall y. P(x) /\\ Q(y)");
  auto g = subst_ind(f, "x", Individual::var("y"));
  CHECK(free_ind_vars(*g) == NameSet{"y"});
  CHECK(alpha_eq(g, F("forall z. P(y) /\\ Q(z)")));
  CHECK_FALSE(alpha_eq(g, F("forall y. P(y) /\\ Q(y)")));
}

TEST_CASE("alpha equivalence of formulas and terms") {
  CHECK(alpha_eq(F("forall x. exists y. P(x) -> Q(y)"), F("forall u. exists v. P(u) -> Q(v)")));
  CHECK_FALSE(alpha_eq(F("forall x. P(x)"), F("forall x. P(y)")));
  CHECK(alpha_eq(P("fun a => fun b => a"), P("fun u => fun v => u")));
  CHECK_FALSE(alpha_eq(P("fun a => fun b => a"), P("fun a => fun b => b")));
  CHECK(alpha_eq(P("dest e as [x, h] in [x, h]"), P("dest e as [y, g] in [y, g]")));
}

TEST_CASE("free variables of terms") {
  auto p = P("fun a => b (a @ x) (gen y => c @ y)");
  CHECK(free_hyp_vars(*p) == NameSet{"b", "c"});
  CHECK(free_ind_vars(*p) == NameSet{"x"});
}

TEST_CASE("hypothesis substitution is capture avoiding") {
  auto p = P("fun a => b a");
  auto q = subst_hyp(p, "b", hyp("a"));
  CHECK(free_hyp_vars(*q) == NameSet{"a"});
  CHECK(alpha_eq(q, P("fun z => a z")));
}

TEST_CASE("individual substitution into terms") {
  auto p = P("gen y => h @ x");
  auto q = subst_ind(p, "x", Individual::var("y"));
  CHECK(free_ind_vars(*q) == NameSet{"y"});
  CHECK(alpha_eq(q, P("gen z => h @ y")));
}

TEST_CASE("values") {
  CHECK(is_value(*P("a")));
  CHECK(is_value(*P("fun a => shift k => a")));
  CHECK(is_value(*P("(inl a, [x, b])")));
  CHECK(is_value(*P("gen x => h @ x")));
  CHECK_FALSE(is_value(*P("f a")));
  CHECK_FALSE(is_value(*P("# a")));
  CHECK_FALSE(is_value(*P("fst (a, b)")));
  CHECK_FALSE(is_value(*P("inl (f a)")));
}

TEST_CASE("control detection and size") {
  CHECK(contains_control(*P("fun a => # a")));
  CHECK(contains_control(*P("(a, shift k => k b)")));
  CHECK_FALSE(contains_control(*P("fun a => a b")));
  CHECK(term_size(*P("fun a => a")) == 2);
}

TEST_CASE("fresh names avoid the given set") {
  NameSet avoid{"a", "a'"};
  CHECK(pick_name("b", avoid) == "b");
  auto n = pick_name("a", avoid);
  CHECK(avoid.count(n) == 0);
  auto m = fresh_name("a", avoid);
  CHECK(avoid.count(m) == 0);
  CHECK(m != fresh_name("a", avoid));
}

TEST_CASE("contexts") {
  HypContext ctx;
  ctx.push("a", F("P(x)"));
  auto ext = ctx.extended("b", F("Q(y)"));
  CHECK(ctx.size() == 1);
  CHECK(ext.size() == 2);
  CHECK(ext.free_ind_vars() == NameSet{"x", "y"});
  CHECK(ext.names() == NameSet{"a", "b"});
}
