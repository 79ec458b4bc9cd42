#include "doctest.h"

#include "mqc/checker.hpp"
#include "mqc/parser.hpp"
#include "mqc/proofs.hpp"
#include "mqc/reducer.hpp"

using namespace mqc;

namespace {

FormulaRef F(const char* s) { return parse_formula(s); }

CheckMode mode_for(const GeneratedTerm& g) { return g.T ? CheckMode::mqc_plus(g.T) : CheckMode::mqc_plus(); }

}  // namespace

TEST_CASE("budget one identity") {
  auto g = generate_well_typed(1, std::nullopt, F("P(c) -> P(c)"), 7);
  CHECK(alpha_eq(g.term, parse_proof("fun a => a")));
}

TEST_CASE("goal directed generation under an annotation uses shift") {
  auto T = F("exists x. P(x)");
  bool saw_shift = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    TermGenerator gen(seed);
    GeneratedTerm g;
    try {
      g = gen.for_goal(F("Q(d) -> P(c)"), 8, Annotation(T), T);
    } catch (const GenerationExhausted&) {
      continue;
    }
    CHECK(accepts(mode_for(g), g.context, g.annotation, g.term, g.formula));
    saw_shift |= contains_control(*g.term);
  }
  CHECK(saw_shift);
}

TEST_CASE("generated terms are well typed") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    TermGenerator gen(seed);
    auto T = gen.provable_sigma(1);
    Annotation ann = seed % 2 ? Annotation(T) : std::nullopt;
    auto g = gen.any(12, ann, T);
    INFO(print_proof(g.term) << " : " << print_formula(g.formula));
    CHECK(accepts(mode_for(g), g.context, g.annotation, g.term, g.formula));
  }
}

TEST_CASE("unannotated closed terms normalize") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TermGenerator gen(seed);
    auto g = gen.any(14, std::nullopt, gen.provable_sigma(1));
    INFO(print_proof(g.term));
    CHECK_NOTHROW(normalize(g.term, kDefaultMaxSteps, false));
  }
}

TEST_CASE("generation is deterministic per seed") {
  auto a = generate_well_typed(10, std::nullopt, std::nullopt, 123);
  auto b = generate_well_typed(10, std::nullopt, std::nullopt, 123);
  CHECK(print_proof(a.term) == print_proof(b.term));
  CHECK(print_formula(a.formula) == print_formula(b.formula));
  CHECK(case_seed(5, 1) == case_seed(5, 1));
  CHECK(case_seed(5, 1) != case_seed(5, 2));
}

TEST_CASE("random sigma formulas") {
  TermGenerator gen(3);
  for (int i = 0; i < 100; ++i) {
    CHECK(is_sigma(*gen.sigma_formula(4, {"x"})));
    auto T = gen.provable_sigma(2);
    CHECK(is_sigma(*T));
    CHECK(free_ind_vars(*T).empty());
  }
}

TEST_CASE("sigma values prove their goal") {
  TermGenerator gen(11);
  for (int i = 0; i < 50; ++i) {
    auto T = gen.provable_sigma(1);
    auto v = gen.sigma_value(2, std::nullopt, T);
    CHECK(is_value(*v.term));
    CHECK_FALSE(contains_control(*v.term));
    CHECK(accepts(CheckMode::mqc_plus(), v.context, std::nullopt, v.term, v.formula));
  }
}

TEST_CASE("formula enumeration") {
  CHECK(enumerate_formulas(0).size() == 2);
  CHECK(enumerate_formulas(1).size() == 2 + 4 + 12);
  CHECK(enumerate_formulas(3).size() == 4146);
}

TEST_CASE("abstracting an individual") {
  auto f = abstract_individual(parse_formula("P(c) /\\ forall y. Q(c)", &generator_signature()), Individual::fn("c"), "x");
  CHECK(print_formula(f) == "P(x) /\\ (forall y. Q(x))");
}

TEST_CASE("shrinking reaches a minimal failing sub-term") {
  auto p = parse_proof("(fun a => (a, fst (b, c))) d");
  auto small = shrink(p, [](const TermRef& q) { return free_hyp_vars(*q).count("c") > 0; });
  CHECK(print_proof(small) == "c");
}

TEST_CASE("suites run and report") {
  for (const auto& name : suite_names()) {
    auto r = run_suite(name, 20, 9);
    INFO(name << ": " << r.to_json());
    CHECK(r.ok());
    CHECK(r.cases == 20);
  }
  CHECK_THROWS_AS(run_suite("nonsense", 1, 0), std::invalid_argument);
}

TEST_CASE("suite reports are deterministic") {
  auto a = run_suite("subject-reduction", 30, 4);
  auto b = run_suite("subject-reduction", 30, 4);
  CHECK(a.stats == b.stats);
}

TEST_CASE("corpus loading") {
  auto corpus = load_corpus(MQC_CORPUS_DIR);
  REQUIRE(corpus.size() >= 4);
  bool saw_mqc = false;
  for (const auto& e : corpus)
    if (e.file == "mqc_negneg.mqc") {
      saw_mqc = true;
      CHECK(e.mode == CheckMode::Kind::MqcOnly);
    }
  CHECK(saw_mqc);
}
