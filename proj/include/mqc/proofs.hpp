#pragma once

// Golden corpus loading, a random generator of well-typed proof terms, and
// property suites that exercise the metatheory (subject reduction, progress,
// normalization, weakening, strengthening, substitution, CPS typing, the DNS
// isomorphism, extraction, Sigma fixpoint).
//
// Random terms are closed except for a fixed context of atomic axioms
// (ax_p : P(c), ax_q : Q(d), ax_r : R). Minimal logic has no closed proof of
// an atomic formula, so without such constants no Sigma formula is provable
// and no reset could ever be reached by reduction. The reducer treats free
// hypotheses as values, so the axioms behave like constants.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqc/checker.hpp"
#include "mqc/core.hpp"
#include "mqc/parser.hpp"

namespace mqc {

class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Signature of generated terms: P/1, Q/1, R/0 over c, d and f/1.
const Signature& generator_signature();
/// The atomic axioms every generated term may use.
const HypContext& axiom_context();

struct GeneratedTerm {
  TermRef term;
  FormulaRef formula;
  HypContext context;
  Annotation annotation;
  /// The global formula used by resets and shifts in the term.
  FormulaRef T;
};

struct GeneratorOptions {
  /// Permit shift and reset.
  bool control = true;
  /// Relative weight of shift nodes when an annotation or reset is active.
  double shift_weight = 4.0;
  /// Relative weight of redex-building expansions.
  double expansion_weight = 2.0;
};

class TermGenerator {
 public:
  explicit TermGenerator(std::uint64_t seed, GeneratorOptions opts = {});

  /// Some well-typed term of size roughly `budget`. Always succeeds.
  GeneratedTerm any(int budget, const Annotation& ann, const FormulaRef& T,
                    const HypContext& ctx = axiom_context());
  /// A term for `goal`. Throws GenerationExhausted when none was found.
  GeneratedTerm for_goal(const FormulaRef& goal, int budget, const Annotation& ann, const FormulaRef& T,
                         const HypContext& ctx = axiom_context());
  /// A value of a Sigma goal built from the axioms, with shifts allowed only
  /// under binders (there are none in Sigma values, so this is control-free).
  GeneratedTerm sigma_value(int depth, const Annotation& ann, const FormulaRef& T);

  FormulaRef formula(int depth, const std::vector<std::string>& vars = {});
  FormulaRef sigma_formula(int depth, const std::vector<std::string>& vars = {});
  /// A Sigma formula that the axioms prove.
  FormulaRef provable_sigma(int depth);
  Individual individual(const std::vector<std::string>& vars = {});

  std::mt19937_64& rng() { return rng_; }

 private:
  struct State;
  std::mt19937_64 rng_;
  GeneratorOptions opts_;
};

/// Convenience wrapper: one term from a generator seeded with `seed`.
GeneratedTerm generate_well_typed(int budget, const Annotation& ann, const std::optional<FormulaRef>& goal,
                                  std::uint64_t seed, const FormulaRef& T = nullptr);

/// f with every free occurrence of t replaced by the variable y.
FormulaRef abstract_individual(const FormulaRef& f, const Individual& t, const std::string& y);

/// Per-case seed derived from a suite seed.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

/// Every formula with at most `max_connectives` connectives over the atoms
/// P(x), Q(x) using /\ \/ -> forall x and exists x.
std::vector<FormulaRef> enumerate_formulas(int max_connectives);

/// Greedy shrinking: repeatedly replaces sub-terms by their children (or a
/// sub-term of the same formula) while `still_fails` holds.
TermRef shrink(const TermRef& p, const std::function<bool(const TermRef&)>& still_fails, int max_rounds = 200);

struct SuiteFailure {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string message;
  std::string term;
  std::string shrunk;
  std::string formula;
};

struct Report {
  std::string suite;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::vector<SuiteFailure> failures;
  /// Suite-specific counters (captures, steps, ...).
  std::vector<std::pair<std::string, double>> stats;
  double seconds = 0;

  bool ok() const { return failures.empty() && passed == cases; }
  std::string to_json() const;
};

/// Translates p and checks the image in minimal logic at A^T under ctx_T.
/// Returns a message when that fails.
std::optional<std::string> cps_violation(const HypContext& ctx, const FormulaRef& T, const TermRef& p,
                                         const FormulaRef& A);
/// Builds both DNS-isomorphism directions for f and checks them in minimal
/// logic; atoms must yield identity terms. Returns a message on failure.
std::optional<std::string> dns_iso_violation(const FormulaRef& f, const FormulaRef& T);

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite.
Report run_suite(const std::string& name, std::size_t cases, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Corpus

struct CorpusEntry {
  std::string file;
  SourceFile source;
  CheckMode::Kind mode = CheckMode::Kind::MqcPlus;
};

/// Loads every `*.mqc` file in `dir`. Files whose name starts with `mqc_` are
/// checked in minimal-logic mode.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

/// The two terms of the shift/reset examples, in concrete syntax.
extern const char* const kMpTerm;
extern const char* const kDnsTerm;

}  // namespace mqc
