#pragma once

// Call-by-value small-step reduction for MQC+ proof terms, and the untyped
// arithmetic evaluator used for the shift/reset demos.
//
// step() walks down the evaluation context to the next redex. A shift found
// before any reset is crossed bubbles upward as a Capture carrying the pure
// context it passed through; the nearest enclosing reset turns it into
//   <P[Sk.p]>  ->  <p{(fun a => <P[a]>)/k}>.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqc/core.hpp"

namespace mqc {

enum class ReductionErrorKind { Stuck, StepLimitExceeded, TopLevelCapture, ShapeViolation };

const char* to_string(ReductionErrorKind kind);

class ReductionError : public std::runtime_error {
 public:
  ReductionError(ReductionErrorKind kind, const std::string& message, TermRef at = nullptr);
  ReductionErrorKind kind() const { return kind_; }
  const TermRef& term() const { return term_; }

 private:
  ReductionErrorKind kind_;
  TermRef term_;
};

/// One frame of a pure evaluation context: `node` with its child `slot`
/// (0 = p, 1 = q) standing for the hole.
struct ContextFrame {
  TermRef node;
  int slot = 0;
};

/// A pure evaluation context, innermost frame first.
struct PureContext {
  std::vector<ContextFrame> frames;

  TermRef plug(const TermRef& hole) const;
  /// No reset frame lies on the path to the hole.
  bool is_pure() const;
  /// Free hypothesis variables of the context, excluding the hole.
  NameSet free_hyp_vars() const;
};

struct StepOutcome {
  enum class Kind { IsValue, Stepped, Capture };

  Kind kind = Kind::IsValue;
  /// IsValue: the input. Stepped: the reduct.
  TermRef term;
  /// Name of the rule that fired (Stepped only).
  std::string rule;
  /// Capture, and Stepped by the capture rule: the shift node, its
  /// continuation variable and body, and the pure context it escaped from.
  TermRef shift;
  std::string k;
  TermRef body;
  PureContext context;
  /// Stepped by the capture rule: the continuation term substituted for k.
  TermRef continuation;
};

/// One reduction step. Throws ReductionError(Stuck) when no rule applies.
StepOutcome step(const TermRef& p);

struct TraceEntry {
  TermRef term;
  /// Rule that produced this entry; empty for the initial term.
  std::string rule;
  /// Capture steps: the continuation variable and what replaced it.
  std::string k;
  TermRef continuation;
};

struct Trace {
  std::vector<TraceEntry> entries;
  std::size_t step_count = 0;
  std::size_t steps() const { return step_count; }
  const TermRef& value() const { return entries.back().term; }
};

constexpr std::uint64_t kDefaultMaxSteps = 1'000'000;

/// Steps until a value is reached. With `keep_trace` false only the first and
/// last terms are retained.
Trace normalize(const TermRef& p, std::uint64_t max_steps = kDefaultMaxSteps, bool keep_trace = true);

struct Witness {
  enum class Kind { Left, Right, Individual };

  Kind kind = Kind::Left;
  /// Exists goals: the witness individual.
  Individual individual;
  /// The payload value V' (or V for existentials).
  TermRef value;
  /// The formula the payload was re-checked at.
  FormulaRef formula;
  /// The normal form of the whole proof.
  TermRef normal_form;
  std::size_t steps = 0;
};

/// Normalizes a proof of a disjunction or existential and reads off the
/// disjunct or witness, re-checking the payload. `ctx` holds free axioms.
Witness extract(const TermRef& p, const FormulaRef& goal, const HypContext& ctx = {},
                std::uint64_t max_steps = kDefaultMaxSteps);

// ---------------------------------------------------------------------------
// Arithmetic demo language:  n | t + u | x | fun a => t | t u | # t | shift k => t

struct DemoTerm;
using DemoRef = std::shared_ptr<const DemoTerm>;

struct DemoTerm {
  enum class Kind { Nat, Add, Var, Lam, App, Reset, Shift };

  Kind kind = Kind::Nat;
  std::uint64_t n = 0;
  std::string var;
  DemoRef a, b;
};

DemoRef parse_demo(std::string_view text);
std::string print_demo(const DemoRef& t);

struct DemoTraceEntry {
  DemoRef term;
  std::string rule;
  /// Capture steps: `body{(fun a => #(P[a]))/k}` in concrete syntax.
  std::string note;
};

struct DemoResult {
  DemoRef value;
  std::vector<DemoTraceEntry> trace;
};

DemoResult demo_eval(const DemoRef& t, std::uint64_t max_steps = kDefaultMaxSteps);

}  // namespace mqc
