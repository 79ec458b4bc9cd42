#pragma once

// Type checking for MQC+ proof terms: the judgment  ctx |-_ann p : A.
//
// Proof terms carry no type annotations, so checking runs in two phases.
// Elaboration walks the term against the goal with formula metavariables and
// unification, recording the formula assigned to every sub-term. The kernel
// then re-checks that derivation rule by rule on fully concrete formulas and
// enforces every side condition: Sigma goals for reset, the single global
// annotation formula, and eigenvariable freshness. A judgment is only
// returned once the kernel has accepted it.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqc/core.hpp"
#include "mqc/parser.hpp"

namespace mqc {

enum class CheckErrorKind {
  RuleMismatch,
  UnboundHypothesis,
  SigmaViolation,
  ShiftOutsideDelimiter,
  GlobalTConflict,
  FreshnessViolation,
  ControlInMqc,
};

const char* to_string(CheckErrorKind kind);

class CheckError : public std::runtime_error {
 public:
  CheckError(CheckErrorKind kind, std::string rule, TermRef subterm, const std::string& message);

  CheckErrorKind kind() const { return kind_; }
  /// Name of the typing rule that was being applied.
  const std::string& rule() const { return rule_; }
  /// The sub-term at which checking failed (may be null).
  const TermRef& subterm() const { return subterm_; }

 private:
  CheckErrorKind kind_;
  std::string rule_;
  TermRef subterm_;
};

struct CheckMode {
  enum class Kind { MqcPlus, MqcOnly };

  Kind kind = Kind::MqcPlus;
  /// MqcPlus only: a fixed global annotation formula.
  std::optional<FormulaRef> global_T;

  static CheckMode mqc_plus(std::optional<FormulaRef> global_T = std::nullopt) {
    return {Kind::MqcPlus, std::move(global_T)};
  }
  static CheckMode mqc_only() { return {Kind::MqcOnly, std::nullopt}; }
};

struct Judgment {
  HypContext context;
  Annotation annotation;
  TermRef term;
  FormulaRef formula;
  /// The global annotation formula, when any reset or annotation fixed it.
  std::optional<FormulaRef> resolved_T;
};

/// Checks ctx |-_ann p : goal. Throws CheckError on failure.
Judgment check(const CheckMode& mode, const HypContext& ctx, const Annotation& ann, const TermRef& p,
               const FormulaRef& goal);

/// Non-throwing variant.
bool accepts(const CheckMode& mode, const HypContext& ctx, const Annotation& ann, const TermRef& p,
             const FormulaRef& goal);

/// Finds some formula A with ctx |-_ann p : A. Parts of A left unconstrained by
/// p are filled with an arbitrary closed atom.
std::optional<FormulaRef> infer(const CheckMode& mode, const HypContext& ctx, const Annotation& ann,
                                const TermRef& p);

/// Checks the judgment and returns the formula its derivation assigns to the
/// sub-term `node` (compared by identity), if `node` occurs in p.
std::optional<FormulaRef> formula_of_subterm(const CheckMode& mode, const HypContext& ctx, const Annotation& ann,
                                             const TermRef& p, const FormulaRef& goal, const Term* node);

/// The annotation formula of a file: the declared one, otherwise the goal of
/// the first reset encountered across its theorems. Throws GlobalTConflict if
/// two theorems reset at different formulas.
std::optional<FormulaRef> resolve_global_T(const SourceFile& file);

/// Re-checks an unannotated judgment under annotation T.
Judgment check_weakening_instance(const Judgment& j, const FormulaRef& T);

/// Verdict for one theorem of a file.
struct TheoremReport {
  std::string name;
  bool ok = false;
  std::optional<CheckErrorKind> error_kind;
  std::string error;
  SourceLocation location;
  std::optional<Judgment> judgment;
};

/// Checks every theorem of a file in order, threading the global annotation
/// formula from theorem to theorem.
std::vector<TheoremReport> check_file(const SourceFile& file, CheckMode::Kind mode = CheckMode::Kind::MqcPlus);

}  // namespace mqc
