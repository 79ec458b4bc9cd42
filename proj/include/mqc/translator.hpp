#pragma once

// Call-by-value double-negation translation of formulas (A_T, A^T), the CPS
// translation of MQC+ proof terms into control-free minimal logic, and the
// DNS-isomorphism terms relating ~~A and A^T.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqc/core.hpp"

namespace mqc {

/// A -> T.
FormulaRef not_T(const FormulaRef& f, const FormulaRef& T);

/// A_T: atoms fixed, /\ \/ homomorphic, (A -> B)_T = A_T -> B^T,
/// (exists x. A)_T = exists x. A_T, (forall x. A)_T = forall x. A^T.
/// Sigma-formulas are returned unchanged.
FormulaRef translate_formula_sub(const FormulaRef& f, const FormulaRef& T);
/// A^T = (A_T -> T) -> T.
FormulaRef translate_formula_super(const FormulaRef& f, const FormulaRef& T);
HypContext translate_context(const HypContext& ctx, const FormulaRef& T);

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TranslationEnv {
  /// The global annotation formula. Only needed when the term uses control.
  std::optional<FormulaRef> T;
};

/// The CPS image of p. Throws TranslationError (UnresolvedT) when p contains
/// shift or reset and env.T is empty.
TermRef cps_term(const TermRef& p, const TranslationEnv& env = {});

/// One hypothesis standing for an instance of DNS^forall_T or DNS^=>_T,
/// universally closed over its free individual variables.
struct DnsAxiom {
  enum class Kind { Forall, Imp };

  Kind kind = Kind::Forall;
  std::string name;
  /// The closed formula assumed for `name`.
  FormulaRef formula;
};

struct DnsAxiomHandles {
  std::vector<DnsAxiom> axioms;

  HypContext context() const;
};

/// The DNS instances that dns_iso(f, T) needs.
DnsAxiomHandles collect_dns_axioms(const FormulaRef& f, const FormulaRef& T);

struct DnsIso {
  /// Proof of ~~f -> f^T.
  TermRef to;
  /// Proof of f^T -> ~~f.
  TermRef from;
  FormulaRef to_formula;
  FormulaRef from_formula;
};

/// Builds both directions by recursion on f. Throws TranslationError if a
/// needed instance is missing from `axioms`.
DnsIso dns_iso(const FormulaRef& f, const FormulaRef& T, const DnsAxiomHandles& axioms);

}  // namespace mqc
