#pragma once

// Concrete syntax for formulas, proof terms and `.mqc` theorem files.
//
//   formula  ::= forall x. F | exists x. F | F -> F | F \/ F | F /\ F
//              | P(t, ..., t) | P | (F)
//   proof    ::= fun a => p | gen x => p | shift k => p
//              | case p of inl a => p | inr b => p
//              | dest p as [x, a] in p
//              | p p | p @ t | inl p | inr p | fst p | snd p | # p
//              | (p, p) | [t, p] | a | (p)
//
// `->` is right-associative and binds loosest, then `\/`, then `/\`.
// Quantifiers and the binding proof forms extend as far right as possible.
// Prefix operators (inl, inr, fst, snd, #) bind tighter than application.
//
// Individuals: `x`, `c`, `f(t, ...)`. An identifier names a constant when it
// is a declared arity-0 function symbol and is not shadowed by a binder;
// otherwise it is a variable. Argument lists must follow the symbol without
// whitespace so that `p @ x (q)` reads as an instantiation followed by an
// application.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mqc/core.hpp"

namespace mqc {

struct SourceLocation {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceLocation loc);
  SourceLocation location() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceLocation loc_;
  std::string detail_;
};

struct Theorem {
  std::string name;
  FormulaRef statement;
  TermRef proof;
  SourceLocation location;
};

struct SourceFile {
  Signature signature;
  /// `hyp a : F.` declarations, shared by every theorem in the file.
  HypContext hypotheses;
  /// `annot T := F.` declaration; the name is usable as a formula afterwards.
  std::optional<std::string> annotation_name;
  std::optional<FormulaRef> annotation;
  std::vector<Theorem> theorems;

  const Theorem* find(std::string_view name) const;
};

/// Parses a formula. Without a signature, every predicate and function symbol
/// is accepted at the arity it is used with.
FormulaRef parse_formula(std::string_view text, const Signature* sig = nullptr);
TermRef parse_proof(std::string_view text, const Signature* sig = nullptr);
SourceFile parse_file(std::string_view text);
SourceFile read_file(const std::string& path);

std::string print_individual(const Individual& t);
std::string print_formula(const FormulaRef& f);
std::string print_proof(const TermRef& p);
std::string print_context(const HypContext& ctx);
/// Serializes a file so that parse_file(print_file(f)) describes the same file.
std::string print_file(const SourceFile& f);

}  // namespace mqc
