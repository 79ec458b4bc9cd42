#include "checker/internal.hpp"

namespace mqc {

const char* to_string(CheckErrorKind kind) {
  switch (kind) {
    case CheckErrorKind::RuleMismatch: return "RuleMismatch";
    case CheckErrorKind::UnboundHypothesis: return "UnboundHypothesis";
    case CheckErrorKind::SigmaViolation: return "SigmaViolation";
    case CheckErrorKind::ShiftOutsideDelimiter: return "ShiftOutsideDelimiter";
    case CheckErrorKind::GlobalTConflict: return "GlobalTConflict";
    case CheckErrorKind::FreshnessViolation: return "FreshnessViolation";
    case CheckErrorKind::ControlInMqc: return "ControlInMqc";
  }
  return "?";
}

CheckError::CheckError(CheckErrorKind kind, std::string rule, TermRef subterm, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      rule_(std::move(rule)),
      subterm_(std::move(subterm)) {}

Judgment check(const CheckMode& mode, const HypContext& ctx, const Annotation& ann, const TermRef& p,
               const FormulaRef& goal) {
  auto r = detail::elaborate(mode, ctx, ann, p, goal);
  detail::KernelEnv env{mode.kind, r.resolved_T ? *r.resolved_T : nullptr};
  detail::kernel_check(env, ctx, ann.has_value(), r.derivation);
  return Judgment{ctx, ann, p, goal, r.resolved_T};
}

bool accepts(const CheckMode& mode, const HypContext& ctx, const Annotation& ann, const TermRef& p,
             const FormulaRef& goal) {
  try {
    check(mode, ctx, ann, p, goal);
    return true;
  } catch (const CheckError&) {
    return false;
  }
}

std::optional<FormulaRef> infer(const CheckMode& mode, const HypContext& ctx, const Annotation& ann,
                                const TermRef& p) {
  try {
    auto r = detail::elaborate(mode, ctx, ann, p, nullptr);
    detail::KernelEnv env{mode.kind, r.resolved_T ? *r.resolved_T : nullptr};
    detail::kernel_check(env, ctx, ann.has_value(), r.derivation);
    return r.formula;
  } catch (const CheckError&) {
    return std::nullopt;
  }
}

namespace {

const detail::Derivation* find_node(const detail::Derivation& d, const Term* node) {
  if (d.term.get() == node) return &d;
  for (const auto& k : d.kids)
    if (auto r = find_node(k, node)) return r;
  return nullptr;
}

}  // namespace

std::optional<FormulaRef> formula_of_subterm(const CheckMode& mode, const HypContext& ctx, const Annotation& ann,
                                             const TermRef& p, const FormulaRef& goal, const Term* node) {
  auto r = detail::elaborate(mode, ctx, ann, p, goal);
  detail::KernelEnv env{mode.kind, r.resolved_T ? *r.resolved_T : nullptr};
  detail::kernel_check(env, ctx, ann.has_value(), r.derivation);
  if (auto d = find_node(r.derivation, node)) return d->goal;
  return std::nullopt;
}

std::vector<TheoremReport> check_file(const SourceFile& file, CheckMode::Kind mode) {
  std::vector<TheoremReport> out;
  std::optional<FormulaRef> T;
  if (mode == CheckMode::Kind::MqcPlus) T = file.annotation;
  for (const auto& thm : file.theorems) {
    TheoremReport rep;
    rep.name = thm.name;
    rep.location = thm.location;
    try {
      CheckMode m{mode, T};
      if (mode == CheckMode::Kind::MqcOnly && file.annotation)
        detail::fail(CheckErrorKind::ControlInMqc, "annotation", thm.proof,
                     "minimal logic files carry no annotation declaration");
      auto j = check(m, file.hypotheses, std::nullopt, thm.proof, thm.statement);
      if (!T && j.resolved_T) T = j.resolved_T;
      rep.ok = true;
      rep.judgment = std::move(j);
    } catch (const CheckError& e) {
      rep.error_kind = e.kind();
      rep.error = e.what();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::optional<FormulaRef> resolve_global_T(const SourceFile& file) {
  if (file.annotation) return file.annotation;
  std::optional<FormulaRef> T;
  for (const auto& rep : check_file(file)) {
    if (rep.error_kind == CheckErrorKind::GlobalTConflict)
      throw CheckError(CheckErrorKind::GlobalTConflict, "Reset", file.find(rep.name)->proof, rep.error);
    if (rep.ok && rep.judgment->resolved_T && !T) T = rep.judgment->resolved_T;
  }
  return T;
}

Judgment check_weakening_instance(const Judgment& j, const FormulaRef& T) {
  if (j.resolved_T && !alpha_eq(*j.resolved_T, T))
    throw CheckError(CheckErrorKind::GlobalTConflict, "annotation", j.term,
                     "the term already fixed a different global formula");
  return check(CheckMode::mqc_plus(T), j.context, T, j.term, j.formula);
}

}  // namespace mqc
