#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mqc/checker.hpp"
#include "mqc/parser.hpp"
#include "mqc/proofs.hpp"
#include "mqc/reducer.hpp"
#include "mqc/translator.hpp"

namespace py = pybind11;
using namespace mqc;

namespace {

Signature signature_of(const std::string& decls) { return decls.empty() ? Signature{} : parse_file(decls).signature; }

const Signature* sig_ptr(const std::string& decls, Signature& storage) {
  if (decls.empty()) return nullptr;
  storage = signature_of(decls);
  return &storage;
}

CheckMode::Kind mode_of(const std::string& m) {
  if (m == "mqcplus") return CheckMode::Kind::MqcPlus;
  if (m == "mqc") return CheckMode::Kind::MqcOnly;
  throw py::value_error("mode must be 'mqcplus' or 'mqc'");
}

py::dict report_dict(const TheoremReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["ok"] = r.ok;
  d["error_kind"] = r.error_kind ? py::object(py::str(to_string(*r.error_kind))) : py::none();
  d["error"] = r.error;
  d["line"] = r.location.line;
  d["column"] = r.location.column;
  return d;
}

py::dict check_proof(const std::string& goal, const std::string& proof, const std::map<std::string, std::string>& hyps,
                     const std::optional<std::string>& annotation, const std::optional<std::string>& T,
                     const std::string& mode, const std::string& sig) {
  Signature storage;
  const Signature* s = sig_ptr(sig, storage);
  HypContext ctx;
  for (const auto& [name, f] : hyps) ctx.push(name, parse_formula(f, s));
  Annotation ann;
  if (annotation) ann = parse_formula(*annotation, s);
  CheckMode m;
  m.kind = mode_of(mode);
  if (T) m.global_T = parse_formula(*T, s);
  py::dict d;
  try {
    auto j = check(m, ctx, ann, parse_proof(proof, s), parse_formula(goal, s));
    d["ok"] = true;
    d["error_kind"] = py::none();
    d["error"] = "";
    d["T"] = j.resolved_T ? py::object(py::str(print_formula(*j.resolved_T))) : py::none();
  } catch (const CheckError& e) {
    d["ok"] = false;
    d["error_kind"] = to_string(e.kind());
    d["error"] = e.what();
    d["T"] = py::none();
  }
  return d;
}

py::dict normalize_proof(const std::string& proof, std::uint64_t max_steps, bool trace) {
  auto tr = normalize(parse_proof(proof), max_steps, trace);
  py::dict d;
  d["value"] = print_proof(tr.value());
  d["steps"] = tr.steps();
  py::list entries;
  if (trace)
    for (const auto& e : tr.entries) entries.append(py::make_tuple(print_proof(e.term), e.rule));
  d["trace"] = entries;
  return d;
}

py::dict run_demo(const std::string& expr, std::uint64_t max_steps) {
  auto r = demo_eval(parse_demo(expr), max_steps);
  py::dict d;
  d["value"] = print_demo(r.value);
  py::list entries;
  for (const auto& e : r.trace) entries.append(py::make_tuple(print_demo(e.term), e.rule, e.note));
  d["trace"] = entries;
  return d;
}

std::string cps(const std::string& proof, const std::optional<std::string>& T, const std::string& sig) {
  Signature storage;
  const Signature* s = sig_ptr(sig, storage);
  TranslationEnv env;
  if (T) env.T = parse_formula(*T, s);
  return print_proof(cps_term(parse_proof(proof, s), env));
}

std::string translate(const std::string& f, const std::string& T, bool super) {
  auto F = parse_formula(f), TT = parse_formula(T);
  return print_formula(super ? translate_formula_super(F, TT) : translate_formula_sub(F, TT));
}

py::dict dns(const std::string& f, const std::string& T, const std::string& sig) {
  Signature storage;
  const Signature* s = sig_ptr(sig, storage);
  auto F = parse_formula(f, s), TT = parse_formula(T, s);
  auto axioms = collect_dns_axioms(F, TT);
  auto iso = dns_iso(F, TT, axioms);
  auto ctx = axioms.context();
  py::dict d;
  d["to"] = print_proof(iso.to);
  d["from"] = print_proof(iso.from);
  d["to_formula"] = print_formula(iso.to_formula);
  d["from_formula"] = print_formula(iso.from_formula);
  py::list ax;
  for (const auto& a : axioms.axioms) ax.append(py::make_tuple(a.name, print_formula(a.formula)));
  d["axioms"] = ax;
  d["to_checks"] = accepts(CheckMode::mqc_only(), ctx, std::nullopt, iso.to, iso.to_formula);
  d["from_checks"] = accepts(CheckMode::mqc_only(), ctx, std::nullopt, iso.from, iso.from_formula);
  return d;
}

}  // namespace

PYBIND11_MODULE(_mqc, m) {
  m.doc() = "Minimal predicate logic with shift and reset";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ReductionError>(m, "ReductionError", PyExc_RuntimeError);
  py::register_exception<TranslationError>(m, "TranslationError", PyExc_RuntimeError);
  py::register_exception<CheckError>(m, "CheckError", PyExc_RuntimeError);

  m.def(
      "parse_formula", [](const std::string& s, const std::string& sig) {
        Signature storage;
        return print_formula(parse_formula(s, sig_ptr(sig, storage)));
      },
      py::arg("text"), py::arg("sig") = "");
  m.def(
      "parse_proof", [](const std::string& s, const std::string& sig) {
        Signature storage;
        return print_proof(parse_proof(s, sig_ptr(sig, storage)));
      },
      py::arg("text"), py::arg("sig") = "");
  m.def("is_sigma", [](const std::string& f) { return is_sigma(*parse_formula(f)); }, py::arg("formula"));

  m.def("check", &check_proof, py::arg("goal"), py::arg("proof"), py::arg("hyps") = std::map<std::string, std::string>{},
        py::arg("annotation") = std::nullopt, py::arg("T") = std::nullopt, py::arg("mode") = "mqcplus",
        py::arg("sig") = "");
  m.def(
      "check_source", [](const std::string& text, const std::string& mode) {
        py::list out;
        for (const auto& r : check_file(parse_file(text), mode_of(mode))) out.append(report_dict(r));
        return out;
      },
      py::arg("text"), py::arg("mode") = "mqcplus");
  m.def(
      "check_file", [](const std::string& path, const std::string& mode) {
        py::list out;
        for (const auto& r : check_file(read_file(path), mode_of(mode))) out.append(report_dict(r));
        return out;
      },
      py::arg("path"), py::arg("mode") = "mqcplus");

  m.def("normalize", &normalize_proof, py::arg("proof"), py::arg("max_steps") = kDefaultMaxSteps,
        py::arg("trace") = false);
  m.def("demo", &run_demo, py::arg("expr"), py::arg("max_steps") = kDefaultMaxSteps);

  m.def("cps", &cps, py::arg("proof"), py::arg("T") = std::nullopt, py::arg("sig") = "");
  m.def(
      "translate_sub", [](const std::string& f, const std::string& T) { return translate(f, T, false); },
      py::arg("formula"), py::arg("T"));
  m.def(
      "translate_super", [](const std::string& f, const std::string& T) { return translate(f, T, true); },
      py::arg("formula"), py::arg("T"));
  m.def("dns_iso", &dns, py::arg("formula"), py::arg("T"), py::arg("sig") = "");

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite_json",
      [](const std::string& name, std::size_t cases, std::uint64_t seed) {
        py::gil_scoped_release release;
        return run_suite(name, cases, seed).to_json();
      },
      py::arg("name"), py::arg("cases") = 100, py::arg("seed") = 42);
}
