// mqc: check, reduce and translate MQC+ proof files.
//
// Exit status: 0 on success, 1 when a check, reduction or suite fails (parse
// errors included), 2 on usage errors and unreadable input files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mqc/checker.hpp"
#include "mqc/parser.hpp"
#include "mqc/proofs.hpp"
#include "mqc/reducer.hpp"
#include "mqc/translator.hpp"

namespace {

using namespace mqc;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string file;
  std::string mode = "mqcplus";
  bool json = false;
  bool trace = false;
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::size_t width = 0;
  std::string thm;
  std::string output;
  std::string formula;
  std::string T;
  std::string sig;
  std::string expr;
  std::string suite;
  std::size_t cases = 100;
  std::uint64_t seed = 42;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string where(const SourceLocation& l) { return std::to_string(l.line) + ":" + std::to_string(l.column); }

// Shortens long terms in traces; 0 keeps them whole.
std::string elide(const std::string& s, std::size_t width) {
  if (width == 0 || s.size() <= width) return s;
  std::size_t half = width > 5 ? (width - 5) / 2 : 1;
  return s.substr(0, half) + " ... " + s.substr(s.size() - half);
}

SourceFile load(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("cannot read '" + path + "'");
  return read_file(path);
}

std::vector<const Theorem*> selected(const SourceFile& f, const std::string& thm) {
  std::vector<const Theorem*> out;
  if (!thm.empty()) {
    const Theorem* t = f.find(thm);
    if (!t) throw UsageError("no theorem named '" + thm + "'");
    out.push_back(t);
  } else {
    for (const auto& t : f.theorems) out.push_back(&t);
  }
  return out;
}

int cmd_check(const Options& o) {
  auto file = load(o.file);
  auto kind = o.mode == "mqc" ? CheckMode::Kind::MqcOnly : CheckMode::Kind::MqcPlus;
  int rc = kOk;
  for (const auto& r : check_file(file, kind)) {
    if (!r.ok) rc = kFailed;
    if (o.json) {
      nlohmann::json j{{"name", r.name},
                       {"verdict", r.ok ? "OK" : "FAIL"},
                       {"error", r.ok ? nlohmann::json(nullptr) : nlohmann::json(r.error)},
                       {"location", {{"line", r.location.line}, {"column", r.location.column}}}};
      std::cout << j.dump() << "\n";
    } else if (r.ok) {
      std::cout << r.name << ": OK\n";
    } else {
      std::cout << r.name << ": FAIL at " << where(r.location) << ": " << r.error << "\n";
    }
  }
  return rc;
}

// Checks one theorem, reporting to stderr.
bool checked(const SourceFile& file, const Theorem& t) {
  auto T = file.annotation;
  try {
    if (!T) T = resolve_global_T(file);
    check(CheckMode::mqc_plus(T), file.hypotheses, std::nullopt, t.proof, t.statement);
    return true;
  } catch (const CheckError& e) {
    std::cerr << t.name << ": FAIL at " << where(t.location) << ": " << e.what() << "\n";
    return false;
  }
}

int cmd_normalize(const Options& o) {
  auto file = load(o.file);
  int rc = kOk;
  for (const Theorem* t : selected(file, o.thm)) {
    if (!checked(file, *t)) {
      rc = kFailed;
      continue;
    }
    try {
      auto tr = normalize(t->proof, o.max_steps, o.trace);
      if (o.trace) {
        std::cout << t->name << ":\n";
        for (std::size_t i = 0; i < tr.entries.size(); ++i) {
          const auto& e = tr.entries[i];
          std::cout << i << ": " << elide(print_proof(e.term), o.width);
          if (!e.rule.empty()) std::cout << "  [" << e.rule << "]";
          std::cout << "\n";
          if (e.continuation) std::cout << "   " << e.k << " := " << elide(print_proof(e.continuation), o.width) << "\n";
        }
      } else {
        std::cout << t->name << ": " << print_proof(tr.value()) << "\n";
      }
    } catch (const ReductionError& e) {
      std::cerr << t->name << ": " << e.what() << "\n";
      rc = kFailed;
    }
  }
  return rc;
}

int cmd_cps(const Options& o) {
  auto file = load(o.file);
  std::optional<FormulaRef> T = file.annotation;
  try {
    if (!o.T.empty()) T = parse_formula(o.T, &file.signature);
    if (!T) T = resolve_global_T(file);
  } catch (const CheckError& e) {
    std::cerr << e.what() << "\n";
    return kFailed;
  }
  if (!T) {
    std::cerr << "UnresolvedT: the file fixes no global formula; pass --T\n";
    return kFailed;
  }
  SourceFile out;
  out.signature = file.signature;
  out.hypotheses = translate_context(file.hypotheses, *T);
  int rc = kOk;
  for (const Theorem* t : selected(file, o.thm)) {
    if (!checked(file, *t)) {
      rc = kFailed;
      continue;
    }
    try {
      Theorem tt;
      tt.name = t->name;
      tt.statement = translate_formula_super(t->statement, *T);
      tt.proof = cps_term(t->proof, TranslationEnv{T});
      out.theorems.push_back(std::move(tt));
    } catch (const TranslationError& e) {
      std::cerr << t->name << ": " << e.what() << "\n";
      rc = kFailed;
    }
  }
  auto text = print_file(out);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output);
    if (!f) throw UsageError("cannot write '" + o.output + "'");
    f << text;
  }
  return rc;
}

void declare(const Individual& t, Signature& sig) {
  if (t.is_var()) return;
  sig.functions[t.name] = static_cast<int>(t.args.size());
  for (const auto& a : t.args) declare(a, sig);
}

void declare(const Formula& f, Signature& sig) {
  if (f.kind == Formula::Kind::Atom) {
    sig.predicates[f.name] = static_cast<int>(f.args.size());
    for (const auto& a : f.args) declare(a, sig);
    return;
  }
  declare(*f.lhs, sig);
  if (f.rhs) declare(*f.rhs, sig);
}

int cmd_dns_iso(const Options& o) {
  Signature sig;
  FormulaRef f, T;
  try {
    if (!o.sig.empty()) sig = parse_file(o.sig).signature;
    const Signature* s = o.sig.empty() ? nullptr : &sig;
    f = parse_formula(o.formula, s);
    T = parse_formula(o.T, s);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kFailed;
  }
  if (!is_sigma(*T)) {
    std::cerr << "SigmaViolation: " << print_formula(T) << " is not a Sigma formula\n";
    return kFailed;
  }
  declare(*f, sig);
  declare(*T, sig);
  auto axioms = collect_dns_axioms(f, T);
  auto iso = dns_iso(f, T, axioms);
  SourceFile out;
  out.signature = sig;
  out.hypotheses = axioms.context();
  out.theorems.push_back({"to", iso.to_formula, iso.to, {}});
  out.theorems.push_back({"from", iso.from_formula, iso.from, {}});
  std::cout << print_file(out);
  int rc = kOk;
  for (const auto& r : check_file(out, CheckMode::Kind::MqcOnly)) {
    std::cout << "% " << r.name << ": " << (r.ok ? "OK" : "FAIL " + r.error) << "\n";
    if (!r.ok) rc = kFailed;
  }
  return rc;
}

int cmd_extract(const Options& o) {
  auto file = load(o.file);
  int rc = kOk;
  for (const Theorem* t : selected(file, o.thm)) {
    if (!checked(file, *t)) {
      rc = kFailed;
      continue;
    }
    try {
      auto w = extract(t->proof, t->statement, file.hypotheses, o.max_steps);
      std::cout << t->name << ": ";
      switch (w.kind) {
        case Witness::Kind::Left: std::cout << "left"; break;
        case Witness::Kind::Right: std::cout << "right"; break;
        case Witness::Kind::Individual: std::cout << "witness " << print_individual(w.individual); break;
      }
      std::cout << " " << print_proof(w.value) << " : " << print_formula(w.formula) << "\n";
    } catch (const ReductionError& e) {
      std::cerr << t->name << ": " << e.what() << "\n";
      rc = kFailed;
    }
  }
  return rc;
}

int cmd_demo(const Options& o) {
  try {
    auto r = demo_eval(parse_demo(o.expr), o.max_steps);
    if (o.trace) {
      for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& e = r.trace[i];
        std::cout << i << ": " << elide(print_demo(e.term), o.width);
        if (!e.rule.empty()) std::cout << "  [" << e.rule << "]";
        if (!e.note.empty()) std::cout << "  " << e.note;
        std::cout << "\n";
      }
    }
    std::cout << print_demo(r.value) << "\n";
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
  } catch (const ReductionError& e) {
    std::cerr << e.what() << "\n";
  }
  return kFailed;
}

int cmd_suite(const Options& o) {
  Report r;
  try {
    r = run_suite(o.suite, o.cases, o.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << r.to_json() << "\n";
  return r.ok() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof checker, reducer and translator for MQC+ proof terms"};
  app.require_subcommand(1, 1);
  Options o;

  auto file_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "Input .mqc file")->required();
    return c;
  };

  auto* check = file_cmd("check", "Check every theorem of a file");
  check->add_option("--mode", o.mode, "Logic")->check(CLI::IsMember({"mqcplus", "mqc"}));
  check->add_flag("--json", o.json, "One JSON object per theorem");

  auto* norm = file_cmd("normalize", "Reduce proofs to values");
  norm->add_option("--thm", o.thm, "Theorem name");
  norm->add_flag("--trace", o.trace, "Print every step");
  norm->add_option("--max-steps", o.max_steps, "Step limit");
  norm->add_option("--width", o.width, "Elide trace terms longer than this (0 = never)");

  auto* cps = file_cmd("cps", "Translate proofs into minimal logic");
  cps->add_option("--thm", o.thm, "Theorem name");
  cps->add_option("-o", o.output, "Output file");
  cps->add_option("--T", o.T, "Global Sigma formula, when the file fixes none");

  auto* dns = app.add_subcommand("dns-iso", "Print the double-negation-shift isomorphism for a formula");
  dns->add_option("--formula", o.formula, "Formula")->required();
  dns->add_option("--T", o.T, "Sigma formula")->required();
  dns->add_option("--sig", o.sig, "Declarations, e.g. \"pred P/1. fn c/0.\"; without it every identifier argument is a variable");

  auto* ext = file_cmd("extract", "Read the disjunct or witness off a normalized proof");
  ext->add_option("--thm", o.thm, "Theorem name");
  ext->add_option("--max-steps", o.max_steps, "Step limit");

  auto* demo = app.add_subcommand("demo", "Evaluate an arithmetic shift/reset expression");
  demo->add_option("expr", o.expr, "Expression")->required();
  demo->add_flag("--trace", o.trace, "Print every step");
  demo->add_option("--max-steps", o.max_steps, "Step limit");
  demo->add_option("--width", o.width, "Elide trace terms longer than this (0 = never)");

  auto* suite = app.add_subcommand("suite", "Run a property suite and print a JSON report");
  suite->add_option("name", o.suite, "Suite name")->required();
  suite->add_option("--cases", o.cases, "Number of cases");
  suite->add_option("--seed", o.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*norm) return cmd_normalize(o);
    if (*cps) return cmd_cps(o);
    if (*dns) return cmd_dns_iso(o);
    if (*ext) return cmd_extract(o);
    if (*demo) return cmd_demo(o);
    if (*suite) return cmd_suite(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << o.file << ":" << where(e.location()) << ": " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
