// One PASS/FAIL line per acceptance criterion, with timings.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "mqc/checker.hpp"
#include "mqc/parser.hpp"
#include "mqc/proofs.hpp"
#include "mqc/reducer.hpp"
#include "mqc/translator.hpp"

using namespace mqc;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.pass && secs >= limit_seconds) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(limit_seconds) + " s limit)";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << n << " " << title << " [" << std::fixed << std::setprecision(3)
            << secs << " s] " << o.detail << "\n"
            << std::flush;
}

Outcome from_reports(std::initializer_list<Report> reports) {
  Outcome o{true, ""};
  for (const auto& r : reports) {
    o.pass &= r.ok();
    o.detail += r.suite + " " + std::to_string(r.passed) + "/" + std::to_string(r.cases) + "; ";
    if (!r.failures.empty()) o.detail += "first failure: " + r.failures.front().message + "; ";
  }
  return o;
}

Outcome check_theorem(const std::string& file, const std::string& thm, const std::string& statement) {
  auto src = read_file(std::string(MQC_CORPUS_DIR) + "/" + file);
  const auto* t = src.find(thm);
  if (!t) return {false, thm + " missing from " + file};
  if (!alpha_eq(t->statement, parse_formula(statement, &src.signature)))
    return {false, thm + " has an unexpected statement"};
  for (const auto& r : check_file(src))
    if (r.name == thm) return {r.ok, thm + (r.ok ? ": OK" : ": " + r.error)};
  return {false, thm + " not checked"};
}

}  // namespace

int main() {
  criterion(1, "demo escape", 1.0, [] {
    auto r = demo_eval(parse_demo("1 + #(2 + shift k => 4)"));
    auto v = print_demo(r.value);
    std::string note = r.trace.size() > 1 ? r.trace[1].note : "";
    return Outcome{v == "5" && note == "4{(fun a => #(2 + a))/k}", "value " + v + ", step 1 " + note};
  });

  criterion(2, "demo twice", 1.0, [] {
    auto v = print_demo(demo_eval(parse_demo("1 + #(2 + shift k => k 4 + k 8)")).value);
    return Outcome{v == "17", "value " + v};
  });

  criterion(3, "corpus MP and DNS", 1e9, [] {
    auto mp = check_theorem("mp.mqc", "mp", "(T -> S) -> ((S -> T) -> T) -> S");
    auto dns = check_theorem("dns.mqc", "dns",
                             "(forall x. ((P(x) -> Q(x)) -> T) -> T) -> ((forall x. P(x) -> Q(x)) -> T) -> T");
    return Outcome{mp.pass && dns.pass, mp.detail + "; " + dns.detail};
  });

  criterion(4, "subject reduction", 60.0, [] {
    auto r = run_suite("subject-reduction", 500, kSeed);
    auto o = from_reports({r});
    for (const auto& [k, v] : r.stats)
      if (k == "annotated_capture_rate" || k == "captures") {
        std::ostringstream s;
        s << k << "=" << v << "; ";
        o.detail += s.str();
      }
    return o;
  });

  criterion(5, "progress and normalization", 1e9,
            [] { return from_reports({run_suite("progress", 500, kSeed), run_suite("normalization", 500, kSeed)}); });

  criterion(6, "weakening, strengthening, substitution", 1e9, [] {
    return from_reports({run_suite("weakening", 200, kSeed), run_suite("strengthening", 200, kSeed),
                         run_suite("substitution", 200, kSeed)});
  });

  criterion(7, "cps type correctness", 1e9, [] {
    Outcome o{true, ""};
    struct Entry {
      const char* file;
      const char* thm;
    };
    for (auto [file, thm] : {Entry{"mp.mqc", "mp"}, Entry{"dns.mqc", "dns"}}) {
      auto src = read_file(std::string(MQC_CORPUS_DIR) + "/" + file);
      auto T = resolve_global_T(src);
      const auto* t = src.find(thm);
      if (!T || !t) return Outcome{false, std::string(thm) + ": no theorem or no T"};
      auto msg = cps_violation(src.hypotheses, *T, t->proof, t->statement);
      if (msg) return Outcome{false, std::string(thm) + ": " + *msg};
      o.detail += std::string(thm) + " OK; ";
    }
    auto r = from_reports({run_suite("cps-type-correctness", 200, kSeed)});
    return Outcome{r.pass, o.detail + r.detail};
  });

  criterion(8, "dns iso exhaustive", 120.0, [] {
    auto formulas = enumerate_formulas(3);
    std::size_t checked = 0, atoms = 0;
    for (const char* t : {"R", "P(x)", "exists y. Q(y) \\/ P(x)"}) {
      auto T = parse_formula(t);
      for (const auto& f : formulas) {
        if (auto msg = dns_iso_violation(f, T))
          return Outcome{false, print_formula(f) + " with T = " + t + ": " + *msg};
        ++checked;
        if (f->kind == Formula::Kind::Atom) ++atoms;
      }
    }
    return Outcome{true, std::to_string(formulas.size()) + " formulas, " + std::to_string(checked) +
                             " instances, " + std::to_string(atoms) + " atomic identities"};
  });

  criterion(9, "extraction", 1e9, [] {
    auto r = run_suite("extraction", 200, kSeed);
    auto o = from_reports({r});
    for (const auto& [k, v] : r.stats)
      if (k == "or" || k == "exists") o.detail += k + "=" + std::to_string(static_cast<long>(v)) + "; ";
    return o;
  });

  criterion(10, "sigma fixpoint", 1e9, [] { return from_reports({run_suite("sigma-fixpoint", 1000, kSeed)}); });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
