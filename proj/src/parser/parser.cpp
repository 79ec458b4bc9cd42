#include <algorithm>
#include <fstream>
#include <sstream>

#include "parser/lexer.hpp"

namespace mqc {

namespace {

using detail::Token;
using detail::TokenStream;

class Grammar {
 public:
  Grammar(TokenStream& ts, const Signature* sig) : ts_(ts), sig_(sig) {}

  void set_macro(std::string name, FormulaRef f) { macro_ = {std::move(name), std::move(f)}; }

  // -- formulas -------------------------------------------------------------

  FormulaRef formula() {
    if (auto q = quantified()) return q;
    auto lhs = disjunction();
    if (ts_.accept("->")) return imp(lhs, formula());
    return lhs;
  }

  // -- individuals ----------------------------------------------------------

  Individual individual() {
    const Token& tok = ts_.peek();
    auto name = ts_.expect_ident("an individual");
    std::vector<Individual> args;
    bool has_args = ts_.peek().is("(") && !ts_.peek().space_before;
    if (has_args) {
      ts_.next();
      if (!ts_.peek().is(")")) {
        do {
          args.push_back(individual());
        } while (ts_.accept(","));
      }
      ts_.expect(")");
    }
    if (is_bound(name)) {
      if (has_args) ts_.fail_at(tok, "bound variable '" + name + "' applied to arguments");
      return Individual::var(name);
    }
    if (sig_) {
      auto it = sig_->functions.find(name);
      if (it == sig_->functions.end()) {
        if (has_args) ts_.fail_at(tok, "undeclared function symbol '" + name + "'");
        return Individual::var(name);
      }
      if (static_cast<int>(args.size()) != it->second)
        ts_.fail_at(tok, "function symbol '" + name + "' expects " + std::to_string(it->second) +
                             " argument(s), got " + std::to_string(args.size()));
      return Individual::fn(name, std::move(args));
    }
    if (has_args) return Individual::fn(name, std::move(args));
    return Individual::var(name);
  }

  // -- proof terms ----------------------------------------------------------

  TermRef term() {
    if (ts_.accept_word("fun")) {
      auto a = ts_.expect_ident("a hypothesis variable");
      ts_.expect("=>");
      return lam(a, term());
    }
    if (ts_.accept_word("gen")) {
      auto x = ts_.expect_ident("a quantifier variable");
      ts_.expect("=>");
      BoundScope scope(*this, x);
      return gen(x, term());
    }
    if (ts_.accept_word("shift")) {
      auto k = ts_.expect_ident("a continuation variable");
      ts_.expect("=>");
      return shift(k, term());
    }
    if (ts_.accept_word("case")) {
      auto scrutinee = term();
      ts_.expect_word("of");
      ts_.expect_word("inl");
      auto a1 = ts_.expect_ident("a hypothesis variable");
      ts_.expect("=>");
      auto q1 = term();
      ts_.expect("|");
      ts_.expect_word("inr");
      auto a2 = ts_.expect_ident("a hypothesis variable");
      ts_.expect("=>");
      auto q2 = term();
      return case_of(scrutinee, a1, q1, a2, q2);
    }
    if (ts_.accept_word("dest")) {
      auto scrutinee = term();
      ts_.expect_word("as");
      ts_.expect("[");
      auto x = ts_.expect_ident("a quantifier variable");
      ts_.expect(",");
      auto a = ts_.expect_ident("a hypothesis variable");
      ts_.expect("]");
      ts_.expect_word("in");
      BoundScope scope(*this, x);
      return dest(scrutinee, x, a, term());
    }
    return application();
  }

 private:
  struct BoundScope {
    BoundScope(Grammar& g, std::string x) : g(g) { g.bound_.push_back(std::move(x)); }
    ~BoundScope() { g.bound_.pop_back(); }
    Grammar& g;
  };

  bool is_bound(const std::string& x) const {
    return std::find(bound_.begin(), bound_.end(), x) != bound_.end();
  }

  FormulaRef quantified() {
    Formula::Kind kind;
    if (ts_.accept_word("forall")) {
      kind = Formula::Kind::Forall;
    } else if (ts_.accept_word("exists")) {
      kind = Formula::Kind::Exists;
    } else {
      return nullptr;
    }
    auto x = ts_.expect_ident("a quantifier variable");
    ts_.expect(".");
    BoundScope scope(*this, x);
    return quantifier(kind, x, formula());
  }

  FormulaRef disjunction() {
    auto lhs = conjunction();
    while (ts_.accept("\\/")) lhs = disj(lhs, conjunction());
    return lhs;
  }

  FormulaRef conjunction() {
    auto lhs = primary();
    while (ts_.accept("/\\")) lhs = conj(lhs, primary());
    return lhs;
  }

  FormulaRef primary() {
    if (auto q = quantified()) return q;
    if (ts_.accept("(")) {
      auto f = formula();
      ts_.expect(")");
      return f;
    }
    const Token& tok = ts_.peek();
    if (tok.kind != Token::Kind::Ident || detail::is_keyword(tok.text)) ts_.fail("expected a formula");
    auto name = ts_.next().text;
    if (macro_ && name == macro_->first) return macro_->second;
    std::vector<Individual> args;
    if (ts_.accept("(")) {
      if (!ts_.peek().is(")")) {
        do {
          args.push_back(individual());
        } while (ts_.accept(","));
      }
      ts_.expect(")");
    }
    if (sig_) {
      auto it = sig_->predicates.find(name);
      if (it == sig_->predicates.end()) ts_.fail_at(tok, "undeclared predicate '" + name + "'");
      if (static_cast<int>(args.size()) != it->second)
        ts_.fail_at(tok, "predicate '" + name + "' expects " + std::to_string(it->second) +
                             " argument(s), got " + std::to_string(args.size()));
    }
    return atom(name, std::move(args));
  }

  bool starts_operand(const Token& t) const {
    if (t.kind == Token::Kind::Symbol) return t.text == "(" || t.text == "[" || t.text == "#";
    if (t.kind != Token::Kind::Ident) return false;
    if (t.text == "inl" || t.text == "inr" || t.text == "fst" || t.text == "snd") return true;
    return !detail::is_keyword(t.text);
  }

  TermRef application() {
    auto head = prefixed();
    for (;;) {
      if (ts_.accept("@")) {
        head = inst(head, individual());
      } else if (starts_operand(ts_.peek())) {
        head = app(head, prefixed());
      } else {
        return head;
      }
    }
  }

  TermRef prefixed() {
    if (ts_.accept_word("inl")) return inj1(prefixed());
    if (ts_.accept_word("inr")) return inj2(prefixed());
    if (ts_.accept_word("fst")) return proj1(prefixed());
    if (ts_.accept_word("snd")) return proj2(prefixed());
    if (ts_.accept("#")) return reset(prefixed());
    return atomic();
  }

  TermRef atomic() {
    if (ts_.accept("(")) {
      auto p = term();
      if (ts_.accept(",")) {
        auto q = term();
        ts_.expect(")");
        return pair(p, q);
      }
      ts_.expect(")");
      return p;
    }
    if (ts_.accept("[")) {
      auto t = individual();
      ts_.expect(",");
      auto p = term();
      ts_.expect("]");
      return ex_pair(t, p);
    }
    return hyp(ts_.expect_ident("a proof term"));
  }

  TokenStream& ts_;
  const Signature* sig_;
  std::vector<std::string> bound_;
  std::optional<std::pair<std::string, FormulaRef>> macro_;
};

int parse_arity(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind != Token::Kind::Number) ts.fail("expected an arity");
  return std::stoi(ts.next().text);
}

}  // namespace

FormulaRef parse_formula(std::string_view text, const Signature* sig) {
  TokenStream ts(detail::tokenize(text));
  Grammar g(ts, sig);
  auto f = g.formula();
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return f;
}

TermRef parse_proof(std::string_view text, const Signature* sig) {
  TokenStream ts(detail::tokenize(text));
  Grammar g(ts, sig);
  auto p = g.term();
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return p;
}

SourceFile parse_file(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  SourceFile file;
  Grammar g(ts, &file.signature);
  NameSet theorem_names;
  while (!ts.at_end()) {
    const Token& head = ts.peek();
    if (ts.accept_word("pred") || ts.accept_word("fn")) {
      bool is_pred = head.text == "pred";
      const Token& name_tok = ts.peek();
      auto name = ts.expect_ident("a symbol name");
      ts.expect("/");
      int arity = parse_arity(ts);
      ts.expect(".");
      auto& table = is_pred ? file.signature.predicates : file.signature.functions;
      if (file.signature.has_predicate(name) || file.signature.has_function(name) ||
          (file.annotation_name && *file.annotation_name == name))
        ts.fail_at(name_tok, "symbol '" + name + "' declared twice");
      table[name] = arity;
    } else if (ts.accept_word("annot")) {
      if (file.annotation) ts.fail_at(head, "at most one annotation declaration is allowed");
      const Token& name_tok = ts.peek();
      auto name = ts.expect_ident("an annotation name");
      if (file.signature.has_predicate(name)) ts.fail_at(name_tok, "annotation name '" + name + "' is a predicate");
      ts.expect(":=");
      auto f = g.formula();
      ts.expect(".");
      file.annotation_name = name;
      file.annotation = f;
      g.set_macro(name, f);
    } else if (ts.accept_word("hyp")) {
      auto name = ts.expect_ident("a hypothesis name");
      ts.expect(":");
      auto f = g.formula();
      ts.expect(".");
      file.hypotheses.push(name, f);
    } else if (ts.accept_word("thm")) {
      Theorem thm;
      thm.location = head.loc;
      const Token& name_tok = ts.peek();
      thm.name = ts.expect_ident("a theorem name");
      if (!theorem_names.insert(thm.name).second)
        ts.fail_at(name_tok, "theorem '" + thm.name + "' defined twice");
      ts.expect(":");
      thm.statement = g.formula();
      ts.expect(":=");
      thm.proof = g.term();
      ts.expect(".");
      file.theorems.push_back(std::move(thm));
    } else {
      ts.fail("expected a declaration (pred, fn, annot, hyp, thm)");
    }
  }
  return file;
}

SourceFile read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_file(buf.str());
}

const Theorem* SourceFile::find(std::string_view name) const {
  for (const auto& t : theorems)
    if (t.name == name) return &t;
  return nullptr;
}

}  // namespace mqc
