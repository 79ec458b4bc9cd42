#include "mqc/reducer.hpp"
#include "parser/lexer.hpp"

namespace mqc {

namespace {

using K = DemoTerm::Kind;
using detail::Token;
using detail::TokenStream;

DemoRef make(K kind, DemoRef a = nullptr, DemoRef b = nullptr, std::string var = {}, std::uint64_t n = 0) {
  auto t = std::make_shared<DemoTerm>();
  t->kind = kind;
  t->a = std::move(a);
  t->b = std::move(b);
  t->var = std::move(var);
  t->n = n;
  return t;
}

DemoRef nat(std::uint64_t n) { return make(K::Nat, nullptr, nullptr, {}, n); }

class DemoParser {
 public:
  explicit DemoParser(TokenStream& ts) : ts_(ts) {}

  DemoRef expr() {
    if (ts_.accept_word("fun")) {
      auto a = ts_.expect_ident("a variable");
      ts_.expect("=>");
      return make(K::Lam, expr(), nullptr, a);
    }
    if (ts_.accept_word("shift")) {
      auto k = ts_.expect_ident("a continuation variable");
      ts_.expect("=>");
      return make(K::Shift, expr(), nullptr, k);
    }
    auto lhs = application();
    while (ts_.accept("+")) {
      auto& next = ts_.peek();
      DemoRef rhs = next.is_word("fun") || next.is_word("shift") ? expr() : application();
      lhs = make(K::Add, lhs, rhs);
    }
    return lhs;
  }

 private:
  bool starts_operand(const Token& t) const {
    if (t.kind == Token::Kind::Number) return true;
    if (t.kind == Token::Kind::Symbol) return t.text == "(" || t.text == "#";
    return t.kind == Token::Kind::Ident && !detail::is_keyword(t.text);
  }

  DemoRef application() {
    auto head = prefixed();
    while (starts_operand(ts_.peek())) head = make(K::App, head, prefixed());
    return head;
  }

  DemoRef prefixed() {
    if (ts_.accept("#")) return make(K::Reset, prefixed());
    if (ts_.accept("(")) {
      auto e = expr();
      ts_.expect(")");
      return e;
    }
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Number) return nat(std::stoull(ts_.next().text));
    return make(K::Var, nullptr, nullptr, ts_.expect_ident("an expression"));
  }

  TokenStream& ts_;
};

// Levels: 0 binders, 1 sums, 2 applications, 3 prefix, 4 atoms.
std::string at(const DemoTerm& t, int level) {
  auto wrap = [&](std::string s, int own) { return level > own ? "(" + s + ")" : s; };
  switch (t.kind) {
    case K::Nat: return std::to_string(t.n);
    case K::Var: return t.var;
    case K::Add: return wrap(at(*t.a, 1) + " + " + at(*t.b, t.b->kind == K::Lam || t.b->kind == K::Shift ? 0 : 2), 1);
    case K::App: return wrap(at(*t.a, 2) + " " + at(*t.b, 3), 2);
    case K::Reset: return wrap("#" + at(*t.a, 4), 3);
    case K::Lam: return wrap("fun " + t.var + " => " + at(*t.a, 0), 0);
    case K::Shift: return wrap("shift " + t.var + " => " + at(*t.a, 0), 0);
  }
  return {};
}

bool is_value(const DemoTerm& t) { return t.kind == K::Nat || t.kind == K::Lam || t.kind == K::Var; }

void free_vars(const DemoTerm& t, NameSet& bound, NameSet& out) {
  switch (t.kind) {
    case K::Var:
      if (!bound.count(t.var)) out.insert(t.var);
      return;
    case K::Lam:
    case K::Shift: {
      bool fresh = bound.insert(t.var).second;
      free_vars(*t.a, bound, out);
      if (fresh) bound.erase(t.var);
      return;
    }
    default:
      if (t.a) free_vars(*t.a, bound, out);
      if (t.b) free_vars(*t.b, bound, out);
  }
}

NameSet free_vars(const DemoTerm& t) {
  NameSet bound, out;
  free_vars(t, bound, out);
  return out;
}

DemoRef subst(const DemoRef& t, const std::string& x, const DemoRef& by, const NameSet& by_free) {
  switch (t->kind) {
    case K::Nat: return t;
    case K::Var: return t->var == x ? by : t;
    case K::Lam:
    case K::Shift: {
      if (t->var == x) return t;
      if (by_free.count(t->var)) {
        NameSet avoid = free_vars(*t->a);
        avoid.insert(by_free.begin(), by_free.end());
        auto y = pick_name(t->var, avoid);
        auto body = subst(t->a, t->var, make(K::Var, nullptr, nullptr, y), {y});
        return make(t->kind, subst(body, x, by, by_free), nullptr, y);
      }
      return make(t->kind, subst(t->a, x, by, by_free), nullptr, t->var);
    }
    default: {
      auto a = t->a ? subst(t->a, x, by, by_free) : nullptr;
      auto b = t->b ? subst(t->b, x, by, by_free) : nullptr;
      if (a == t->a && b == t->b) return t;
      return make(t->kind, a, b, t->var, t->n);
    }
  }
}

struct Frame {
  DemoRef node;
  int slot;
};

struct Outcome {
  enum class Kind { Value, Stepped, Capture } kind = Kind::Value;
  DemoRef term;
  std::string rule;
  std::string note;
  std::string k;
  DemoRef body;
  std::vector<Frame> frames;
};

DemoRef with_child(const DemoRef& node, int slot, DemoRef child) {
  auto n = std::make_shared<DemoTerm>(*node);
  (slot == 0 ? n->a : n->b) = std::move(child);
  return n;
}

DemoRef plug(const std::vector<Frame>& frames, DemoRef hole) {
  for (const auto& f : frames) hole = with_child(f.node, f.slot, hole);
  return hole;
}

[[noreturn]] void stuck(const DemoRef& t, const std::string& why) {
  throw ReductionError(ReductionErrorKind::Stuck, why + ": " + print_demo(t));
}

Outcome demo_step(const DemoRef& t);

Outcome inside(const DemoRef& node, int slot) {
  Outcome o = demo_step(slot == 0 ? node->a : node->b);
  if (o.kind == Outcome::Kind::Stepped) o.term = with_child(node, slot, o.term);
  if (o.kind == Outcome::Kind::Capture) o.frames.push_back({node, slot});
  return o;
}

Outcome reduced(DemoRef t, std::string rule) {
  Outcome o;
  o.kind = Outcome::Kind::Stepped;
  o.term = std::move(t);
  o.rule = std::move(rule);
  return o;
}

Outcome demo_step(const DemoRef& t) {
  if (is_value(*t)) {
    if (t->kind == K::Var) stuck(t, "free variable");
    Outcome o;
    o.kind = Outcome::Kind::Value;
    o.term = t;
    return o;
  }
  switch (t->kind) {
    case K::Add:
      if (!is_value(*t->a)) return inside(t, 0);
      if (!is_value(*t->b)) return inside(t, 1);
      if (t->a->kind != K::Nat || t->b->kind != K::Nat) stuck(t, "addition of a non-number");
      return reduced(nat(t->a->n + t->b->n), "add");
    case K::App:
      if (!is_value(*t->a)) return inside(t, 0);
      if (!is_value(*t->b)) return inside(t, 1);
      if (t->a->kind != K::Lam) stuck(t, "application of a non-function");
      return reduced(subst(t->a->a, t->a->var, t->b, free_vars(*t->b)), "beta");
    case K::Reset: {
      if (is_value(*t->a)) return reduced(t->a, "reset");
      Outcome o = demo_step(t->a);
      if (o.kind == Outcome::Kind::Stepped) {
        o.term = make(K::Reset, o.term);
        return o;
      }
      NameSet avoid = free_vars(*plug(o.frames, make(K::Nat)));
      auto a = pick_name("a", avoid);
      auto cont = make(K::Lam, make(K::Reset, plug(o.frames, make(K::Var, nullptr, nullptr, a))), nullptr, a);
      auto r = reduced(make(K::Reset, subst(o.body, o.k, cont, free_vars(*cont))), "capture");
      r.note = at(*o.body, 4) + "{(" + print_demo(cont) + ")/" + o.k + "}";
      return r;
    }
    case K::Shift: {
      Outcome o;
      o.kind = Outcome::Kind::Capture;
      o.term = t;
      o.k = t->var;
      o.body = t->a;
      return o;
    }
    default:
      break;
  }
  stuck(t, "no rule applies");
}

}  // namespace

DemoRef parse_demo(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  DemoParser p(ts);
  auto e = p.expr();
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return e;
}

std::string print_demo(const DemoRef& t) { return at(*t, 0); }

DemoResult demo_eval(const DemoRef& t, std::uint64_t max_steps) {
  DemoResult r;
  r.trace.push_back({t, "", ""});
  DemoRef cur = t;
  for (std::uint64_t n = 0;; ++n) {
    Outcome o = demo_step(cur);
    if (o.kind == Outcome::Kind::Value) break;
    if (o.kind == Outcome::Kind::Capture)
      throw ReductionError(ReductionErrorKind::TopLevelCapture, "shift without an enclosing reset");
    if (n >= max_steps)
      throw ReductionError(ReductionErrorKind::StepLimitExceeded, "no value after " + std::to_string(max_steps) + " steps");
    cur = o.term;
    r.trace.push_back({cur, o.rule, o.note});
  }
  r.value = cur;
  return r;
}

}  // namespace mqc
