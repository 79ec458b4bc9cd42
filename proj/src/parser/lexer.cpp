#include "parser/lexer.hpp"

#include <array>
#include <cctype>

namespace mqc {

ParseError::ParseError(const std::string& message, SourceLocation loc)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message),
      loc_(loc),
      detail_(message) {}

namespace detail {

namespace {

constexpr std::array<std::string_view, 12> kSymbols = {
    ":=", "->", "/\\", "\\/", "=>", "(", ")", "[", "]", ",", ".", ":"};
constexpr std::array<std::string_view, 5> kSingle = {"|", "@", "#", "/", "+"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_keyword(std::string_view word) {
  static constexpr std::array<std::string_view, 19> kw = {
      "fun", "gen", "shift", "case", "of",   "inl", "inr",    "fst",   "snd", "dest",
      "as",  "in",  "forall", "exists", "pred", "fn", "annot", "thm", "hyp"};
  for (auto k : kw)
    if (k == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  SourceLocation loc;
  std::size_t i = 0;
  bool space = true;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      space = true;
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      space = true;
      continue;
    }
    Token tok;
    tok.loc = loc;
    tok.space_before = space;
    space = false;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = Token::Kind::Number;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (text.substr(i, sym.size()) == sym) {
        tok.kind = Token::Kind::Symbol;
        tok.text = std::string(sym);
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      for (auto sym : kSingle) {
        if (text[i] == sym[0]) {
          tok.kind = Token::Kind::Symbol;
          tok.text = std::string(sym);
          advance(1);
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", loc);
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.loc = loc;
  end.space_before = true;
  out.push_back(end);
  return out;
}

void TokenStream::fail_at(const Token& t, const std::string& message) const {
  throw ParseError(message, t.loc);
}

void TokenStream::fail(const std::string& message) const {
  const auto& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  fail_at(t, message + ", found " + found);
}

void TokenStream::expect(std::string_view sym) {
  if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
}

void TokenStream::expect_word(std::string_view w) {
  if (!accept_word(w)) fail("expected '" + std::string(w) + "'");
}

std::string TokenStream::expect_ident(std::string_view what) {
  const auto& t = peek();
  if (t.kind != Token::Kind::Ident || is_keyword(t.text)) fail("expected " + std::string(what));
  return next().text;
}

}  // namespace detail
}  // namespace mqc
