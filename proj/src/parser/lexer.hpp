#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mqc/parser.hpp"

namespace mqc::detail {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };

  Kind kind = Kind::End;
  std::string text;
  SourceLocation loc;
  bool space_before = false;

  bool is(std::string_view sym) const { return kind == Kind::Symbol && text == sym; }
  bool is_word(std::string_view w) const { return kind == Kind::Ident && text == w; }
};

/// Splits `text` into tokens. `%` starts a comment that runs to end of line.
std::vector<Token> tokenize(std::string_view text);

bool is_keyword(std::string_view word);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    auto i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view sym) {
    if (!peek().is(sym)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!peek().is_word(w)) return false;
    next();
    return true;
  }
  void expect(std::string_view sym);
  void expect_word(std::string_view w);
  std::string expect_ident(std::string_view what);
  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace mqc::detail
