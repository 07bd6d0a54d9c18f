#include <string>
#include <vector>

#include "lamnet/errors.hpp"
#include "lamnet/term.hpp"

namespace lamnet {

namespace {

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse() {
    skip_space();
    if (at_end()) fail("empty input");
    Term t = parse_expr();
    skip_space();
    if (!at_end()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  bool at_lambda() const {
    if (at_end()) return false;
    if (text_[pos_] == '\\') return true;
    return text_.substr(pos_, 2) == "λ";
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    // Column counts code points, 1-based.
    std::size_t column = 1;
    for (std::size_t i = line_start_; i < pos_ && i < text_.size(); ++i) {
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++column;
    }
    throw SyntaxError(message, line_, column);
  }

  std::string parse_ident() {
    if (at_end() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (!at_end() && ident_char(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  Term parse_lambda() {
    advance(text_[pos_] == '\\' ? 1 : 2);
    std::vector<std::string> binders;
    skip_space();
    binders.push_back(parse_ident());
    for (;;) {
      skip_space();
      if (!at_end() && text_[pos_] == '.') break;
      if (at_end() || !ident_start(text_[pos_])) fail("expected '.' after binder");
      binders.push_back(parse_ident());
    }
    advance();
    Term body = parse_expr();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      body = Term::abs(*it, std::move(body));
    }
    return body;
  }

  // expr := atom+ [lambda] | lambda
  Term parse_expr() {
    skip_space();
    if (at_lambda()) return parse_lambda();
    Term acc = parse_atom();
    for (;;) {
      skip_space();
      if (at_end() || text_[pos_] == ')') return acc;
      if (at_lambda()) return Term::app(std::move(acc), parse_lambda());
      acc = Term::app(std::move(acc), parse_atom());
    }
  }

  Term parse_atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      advance();
      Term t = parse_expr();
      skip_space();
      if (at_end() || text_[pos_] != ')') fail("expected ')'");
      advance();
      return t;
    }
    if (ident_start(c)) return Term::var(parse_ident());
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

bool is_identifier(std::string_view name) {
  if (name.empty() || !ident_start(name.front())) return false;
  for (char c : name) {
    if (!ident_char(c)) return false;
  }
  return true;
}

}  // namespace lamnet
