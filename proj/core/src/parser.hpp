#pragma once

// Recursive-descent parser shared by the scalar and algebra grammars.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ('-' | '+') unary | power
//   power := atom ('^' ['-'] digits)?
//   atom  := digits | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//   ident := letter (letter | digit)* '\''?
//
// The Atoms policy turns identifiers, integers and calls into values and
// supplies division and integer powers.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "uvt/error.hpp"

namespace uvt::detail {

template <class Value, class Atoms>
class ExprParser {
 public:
  ExprParser(std::string_view text, Atoms& atoms) : text_(text), atoms_(atoms) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Value expr() {
    Value acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = unary();
    while (true) {
      skip();
      const std::size_t at = pos_;
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Value d = unary();
        acc = atoms_.divide(acc, d, at);
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    skip();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    skip();
    bool negative = false;
    if (accept('-')) negative = true;
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) fail("exponent too large");
    const int e = std::stoi(digits);
    return atoms_.power(base, negative ? -e : e, at);
  }

  Value atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return atoms_.integer(mpz_class(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      skip();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        std::vector<Value> args;
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
        expect(')');
        return atoms_.call(name, args, start);
      }
      return atoms_.identifier(name, start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Atoms& atoms_;
  std::size_t pos_ = 0;
};

}  // namespace uvt::detail
