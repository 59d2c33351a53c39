#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "icis/polynomial.hpp"

namespace icis {

namespace detail {

// expr   := ['-'|'+'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := base ('^' uint)?
// base   := rational | identifier | '(' expr ')'
template <class K>
class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr<K>& ring, std::size_t base_offset)
      : text_(text), ring_(ring), base_(base_offset) {}

  Polynomial<K> parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    Polynomial<K> p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what, ErrorCode code = ErrorCode::Syntax) const {
    throw ParseError(what, base_ + pos_, 0, code);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<K> expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Polynomial<K> acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial<K> term() {
    Polynomial<K> acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial<K> factor() {
    Polynomial<K> b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected non-negative integer exponent");
      if (pos_ - start > 4) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return b;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial<K> base() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial<K> inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = digits();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        std::string den = digits();
        if (den.empty()) fail("expected integer denominator");
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        lit += "/" + den;
      }
      return Polynomial<K>::from_rational(ring_, Rational::parse(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'", ErrorCode::UnknownVariable);
      }
      return Polynomial<K>::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr<K>& ring_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial expression over the given ring. Errors carry the byte offset
/// (shifted by base_offset, for expressions embedded in a larger file).
template <class K>
Polynomial<K> parse_poly(std::string_view text, const RingPtr<K>& ring, std::size_t base_offset = 0) {
  return detail::PolyParser<K>(text, ring, base_offset).parse();
}

}  // namespace icis
