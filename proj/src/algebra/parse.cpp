#include "fgc/algebra/parse.hpp"

#include <cctype>

#include "fgc/algebra/errors.hpp"

namespace fgc {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  RingElement parse() {
    RingElement value = expression();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return value;
  }

 private:
  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RingElement expression() {
    RingElement value = term();
    for (;;) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        return value;
      }
    }
  }

  RingElement term() {
    RingElement value = unary();
    for (;;) {
      if (accept('*')) {
        value = value * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        if (ring_->base() != Base::Rationals) {
          throw ParseError("division is not allowed over an integer base", at - 1);
        }
        RingElement divisor = unary();
        auto c = divisor.constant_value();
        if (!c) throw ParseError("divisor must be a constant", at);
        if (*c == 0) throw ParseError("division by zero", at);
        value = value.scaled(1 / *c);
      } else {
        return value;
      }
    }
  }

  RingElement unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RingElement power() {
    RingElement base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t at = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected a non-negative integer exponent", at);
      if (digits.size() > 4) throw ParseError("exponent too large", at);
      return base.pow(std::stoi(digits));
    }
    return base;
  }

  std::string read_digits() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    return digits;
  }

  RingElement atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RingElement inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return RingElement::constant(ring_, Rational(mpz_class(read_digits())));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_++];
      }
      if (!ring_->index_of(name)) throw ParseError("unknown generator '" + name + "'", at);
      return RingElement::generator(ring_, name);
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

RingElement parse_coeff(std::string_view text, const RingPtr& ring) { return Parser(text, ring).parse(); }

}  // namespace fgc
