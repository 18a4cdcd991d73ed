#include "coxmin/expr.hpp"

#include <cctype>
#include <map>

namespace coxmin {
namespace {

class Parser {
 public:
  Parser(const std::string& text, RingPtr ring)
      : s_(text), ring_(std::move(ring)) {}

  Poly run() {
    Poly p = expr();
    skipWs();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  const std::string& s_;
  RingPtr ring_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("parse error at column " + std::to_string(pos_ + 1) +
                          ": " + msg);
  }

  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skipWs();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  char peek() {
    skipWs();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        Poly d = factor();
        if (!d.isConstant() || d.isZero()) fail("divisor must be a nonzero scalar");
        acc = acc.scaled(d.constantValue().inverse());
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    bool neg = false;
    for (;;) {
      if (eat('-')) neg = !neg;
      else if (eat('+')) continue;
      else break;
    }
    Poly p = primary();
    if (eat('^')) {
      bool eneg = eat('-');
      long e = integer("exponent");
      if (eneg) {
        if (!p.isConstant() || p.isZero()) fail("negative power of a non-scalar");
        p = Poly::constant(ring_, p.constantValue().pow(-e));
      } else {
        if (e > 512 && !p.isConstant()) fail("exponent too large");
        p = p.pow(static_cast<unsigned>(e));
      }
    }
    return neg ? -p : p;
  }

  long integer(const char* what) {
    skipWs();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::stol(s_.substr(start, pos_ - start));
  }

  Poly primary() {
    skipWs();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class v(s_.substr(start, pos_ - start));
      return Poly::constant(ring_, CycNum(Rational(v)));
    }
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int v = ring_->varIndex(name);
      if (v >= 0) return Poly::variable(ring_, static_cast<unsigned>(v));
      if (name == "zeta" || name == "z")
        return Poly::constant(ring_, CycNum::zeta(ring_->conductor));
      fail("unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Poly parsePoly(const std::string& text, const RingPtr& ring) {
  return Parser(text, ring).run();
}

CycNum parseScalar(const std::string& text, unsigned conductor) {
  static thread_local std::map<unsigned, RingPtr> scalarRings;
  auto it = scalarRings.find(conductor);
  if (it == scalarRings.end())
    it = scalarRings.emplace(conductor,
                             Ring::make({}, MonomialOrder::grevlex(0), conductor)).first;
  Poly p = parsePoly(text, it->second);
  return p.isZero() ? CycNum() : p.constantValue();
}

}  // namespace coxmin
