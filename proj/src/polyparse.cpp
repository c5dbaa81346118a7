#include "specgap/polyparse.hpp"

#include <cctype>
#include <vector>

namespace specgap {
namespace {

struct Term {
  Rational coeff{1};
  int xExp = 0;
  std::map<int, int> lamExp;  // zero-based parameter index -> exponent
  int lamCol = 0;             // column of the first parameter factor
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skipWs();
    if (eof()) fail("empty polynomial");
    bool negate = eatSign();
    for (;;) {
      Term t = parseTerm();
      if (negate) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skipWs();
      if (eof()) break;
      char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      negate = c == '-';
      ++pos_;
      skipWs();
    }
    return terms;
  }

 private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skipWs() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, static_cast<int>(pos_) + 1);
  }

  bool eatSign() {
    if (!eof() && (peek() == '+' || peek() == '-')) {
      bool neg = peek() == '-';
      ++pos_;
      skipWs();
      return neg;
    }
    return false;
  }

  Term parseTerm() {
    Term t;
    applyFactor(t);
    for (;;) {
      skipWs();
      if (eof() || peek() != '*') break;
      ++pos_;
      skipWs();
      applyFactor(t);
    }
    return t;
  }

  void applyFactor(Term& t) {
    if (eof()) fail("expected factor");
    char c = peek();
    if (c == 'x') {
      ++pos_;
      t.xExp += parseExponent();
    } else if (c == 'l') {
      size_t at = pos_;
      ++pos_;
      if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = at;
        fail("expected parameter index after 'l'");
      }
      int idx = peek() - '0';
      ++pos_;
      if (idx == 0) {
        pos_ = at;
        fail("parameters are numbered l1..l9");
      }
      if (t.lamCol == 0) t.lamCol = static_cast<int>(at) + 1;
      t.lamExp[idx - 1] += parseExponent();
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.coeff *= parseNumber();
    } else {
      fail("expected factor");
    }
  }

  int parseExponent() {
    skipWs();
    if (eof() || peek() != '^') return 1;
    ++pos_;
    skipWs();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    long e = parseDigits();
    if (e > 64) fail("exponent too large");
    return static_cast<int>(e);
  }

  long parseDigits() {
    long v = 0;
    size_t at = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000000L) {
        pos_ = at;
        fail("number too large");
      }
      ++pos_;
    }
    return v;
  }

  Rational parseNumber() {
    long intPart = 0;
    bool sawInt = false;
    if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      intPart = parseDigits();
      sawInt = true;
    }
    if (!eof() && peek() == '.') {
      ++pos_;
      if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected digits after decimal point");
      size_t start = pos_;
      long frac = parseDigits();
      size_t nd = pos_ - start;
      Rational scale(1);
      for (size_t i = 0; i < nd; ++i) scale *= Rational(1, 10);
      return Rational(intPart) + Rational(frac) * scale;
    }
    if (!sawInt) fail("expected number");
    if (!eof() && peek() == '/') {
      ++pos_;
      skipWs();
      if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected denominator");
      size_t at = pos_;
      long den = parseDigits();
      if (den == 0) {
        pos_ = at;
        fail("zero denominator");
      }
      return Rational(intPart, den);
    }
    return Rational(intPart);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

ParamPoly parseFamily(const std::string& text) {
  std::vector<Term> terms = Parser(text).parse();
  int arity = 0;
  for (const auto& t : terms)
    for (const auto& [i, e] : t.lamExp) arity = std::max(arity, i + 1);
  ParamPoly p(arity);
  for (const auto& t : terms)
    p += ParamPoly::monomial(arity, t.coeff, t.xExp, 0, t.lamExp);
  return p;
}

Poly1 parsePotential(const std::string& text) {
  std::vector<Term> terms = Parser(text).parse();
  Poly1 p;
  for (const auto& t : terms) {
    if (!t.lamExp.empty())
      throw ParseError("parameters are not allowed in a potential", t.lamCol);
    p = p + Poly1::monomial(t.coeff, t.xExp);
  }
  return p;
}

}  // namespace specgap
