#pragma once

// Text form of Laurent polynomials.
//
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := [coef ['*']] [mono] ['/' '(' mono ')' ['^' nat]]
//   coef   := nat ['/' nat] | param | '(' poly ')'
//   mono   := factor (['*'] factor)*
//   factor := var ['^' ['-'] nat] | '(' poly ')' ['^' nat]
//   var    := 'x' | 'y' | 'z' | 'x' digit+        (x=x1, y=x2, z=x3)
//   param  := 'a'digit | alpha | beta | gamma | delta | epsilon | zeta | eta
//
// Whitespace and '{' '}' are ignored; juxtaposition multiplies (xy^2 means
// x*y^2). A/(B) denominators must be monomials with constant coefficient.
// The serializer emits a canonical form: terms in lexicographically
// decreasing exponent order, negative exponents gathered into /(...).

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "fanomut/laurent.hpp"

namespace fanomut {
namespace detail {

struct Token {
  enum Kind { num, var, param, plus, minus, star, slash, caret, lparen, rparen, end };
  Kind kind;
  Int value;       // num
  size_t index;    // var coordinate
  std::string name;  // param
};

inline bool is_param_word(const std::string& w) {
  static const char* greek[] = {"alpha", "beta",    "gamma", "delta",
                                "epsilon", "zeta", "eta",   "theta"};
  for (const char* g : greek)
    if (w == g) return true;
  return false;
}

inline std::vector<Token> lex_poly(const std::string& text) {
  std::vector<Token> out;
  size_t i = 0, n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}') {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      Token t;
      t.kind = Token::num;
      t.value = Int(text.substr(i, j - i));
      out.push_back(t);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      std::string word = text.substr(i, j - i);
      size_t k = j;
      while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      std::string digits = text.substr(j, k - j);
      if (word == "x" && !digits.empty()) {
        size_t idx = std::stoul(digits);
        if (idx == 0) throw usage_error("variables are numbered from x1");
        Token t;
        t.kind = Token::var;
        t.index = idx - 1;
        out.push_back(t);
        i = k;
        continue;
      }
      if (word == "a" && digits.size() == 1 && digits[0] != '0') {
        Token t;
        t.kind = Token::param;
        t.name = "a" + digits;
        out.push_back(t);
        i = k;
        continue;
      }
      if (is_param_word(word) && digits.empty()) {
        Token t;
        t.kind = Token::param;
        t.name = word;
        out.push_back(t);
        i = j;
        continue;
      }
      if (!digits.empty())
        throw usage_error("unexpected digits after '" + word + "'");
      for (char v : word) {
        Token t;
        t.kind = Token::var;
        if (v == 'x')
          t.index = 0;
        else if (v == 'y')
          t.index = 1;
        else if (v == 'z')
          t.index = 2;
        else
          throw usage_error(std::string("unknown symbol '") + v + "'");
        out.push_back(t);
      }
      i = j;
      continue;
    }
    Token t;
    switch (c) {
      case '+': t.kind = Token::plus; break;
      case '-': t.kind = Token::minus; break;
      case '*': t.kind = Token::star; break;
      case '/': t.kind = Token::slash; break;
      case '^': t.kind = Token::caret; break;
      case '(': t.kind = Token::lparen; break;
      case ')': t.kind = Token::rparen; break;
      default:
        throw usage_error(std::string("unexpected character '") + c + "'");
    }
    out.push_back(t);
    ++i;
  }
  out.push_back({Token::end, 0, 0, ""});
  return out;
}

class PolyParser {
 public:
  PolyParser(std::vector<Token> toks, size_t dim)
      : toks_(std::move(toks)), dim_(dim) {}

  LaurentPolynomial parse() {
    LaurentPolynomial p = parse_poly();
    expect(Token::end, "trailing input after polynomial");
    return p;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& take() { return toks_[pos_++]; }
  void expect(Token::Kind k, const char* msg) {
    if (peek().kind != k) throw usage_error(msg);
    ++pos_;
  }

  LaurentPolynomial parse_poly() {
    LaurentPolynomial acc(dim_);
    bool negate = false;
    if (peek().kind == Token::minus) {
      negate = true;
      ++pos_;
    } else if (peek().kind == Token::plus) {
      ++pos_;
    }
    acc += maybe_negate(parse_term(), negate);
    while (peek().kind == Token::plus || peek().kind == Token::minus) {
      bool neg = take().kind == Token::minus;
      acc += maybe_negate(parse_term(), neg);
    }
    return acc;
  }

  static LaurentPolynomial maybe_negate(LaurentPolynomial p, bool neg) {
    return neg ? -p : p;
  }

  bool starts_factor() const {
    Token::Kind k = peek().kind;
    return k == Token::num || k == Token::var || k == Token::param ||
           k == Token::lparen || k == Token::slash;
  }

  LaurentPolynomial parse_term() {
    LaurentPolynomial acc = LaurentPolynomial::constant(dim_, AffineForm(1));
    bool any = false;
    while (starts_factor()) {
      any = true;
      const Token& t = peek();
      if (t.kind == Token::num) {
        Int v = take().value;
        if (peek().kind == Token::slash && peek(1).kind == Token::num) {
          ++pos_;
          Int d = take().value;
          if (d == 0) throw usage_error("zero denominator");
          acc = acc.scale(AffineForm(Rat(v, d)));
        } else {
          acc = acc.scale(AffineForm(v));
        }
      } else if (t.kind == Token::var) {
        size_t idx = take().index;
        if (idx >= dim_) throw usage_error("variable index exceeds dimension");
        Int e = 1;
        if (peek().kind == Token::caret) {
          ++pos_;
          bool neg = false;
          if (peek().kind == Token::minus) {
            neg = true;
            ++pos_;
          }
          if (peek().kind != Token::num) throw usage_error("exponent expected");
          e = take().value;
          if (neg) e = -e;
        }
        IntVec exp(dim_, 0);
        exp[idx] = e;
        acc = acc.mul_monomial(exp);
      } else if (t.kind == Token::param) {
        std::string name = take().name;
        acc = acc.scale(AffineForm::parameter(name));
      } else if (t.kind == Token::lparen) {
        ++pos_;
        LaurentPolynomial sub = parse_poly();
        expect(Token::rparen, "')' expected");
        unsigned e = 1;
        if (peek().kind == Token::caret) {
          ++pos_;
          if (peek().kind != Token::num) throw usage_error("exponent expected");
          Int v = take().value;
          e = static_cast<unsigned>(v.convert_to<unsigned long>());
        }
        acc = acc * sub.power(e);
      } else {  // slash: divide by an integer, a variable, or (monomial)
        ++pos_;
        if (peek().kind == Token::num) {
          Int d = take().value;
          if (d == 0) throw usage_error("zero denominator");
          acc = acc.scale(AffineForm(Rat(1, d)));
        } else if (peek().kind == Token::var) {
          size_t idx = take().index;
          if (idx >= dim_) throw usage_error("variable index exceeds dimension");
          Int e = 1;
          if (peek().kind == Token::caret) {
            ++pos_;
            if (peek().kind != Token::num) throw usage_error("exponent expected");
            e = take().value;
          }
          IntVec exp(dim_, 0);
          exp[idx] = -e;
          acc = acc.mul_monomial(exp);
        } else {
          expect(Token::lparen, "'(' expected after '/'");
          LaurentPolynomial denom = parse_poly();
          expect(Token::rparen, "')' expected");
          if (peek().kind == Token::caret) {
            ++pos_;
            if (peek().kind != Token::num) throw usage_error("exponent expected");
            Int v = take().value;
            denom = denom.power(static_cast<unsigned>(v.convert_to<unsigned long>()));
          }
          if (denom.term_count() != 1)
            throw usage_error("denominator must be a monomial");
          const auto& [e, c] = *denom.terms().begin();
          if (!c.is_constant() || c.constant() == 0)
            throw usage_error("denominator coefficient must be a nonzero constant");
          acc = acc.mul_monomial(vec_neg(e)).scale(AffineForm(Rat(1) / c.constant()));
        }
      }
      if (peek().kind == Token::star) {
        ++pos_;
        if (!starts_factor()) throw usage_error("factor expected after '*'");
      }
    }
    if (!any) throw usage_error("empty term");
    return acc;
  }

  std::vector<Token> toks_;
  size_t dim_;
  size_t pos_ = 0;
};

}  // namespace detail

// dim_hint forces a minimum dimension; variables present can raise it
inline LaurentPolynomial parse_polynomial(const std::string& text,
                                          size_t dim_hint = 0) {
  std::vector<detail::Token> toks = detail::lex_poly(text);
  size_t dim = dim_hint;
  for (const auto& t : toks)
    if (t.kind == detail::Token::var) dim = std::max(dim, t.index + 1);
  if (dim == 0) dim = 1;
  if (dim > 3)
    throw usage_error("at most three variables are supported");
  return detail::PolyParser(toks, dim).parse();
}

namespace detail {

inline std::string rat_str(const Rat& r) { return fanomut::to_string(r); }

// affine form as text, no outer parens; canonical parameter order
inline std::string affine_str(const AffineForm& a) {
  std::ostringstream os;
  bool first = true;
  if (a.constant() != 0 || a.linear().empty()) {
    os << rat_str(a.constant());
    first = false;
  }
  for (const auto& [name, k] : a.linear()) {
    Rat mag = k < 0 ? -k : k;
    if (first) {
      if (k < 0) os << "-";
      first = false;
    } else {
      os << (k < 0 ? "-" : "+");
    }
    if (mag != 1) os << rat_str(mag) << "*";
    os << name;
  }
  return os.str();
}

inline std::string monomial_str(const IntVec& e, bool invert) {
  static const char* names[3] = {"x", "y", "z"};
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i) {
    Int v = invert ? -e[i] : e[i];
    if (v <= 0) continue;
    if (!first) os << "*";
    first = false;
    os << names[i];
    if (v != 1) os << "^" << v;
  }
  return os.str();
}

}  // namespace detail

inline std::string to_string(const LaurentPolynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const IntVec& e = it->first;
    const AffineForm& c = it->second;
    bool negative = false;
    std::string coef;
    bool coef_is_one = false;
    if (c.is_constant()) {
      Rat v = c.constant();
      negative = v < 0;
      Rat mag = negative ? -v : v;
      coef_is_one = mag == 1;
      coef = detail::rat_str(mag);
    } else {
      coef = "(" + detail::affine_str(c) + ")";
    }
    std::string num = detail::monomial_str(e, false);
    std::string den = detail::monomial_str(e, true);
    if (!first)
      os << (negative ? "-" : "+");
    else if (negative)
      os << "-";
    first = false;
    std::string body;
    if (num.empty() && den.empty()) {
      body = coef;
    } else if (coef_is_one) {
      body = num.empty() ? "1" : num;
    } else {
      body = coef + (num.empty() ? "" : "*" + num);
    }
    if (!den.empty()) body += "/(" + den + ")";
    os << body;
  }
  return os.str();
}

}  // namespace fanomut
