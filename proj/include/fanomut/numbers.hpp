#pragma once

// Exact scalar types shared by every module. No machine-word arithmetic
// reaches a public result: Int/Rat are arbitrary precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace fanomut {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Recoverable, input-dependent failure (CLI exit code 1). `code` is a stable
// machine-parsable token; `what()` carries the human-readable detail.
class domain_error : public std::runtime_error {
 public:
  domain_error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Malformed input text / bad invocation (CLI exit code 2).
class usage_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// binomial(n, k) with the usual convention: 0 when k < 0 or k > n. n >= 0.
inline Int binomial(const Int& n, const Int& k) {
  if (k < 0 || k > n) return 0;
  Int kk = k;
  if (n - k < kk) kk = n - k;
  Int num = 1, den = 1;
  for (Int i = 0; i < kk; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// g = gcd(a,b) = x*a + y*b. gcd(0,0) = 0 with (x,y) = (0,0).
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b;
  Int old_x = 1, xx = 0;
  Int old_y = 0, yy = 1;
  while (r != 0) {
    Int q = old_r / r;  // truncated division is fine: invariants hold over Z
    Int t;
    t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * xx;
    old_x = xx;
    xx = t;
    t = old_y - q * yy;
    old_y = yy;
    yy = t;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_x = -old_x;
    old_y = -old_y;
  }
  x = old_x;
  y = old_y;
  return old_r;
}

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace fanomut
