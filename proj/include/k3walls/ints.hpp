#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3walls {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;
using RatVec = std::vector<Rat>;

// Thrown on invalid user-supplied data (bad lattice, non-primitive vector, ...).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int sgn(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// floor(sqrt(n)) for n >= 0, exact.
inline Int isqrt(const Int& n) {
  if (n < 0) throw InputError("isqrt of negative");
  if (n == 0) return 0;
  Int x = Int(1) << (static_cast<unsigned>(boost::multiprecision::msb(n)) / 2 + 1);
  for (;;) {
    Int y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

inline bool is_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw InputError("division by zero");
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int rat_floor(const Rat& x) {
  return floor_div(boost::multiprecision::numerator(x),
                   boost::multiprecision::denominator(x));
}

inline Int rat_ceil(const Rat& x) {
  return ceil_div(boost::multiprecision::numerator(x),
                  boost::multiprecision::denominator(x));
}

// floor(sqrt(p/q)) for p/q >= 0.  Exact: for q > 0,
// floor(sqrt(p/q)) = floor(sqrt(p*q)) / q  in integer division,
// since k <= sqrt(p/q) <=> k*q <= sqrt(p*q).
inline Int rat_floor_sqrt(const Rat& x) {
  if (x < 0) throw InputError("rat_floor_sqrt of negative");
  Int p = boost::multiprecision::numerator(x);
  Int q = boost::multiprecision::denominator(x);
  return isqrt(p * q) / q;
}

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }

// The two-argument Rat constructor rejects negative denominators outright, so
// every quotient of signed integers goes through here.
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw InputError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(std::move(num), std::move(den));
}

inline std::string rat_to_string(const Rat& x) {
  Int p = rat_num(x), q = rat_den(x);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

inline Int content(const Vec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd_int(g, x);
  return g;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Vec make_primitive(const Vec& v) {
  Int g = content(v);
  if (g == 0) return v;
  Vec w = v;
  for (auto& x : w) x /= g;
  return w;
}

inline Vec neg(const Vec& v) {
  Vec w = v;
  for (auto& x : w) x = -x;
  return w;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Vec scale(const Int& k, const Vec& v) {
  Vec w = v;
  for (auto& x : w) x *= k;
  return w;
}

// a + k*b
inline Vec addmul(const Vec& a, const Int& k, const Vec& b) {
  Vec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + k * b[i];
  return c;
}

inline bool lex_less(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline Int max_abs(const Vec& v) {
  Int m = 0;
  for (const auto& x : v)
    if (abs_int(x) > m) m = abs_int(x);
  return m;
}

inline std::string vec_to_string(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  s += ")";
  return s;
}

}  // namespace k3walls
