#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace honeycomb {

/// Arbitrary-precision exact rational. Every coordinate and edge value in the
/// library is one of these; nothing in the core touches floating point.
using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;

inline bool is_integer(const Q& q) { return boost::multiprecision::denominator(q) == 1; }

inline Z numer(const Q& q) { return boost::multiprecision::numerator(q); }
inline Z denom(const Q& q) { return boost::multiprecision::denominator(q); }

inline Q floor(const Q& q) {
  Z n = numer(q), d = denom(q);
  Z f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return Q(f);
}

inline Q ceil(const Q& q) { return -floor(-q); }

/// Canonical "p/q" form with q > 0 and gcd(p, q) = 1; integers print as "p/1".
inline std::string to_string(const Q& q) { return numer(q).str() + "/" + denom(q).str(); }

/// Accepts "p/q" or a bare integer "p". Returns nullopt on malformed text or a
/// zero denominator.
inline std::optional<Q> parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  };
  auto slash = text.find('/');
  std::string_view p = text.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(p) || !valid_int(d)) return std::nullopt;
  Z num(std::string(strip_plus(p)));
  Z den(std::string(strip_plus(d)));
  if (den == 0) return std::nullopt;
  return Q(num, den);
}

}  // namespace honeycomb
