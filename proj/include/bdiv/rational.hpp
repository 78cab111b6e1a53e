#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "bdiv/errors.hpp"

namespace bdiv {

/// Exact arbitrary-precision rational. All lattice and cone arithmetic in the
/// library runs over this type; no floating point is used anywhere.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

/// Serializes as "p/q" with q > 0 and gcd(p,q)=1 (GMP keeps the value
/// canonical). The denominator is always printed, so integers render "4/1".
inline std::string to_fraction(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {
inline bool parse_integer(std::string_view s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') return false;
  }
  out = Int(std::string(s));
  return true;
}
}  // namespace detail

/// Accepts "p" or "p/q" with integer p, q and q != 0. Returns nullopt on any
/// malformed input (including "1/0", which must never reach GMP directly).
inline std::optional<Rat> parse_fraction(std::string_view s) {
  const auto slash = s.find('/');
  Int num, den = 1;
  if (slash == std::string_view::npos) {
    if (!detail::parse_integer(s, num)) return std::nullopt;
  } else {
    if (!detail::parse_integer(s.substr(0, slash), num)) return std::nullopt;
    if (!detail::parse_integer(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rat(num, den);
}

inline Rat parse_fraction_or_fail(std::string_view s, const std::string& where) {
  auto r = parse_fraction(s);
  if (!r) fail(ErrorKind::ParseError, "invalid rational '" + std::string(s) + "' in " + where);
  return *r;
}

}  // namespace bdiv
