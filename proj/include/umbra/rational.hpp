#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace umbra {

// Expression templates are disabled so arithmetic yields plain values;
// generic code over the coefficient field stays straightforward.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

// Exact rational coefficient field, kept in lowest terms with a positive
// denominator -- exactly the invariant the rest of the library relies on.
using Rat =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(std::move(num), std::move(den));
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Renders "p/q", or just "p" when the denominator is 1.
inline std::string rat_str(const Rat& r) { return r.str(); }

// Parses "p" or "p/q" (optional leading '-'). Anything else -- including
// decimal literals -- yields nullopt; exactness is part of the contract.
inline std::optional<Rat> rat_parse(std::string_view text) {
  std::size_t i = 0;
  auto digits = [&](Int& out) -> bool {
    std::size_t start = i;
    Int v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + (text[i] - '0');
      ++i;
    }
    if (i == start) return false;
    out = v;
    return true;
  };

  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  Int num;
  if (!digits(num)) return std::nullopt;
  Int den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (!digits(den) || den == 0) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  if (neg) num = -num;
  return Rat(num, den);
}

inline Rat rat_pow(const Rat& base, long long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0 && exp < 0) throw std::domain_error("rat_pow: 0 to a negative power");
  Rat b = exp < 0 ? Rat(1) / base : base;
  unsigned long long e = exp < 0 ? -static_cast<unsigned long long>(exp) : static_cast<unsigned long long>(exp);
  Rat acc(1);
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace umbra
