#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umbra/combinatorics.hpp"
#include "umbra/errors.hpp"
#include "umbra/rational.hpp"

namespace umbra {

// Truncated formal power series in t over an exact field K.
//
// Storage is the ordinary coefficient c_k of t^k for k = 0..trunc. The
// umbral coefficient a_k = k! * c_k is a view obtained on demand, never a
// second storage format. Binary operations truncate to the shorter operand;
// nothing ever extends a series with fabricated zeros.
template <typename K>
class Series {
 public:
  Series(std::vector<K> coeffs, std::size_t trunc) : c_(std::move(coeffs)) {
    if (c_.size() != trunc + 1)
      throw BadParams("Series: coefficient count must be trunc + 1");
  }

  static Series zero(std::size_t trunc) {
    return Series(std::vector<K>(trunc + 1, K(0)), trunc);
  }
  static Series constant(K c, std::size_t trunc) {
    auto s = zero(trunc);
    s.c_[0] = std::move(c);
    return s;
  }
  static Series one(std::size_t trunc) { return constant(K(1), trunc); }
  static Series t(std::size_t trunc) {
    auto s = zero(trunc);
    if (trunc < 1) throw BadParams("Series::t: needs trunc >= 1");
    s.c_[1] = K(1);
    return s;
  }

  std::size_t trunc() const { return c_.size() - 1; }
  const K& coeff(std::size_t k) const {
    if (k >= c_.size()) throw TruncationError("Series: coefficient beyond truncation");
    return c_[k];
  }
  const std::vector<K>& coeffs() const { return c_; }

  // a_k = k! c_k.
  K umbral_coeff(std::size_t k) const { return coeff(k) * K(factorial(k)); }

  // Index of the first nonzero coefficient; nullopt ("infinite") when every
  // stored coefficient vanishes, so a zero-up-to-truncation series cannot be
  // mistaken for one of genuine finite order.
  std::optional<std::size_t> order() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != K(0)) return k;
    return std::nullopt;
  }

  bool is_invertible() const { return c_[0] != K(0); }
  bool is_delta() const { return order() == std::size_t{1}; }

  Series operator-() const {
    std::vector<K> r(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] = -c_[k];
    return Series(std::move(r), trunc());
  }

  friend Series operator+(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.trunc(), b.trunc());
    std::vector<K> r(n + 1);
    for (std::size_t k = 0; k <= n; ++k) r[k] = a.c_[k] + b.c_[k];
    return Series(std::move(r), n);
  }
  friend Series operator-(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.trunc(), b.trunc());
    std::vector<K> r(n + 1);
    for (std::size_t k = 0; k <= n; ++k) r[k] = a.c_[k] - b.c_[k];
    return Series(std::move(r), n);
  }
  // Cauchy product, truncated.
  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.trunc(), b.trunc());
    std::vector<K> r(n + 1, K(0));
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == K(0)) continue;
      for (std::size_t j = 0; i + j <= n; ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Series(std::move(r), n);
  }
  friend Series operator*(const Series& a, const K& s) {
    std::vector<K> r(a.c_);
    for (auto& v : r) v *= s;
    return Series(std::move(r), a.trunc());
  }
  friend Series operator*(const K& s, const Series& a) { return a * s; }
  friend Series operator+(const Series& a, const K& s) {
    std::vector<K> r(a.c_);
    r[0] += s;
    return Series(std::move(r), a.trunc());
  }
  friend Series operator-(const Series& a, const K& s) { return a + (-s); }

  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  bool operator==(const Series&) const = default;

 private:
  std::vector<K> c_;  // size = trunc + 1
};

// Free-function constructor, matching the rest of the series API.
template <typename K>
Series<K> series_from_coeffs(std::vector<K> coeffs, std::size_t trunc) {
  return Series<K>(std::move(coeffs), trunc);
}

template <typename K>
std::optional<std::size_t> order_of(const Series<K>& f) {
  return f.order();
}

template <typename K>
Series<K> truncate_to(const Series<K>& f, std::size_t trunc) {
  if (trunc > f.trunc()) throw TruncationError("truncate_to: cannot extend a series");
  return Series<K>(std::vector<K>(f.coeffs().begin(), f.coeffs().begin() + trunc + 1), trunc);
}

// g with f*g = 1 up to trunc, by the usual coefficient recursion.
template <typename K>
Series<K> mul_inverse(const Series<K>& f) {
  if (f.coeff(0) == K(0))
    throw NotInvertible("mul_inverse: series has zero constant term");
  const std::size_t n = f.trunc();
  std::vector<K> g(n + 1, K(0));
  g[0] = K(1) / f.coeff(0);
  for (std::size_t k = 1; k <= n; ++k) {
    K s(0);
    for (std::size_t j = 1; j <= k; ++j) s += f.coeff(j) * g[k - j];
    g[k] = -s / f.coeff(0);
  }
  return Series<K>(std::move(g), n);
}

// f(g(t)) in the truncated ring (Horner). Requires g to have zero constant
// term; otherwise every coefficient would be an infinite sum.
template <typename K>
Series<K> compose(const Series<K>& f, const Series<K>& g) {
  if (g.coeff(0) != K(0))
    throw CompositionUndefined("compose: inner series has nonzero constant term");
  const std::size_t n = std::min(f.trunc(), g.trunc());
  const Series<K> gt = truncate_to(g, n);
  Series<K> acc = Series<K>::constant(f.coeff(n), n);
  for (std::size_t k = n; k-- > 0;) acc = acc * gt + f.coeff(k);
  return acc;
}

// Compositional inverse fbar with f(fbar) = fbar(f) = t, for a delta
// series. Coefficient-by-coefficient triangular solve: the t^k coefficient
// of f(partial fbar) is linear in the unknown b_k with slope c_1(f).
template <typename K>
Series<K> comp_inverse(const Series<K>& f) {
  if (!f.is_delta()) throw NotDelta("comp_inverse: series order is not 1");
  const std::size_t n = f.trunc();
  std::vector<K> b(n + 1, K(0));
  b[1] = K(1) / f.coeff(1);
  for (std::size_t k = 2; k <= n; ++k) {
    Series<K> partial(std::vector<K>(b.begin(), b.begin() + k + 1), k);
    const Series<K> residue = compose(truncate_to(f, k), partial);
    b[k] = -residue.coeff(k) / f.coeff(1);
  }
  return Series<K>(std::move(b), n);
}

// f^n by repeated squaring in the truncated ring; negative exponents go
// through the multiplicative inverse.
template <typename K>
Series<K> pow_int(const Series<K>& f, long long n) {
  if (n == 0) return Series<K>::one(f.trunc());
  Series<K> base = n < 0 ? mul_inverse(f) : f;
  unsigned long long e =
      n < 0 ? -static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  Series<K> acc = Series<K>::one(f.trunc());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// f / t^k, dropping k orders of truncation. This is the degree shift that
// turns a delta series into an invertible one, e.g. (e^t - 1)/t.
template <typename K>
Series<K> divide_by_t(const Series<K>& f, std::size_t k = 1) {
  if (f.trunc() < k) throw TruncationError("divide_by_t: truncation too small");
  for (std::size_t i = 0; i < k; ++i)
    if (f.coeff(i) != K(0)) throw NotDivisible("divide_by_t: order below divisor");
  return Series<K>(std::vector<K>(f.coeffs().begin() + k, f.coeffs().end()), f.trunc() - k);
}

using RatSeries = Series<Rat>;

// ---------------------------------------------------------------------------
// Builtin catalog: the named series the polynomial families are built from.
// ---------------------------------------------------------------------------

enum class Builtin {
  ExpT,            // e^t
  Expm1,           // e^t - 1
  Log1p,           // log(1 + t)
  T,               // t
  Const,           // c
  Expm1B,          // e^{bt} - 1           (b != 0)
  TExpA,           // t e^{at}             (a != 0)
  TOnePlusTPowA,   // t (1+t)^a            (a != 0)
  EulerF,          // (e^t - 1)/(e^t + 1)
  LaguerreFNeg,    // t/(t + 1)
  SStarF,          // t (e^t + 1)/2
};

// e^{ct}
inline RatSeries exp_series(const Rat& c, std::size_t trunc) {
  std::vector<Rat> v(trunc + 1);
  Rat term(1);
  for (std::size_t k = 0; k <= trunc; ++k) {
    v[k] = term;
    term = term * c / Rat(static_cast<long>(k + 1));
  }
  return RatSeries(std::move(v), trunc);
}

// (1+t)^r for arbitrary rational r, via generalized binomials.
inline RatSeries binomial_series(const Rat& r, std::size_t trunc) {
  std::vector<Rat> v(trunc + 1);
  for (std::size_t k = 0; k <= trunc; ++k) v[k] = gen_binomial(r, k);
  return RatSeries(std::move(v), trunc);
}

using BuiltinParams = std::map<std::string, Rat>;

namespace detail {
inline Rat require_param(const BuiltinParams& params, const std::string& name, bool nonzero) {
  auto it = params.find(name);
  if (it == params.end()) throw BadParams("builtin_series: missing parameter '" + name + "'");
  if (nonzero && it->second == 0)
    throw BadParams("builtin_series: parameter '" + name + "' must be nonzero");
  return it->second;
}
}  // namespace detail

inline RatSeries builtin_series(Builtin which, const BuiltinParams& params, std::size_t trunc) {
  switch (which) {
    case Builtin::ExpT:
      return exp_series(Rat(1), trunc);
    case Builtin::Expm1:
      return exp_series(Rat(1), trunc) - Rat(1);
    case Builtin::Log1p: {
      std::vector<Rat> v(trunc + 1, Rat(0));
      for (std::size_t k = 1; k <= trunc; ++k)
        v[k] = make_rat(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
      return RatSeries(std::move(v), trunc);
    }
    case Builtin::T:
      return RatSeries::t(trunc);
    case Builtin::Const:
      return RatSeries::constant(detail::require_param(params, "c", false), trunc);
    case Builtin::Expm1B:
      return exp_series(detail::require_param(params, "b", true), trunc) - Rat(1);
    case Builtin::TExpA: {
      const Rat a = detail::require_param(params, "a", true);
      std::vector<Rat> v(trunc + 1, Rat(0));
      Rat term(1);
      for (std::size_t k = 1; k <= trunc; ++k) {
        v[k] = term;  // a^{k-1}/(k-1)!
        term = term * a / Rat(static_cast<long>(k));
      }
      return RatSeries(std::move(v), trunc);
    }
    case Builtin::TOnePlusTPowA: {
      const Rat a = detail::require_param(params, "a", true);
      std::vector<Rat> v(trunc + 1, Rat(0));
      for (std::size_t k = 1; k <= trunc; ++k) v[k] = gen_binomial(a, k - 1);
      return RatSeries(std::move(v), trunc);
    }
    case Builtin::EulerF: {
      const RatSeries expt = exp_series(Rat(1), trunc);
      return (expt - Rat(1)) * mul_inverse(expt + Rat(1));
    }
    case Builtin::LaguerreFNeg: {
      // t/(t+1) = t - t^2 + t^3 - ...
      std::vector<Rat> v(trunc + 1, Rat(0));
      for (std::size_t k = 1; k <= trunc; ++k) v[k] = Rat(k % 2 == 1 ? 1 : -1);
      return RatSeries(std::move(v), trunc);
    }
    case Builtin::SStarF: {
      std::vector<Rat> v(trunc + 1, Rat(0));
      if (trunc >= 1) v[1] = Rat(1);
      for (std::size_t k = 2; k <= trunc; ++k) v[k] = make_rat(1, 2) / Rat(factorial(k - 1));
      return RatSeries(std::move(v), trunc);
    }
  }
  throw BadParams("builtin_series: unknown builtin");
}

inline const std::vector<std::pair<std::string, Builtin>>& builtin_names() {
  static const std::vector<std::pair<std::string, Builtin>> names = {
      {"EXP_T", Builtin::ExpT},
      {"EXPM1", Builtin::Expm1},
      {"LOG1P", Builtin::Log1p},
      {"T", Builtin::T},
      {"CONST", Builtin::Const},
      {"EXPM1_B", Builtin::Expm1B},
      {"T_EXP_A", Builtin::TExpA},
      {"T_ONE_PLUS_T_POW_A", Builtin::TOnePlusTPowA},
      {"EULER_F", Builtin::EulerF},
      {"LAGUERRE_F_NEG", Builtin::LaguerreFNeg},
      {"SSTAR_F", Builtin::SStarF},
  };
  return names;
}

inline RatSeries builtin_series(const std::string& name, const BuiltinParams& params,
                                std::size_t trunc) {
  for (const auto& [n, b] : builtin_names())
    if (n == name) return builtin_series(b, params, trunc);
  throw BadParams("builtin_series: unknown series name '" + name + "'");
}

}  // namespace umbra
