#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umbra/action.hpp"
#include "umbra/combinatorics.hpp"
#include "umbra/polynomial.hpp"
#include "umbra/series.hpp"

namespace umbra {

// ---------------------------------------------------------------------------
// Higher-order Bernoulli and Euler polynomials.
//
// B_n^{(r)}(x) is read off (t/(e^t-1))^r e^{xt}; E_n^{(r)}(x) off
// (2/(e^t+1))^r e^{xt}. Negative orders go through the reciprocal series
// ((e^t-1)/t)^{|r|}, which is invertible; r = 0 gives back x^n.
// ---------------------------------------------------------------------------

// (t/(e^t-1))^r at the given truncation.
inline RatSeries bernoulli_op(long long r, std::size_t trunc) {
  // (e^t-1)/t has ordinary coefficients 1/(k+1)!.
  std::vector<Rat> v(trunc + 1);
  for (std::size_t k = 0; k <= trunc; ++k) v[k] = Rat(1) / Rat(factorial(k + 1));
  const RatSeries expm1_over_t(std::move(v), trunc);
  return pow_int(expm1_over_t, -r);
}

// (2/(e^t+1))^r at the given truncation.
inline RatSeries euler_op(long long r, std::size_t trunc) {
  const RatSeries half_exp_plus_1 = (exp_series(Rat(1), trunc) + Rat(1)) * make_rat(1, 2);
  return pow_int(half_exp_plus_1, -r);
}

inline RatPoly bernoulli_high(std::size_t n, long long r) {
  return apply_series(bernoulli_op(r, n), RatPoly::monomial(n));
}

inline RatPoly euler_high(std::size_t n, long long r) {
  return apply_series(euler_op(r, n), RatPoly::monomial(n));
}

// B_k^{(r)} = B_k^{(r)}(0), the higher-order Bernoulli number.
inline Rat bernoulli_number_high(std::size_t k, long long r) {
  return bernoulli_op(r, k).umbral_coeff(k);
}

// ---------------------------------------------------------------------------
// Named polynomial families.
// ---------------------------------------------------------------------------

enum class Family {
  Falling,        // (x)_n
  ScaledFalling,  // (x/b)_n,  b != 0
  Monomial,       // x^n
  Bernoulli,      // B_n^{(r)}(x), integer r (Appell, not associated)
  Euler,          // E_n^{(r)}(x), integer r (Appell, not associated)
  Abel,           // A_n(x;a) = x(x-an)^{n-1},  a != 0
  Bell,           // phi_n(x) = sum_k S2(n,k) x^k
  MittagLeffler,  // M_n(x)
  LaguerreNeg,    // L_n(-x)
  PowerAssoc,     // S_n(x) associated to t(1+t)^a,  a != 0
  SStar,          // S*_n(x) = x E_{n-1}^{(n)}(x)
};

struct FamilyId {
  Family family;
  Rat param;  // a, b, or r depending on the family; unused otherwise

  static FamilyId falling() { return {Family::Falling, Rat(0)}; }
  static FamilyId monomial() { return {Family::Monomial, Rat(0)}; }
  static FamilyId bell() { return {Family::Bell, Rat(0)}; }
  static FamilyId mittag_leffler() { return {Family::MittagLeffler, Rat(0)}; }
  static FamilyId laguerre_neg() { return {Family::LaguerreNeg, Rat(0)}; }
  static FamilyId sstar() { return {Family::SStar, Rat(0)}; }
  static FamilyId scaled_falling(Rat b) {
    if (b == 0) throw BadParams("scaled falling factorial: b must be nonzero");
    return {Family::ScaledFalling, std::move(b)};
  }
  static FamilyId abel(Rat a) {
    if (a == 0) throw BadParams("Abel family: a must be nonzero");
    return {Family::Abel, std::move(a)};
  }
  static FamilyId power_assoc(Rat a) {
    if (a == 0) throw BadParams("power-s family: a must be nonzero");
    return {Family::PowerAssoc, std::move(a)};
  }
  static FamilyId bernoulli(long long r) { return {Family::Bernoulli, Rat(r)}; }
  static FamilyId euler(long long r) { return {Family::Euler, Rat(r)}; }

  bool operator==(const FamilyId&) const = default;
};

inline bool family_is_associated(Family f) {
  return f != Family::Bernoulli && f != Family::Euler;
}

inline bool family_has_param(Family f) {
  switch (f) {
    case Family::ScaledFalling:
    case Family::Bernoulli:
    case Family::Euler:
    case Family::Abel:
    case Family::PowerAssoc:
      return true;
    default:
      return false;
  }
}

// Parameter letter used on the CLI and in reports.
inline const char* family_param_name(Family f) {
  switch (f) {
    case Family::ScaledFalling:
      return "b";
    case Family::Bernoulli:
    case Family::Euler:
      return "r";
    case Family::Abel:
    case Family::PowerAssoc:
      return "a";
    default:
      return "";
  }
}

namespace detail {
inline long long integer_order(const Rat& r, const char* who) {
  if (!is_integer(r)) throw BadParams(std::string(who) + ": order r must be an integer");
  if (numerator(r) > 1000000 || numerator(r) < -1000000)
    throw BadParams(std::string(who) + ": order r out of range");
  return static_cast<long long>(numerator(r));
}
}  // namespace detail

// Closed form of the degree-n member of the family.
inline RatPoly family_poly(const FamilyId& id, std::size_t n) {
  switch (id.family) {
    case Family::Falling:
      return falling_poly(n);
    case Family::ScaledFalling: {
      if (id.param == 0) throw BadParams("scaled falling factorial: b must be nonzero");
      // (x/b)_n
      return scale_arg(falling_poly(n), Rat(1) / id.param);
    }
    case Family::Monomial:
      return RatPoly::monomial(n);
    case Family::Bernoulli:
      return bernoulli_high(n, detail::integer_order(id.param, "bernoulli family"));
    case Family::Euler:
      return euler_high(n, detail::integer_order(id.param, "euler family"));
    case Family::Abel: {
      if (id.param == 0) throw BadParams("Abel family: a must be nonzero");
      if (n == 0) return RatPoly::constant(Rat(1));
      // x (x - an)^{n-1}
      RatPoly base(std::vector<Rat>{-id.param * Rat(static_cast<long>(n)), Rat(1)});
      RatPoly acc = RatPoly::constant(Rat(1));
      for (std::size_t i = 0; i + 1 < n; ++i) acc *= base;
      return times_x(acc);
    }
    case Family::Bell: {
      std::vector<Rat> c(n + 1);
      for (std::size_t k = 0; k <= n; ++k) c[k] = Rat(stirling2(n, k));
      return RatPoly(std::move(c));
    }
    case Family::MittagLeffler: {
      // sum_k binom(n,k) (n-1)_{n-k} 2^k (x)_k
      RatPoly acc;
      for (std::size_t k = 0; k <= n; ++k) {
        const Rat w = Rat(binomial(n, k)) * falling(Rat(static_cast<long>(n) - 1), n - k) *
                      rat_pow(Rat(2), static_cast<long long>(k));
        if (w != 0) acc += falling_poly(k) * w;
      }
      return acc;
    }
    case Family::LaguerreNeg: {
      if (n == 0) return RatPoly::constant(Rat(1));
      std::vector<Rat> c(n + 1, Rat(0));
      for (std::size_t k = 1; k <= n; ++k)
        c[k] = Rat(binomial(n - 1, k - 1)) * Rat(factorial(n)) / Rat(factorial(k));
      return RatPoly(std::move(c));
    }
    case Family::PowerAssoc: {
      if (id.param == 0) throw BadParams("power-s family: a must be nonzero");
      if (n == 0) return RatPoly::constant(Rat(1));
      std::vector<Rat> c(n + 1, Rat(0));
      const Rat an = id.param * Rat(static_cast<long>(n));
      for (std::size_t k = 1; k <= n; ++k)
        c[k] = gen_binomial(-an, n - k) * falling(Rat(static_cast<long>(n) - 1), n - k);
      return RatPoly(std::move(c));
    }
    case Family::SStar: {
      if (n == 0) return RatPoly::constant(Rat(1));
      return times_x(euler_high(n - 1, static_cast<long long>(n)));
    }
  }
  throw BadParams("family_poly: unknown family");
}

// Defining pair (g, f) of an associated family; g = 1 throughout this
// catalog. Appell families (Bernoulli, Euler) are rejected.
inline std::pair<RatSeries, RatSeries> family_pair(const FamilyId& id, std::size_t trunc) {
  if (!family_is_associated(id.family))
    throw BadParams("family_pair: family is Appell, not associated");
  const RatSeries g = RatSeries::one(trunc);
  BuiltinParams params;
  Builtin which;
  switch (id.family) {
    case Family::Falling:
      which = Builtin::Expm1;
      break;
    case Family::ScaledFalling:
      which = Builtin::Expm1B;
      params["b"] = id.param;
      break;
    case Family::Monomial:
      which = Builtin::T;
      break;
    case Family::Abel:
      which = Builtin::TExpA;
      params["a"] = id.param;
      break;
    case Family::Bell:
      which = Builtin::Log1p;
      break;
    case Family::MittagLeffler:
      which = Builtin::EulerF;
      break;
    case Family::LaguerreNeg:
      which = Builtin::LaguerreFNeg;
      break;
    case Family::PowerAssoc:
      which = Builtin::TOnePlusTPowA;
      params["a"] = id.param;
      break;
    case Family::SStar:
      which = Builtin::SStarF;
      break;
    default:
      throw BadParams("family_pair: unknown family");
  }
  return {g, builtin_series(which, params, trunc)};
}

// CLI-facing family names.
inline const std::vector<std::pair<std::string, Family>>& family_names() {
  static const std::vector<std::pair<std::string, Family>> names = {
      {"falling", Family::Falling},
      {"scaled-falling", Family::ScaledFalling},
      {"monomial", Family::Monomial},
      {"bernoulli", Family::Bernoulli},
      {"euler", Family::Euler},
      {"abel", Family::Abel},
      {"bell", Family::Bell},
      {"mittag-leffler", Family::MittagLeffler},
      {"laguerre-neg", Family::LaguerreNeg},
      {"power-s", Family::PowerAssoc},
      {"sstar", Family::SStar},
  };
  return names;
}

inline std::optional<Family> family_from_name(const std::string& name) {
  for (const auto& [n, f] : family_names())
    if (n == name) return f;
  return std::nullopt;
}

inline std::string family_name(Family f) {
  for (const auto& [n, ff] : family_names())
    if (ff == f) return n;
  return "?";
}

}  // namespace umbra
