#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "umbra/action.hpp"
#include "umbra/combinatorics.hpp"
#include "umbra/engine.hpp"
#include "umbra/polynomial.hpp"
#include "umbra/sequences.hpp"
#include "umbra/series.hpp"

namespace umbra {

// Registry of the numbered identities, each checked by exact polynomial or
// scalar comparison. Where the displayed statement disagrees with the
// derivation it was read off from, both forms are registered: AS_STATED
// transcribes the display verbatim and is allowed to fail; DERIVATION
// transcribes the derivation line. Nothing here is ever "fixed" silently.

enum class Variant { AsStated, Derivation };
enum class VariantFilter { AsStated, Derivation, Both };
enum class CheckStatus { Pass, Fail, Error };

using ParamMap = std::map<std::string, Rat>;
using Value = std::variant<Rat, RatPoly>;

inline std::string variant_label(Variant v) {
  return v == Variant::AsStated ? "as-stated" : "derivation";
}

inline bool value_equal(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Rat>(a)) return std::get<Rat>(a) == std::get<Rat>(b);
  return std::get<RatPoly>(a) == std::get<RatPoly>(b);
}

inline Value value_diff(const Value& a, const Value& b) {
  if (std::holds_alternative<Rat>(a)) return std::get<Rat>(a) - std::get<Rat>(b);
  return std::get<RatPoly>(a) - std::get<RatPoly>(b);
}

// "p/q" for scalars, "[c0, c1, ...]" (ascending powers of x) for polynomials;
// the zero polynomial renders as "[0]".
inline std::string value_str(const Value& v) {
  if (std::holds_alternative<Rat>(v)) return rat_str(std::get<Rat>(v));
  const RatPoly& p = std::get<RatPoly>(v);
  if (p.is_zero()) return "[0]";
  std::string s = "[";
  const int deg = p.degree();
  for (int m = 0; m <= deg; ++m) {
    if (m) s += ", ";
    s += rat_str(p.coeff(static_cast<std::size_t>(m)));
  }
  return s + "]";
}

// One exact comparison produced by evaluating an identity at a given n.
struct Comparison {
  std::string label;  // sub-case such as "m=2"; empty when there is only one
  Value lhs;
  Value rhs;
};

struct CaseDiff {
  std::string label;
  Value lhs, rhs, diff;
};

struct NOutcome {
  int n = 0;
  CheckStatus status = CheckStatus::Pass;
  std::vector<CaseDiff> failures;  // populated on Fail
  std::string error;               // populated on Error (failed to evaluate)
};

struct IdentityReport {
  std::string id;
  std::string variant;  // "as-stated", "derivation", or "both" when they coincide
  ParamMap params;
  std::vector<NOutcome> outcomes;

  bool all_pass() const {
    for (const auto& o : outcomes)
      if (o.status != CheckStatus::Pass) return false;
    return true;
  }
};

struct IdentityInfo {
  std::string id;
  bool scalar = false;  // SCALAR vs POLY statement
  std::string summary;
  std::vector<std::string> params;  // required parameter names (all nonzero)
  int n_min = 1;
  int n_cap = 0;  // largest n the registered check is declared for; 0 = uncapped
  bool distinct_variants = false;
};

namespace detail {

using EvalFn = std::function<std::vector<Comparison>(Variant, int, const ParamMap&)>;

struct IdentityDef {
  IdentityInfo info;
  EvalFn eval;
};

inline RatPoly poly_pow(const RatPoly& base, std::size_t e) {
  RatPoly acc = RatPoly::constant(Rat(1));
  for (std::size_t i = 0; i < e; ++i) acc *= base;
  return acc;
}

// x (x - an)^{n-1-k}
inline RatPoly abel_tail(const Rat& an, std::size_t n, std::size_t k) {
  RatPoly base(std::vector<Rat>{-an, Rat(1)});
  return times_x(poly_pow(base, n - 1 - k));
}

inline Rat param(const ParamMap& p, const char* name) {
  auto it = p.find(name);
  if (it == p.end()) throw BadParams(std::string("identity needs parameter '") + name + "'");
  return it->second;
}

// B_0^{(0)}, B_1^{(1)}, ..., B_m^{(m)} -- the self-order Bernoulli numbers
// from t/((1+t)log(1+t)); shared by several multinomial sums.
inline std::vector<Rat> self_order_bernoulli(std::size_t m) {
  std::vector<Rat> b(m + 1);
  for (std::size_t k = 0; k <= m; ++k) b[k] = bernoulli_number_high(k, static_cast<long long>(k));
  return b;
}

inline const std::vector<IdentityDef>& identity_defs() {
  static const std::vector<IdentityDef> defs = [] {
    std::vector<IdentityDef> v;

    auto add = [&v](IdentityInfo info, EvalFn fn) {
      v.push_back({std::move(info), std::move(fn)});
    };

    // binom(n,m) as a Stirling double sum, full 0 <= m <= n matrix
    add({"thm1", true, "binom(n,m) = sum_l binom(l+m,l)/binom(l+n+1,l) S2(l+n+1,n+1) S1(n,l+m)",
         {}, 0, 0, false},
        [](Variant, int n, const ParamMap&) {
          std::vector<Comparison> out;
          const auto nn = static_cast<std::size_t>(n);
          for (std::size_t m = 0; m <= nn; ++m) {
            Rat rhs(0);
            for (std::size_t l = 0; l + m <= nn; ++l)
              rhs += Rat(binomial(l + m, l)) / Rat(binomial(l + nn + 1, l)) *
                     Rat(stirling2(l + nn + 1, nn + 1)) * Rat(stirling1(nn, l + m));
            out.push_back({"m=" + std::to_string(m), Rat(binomial(nn, m)), rhs});
          }
          return out;
        });

    // (x+1)^n as the same double sum, as a polynomial identity
    add({"eq5", false, "(x+1)^n = sum_{m,l} binom(l+m,l)/binom(l+n+1,l) S2(l+n+1,n+1) S1(n,l+m) x^m",
         {}, 0, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = shift(RatPoly::monomial(nn), Rat(1));
          std::vector<Rat> c(nn + 1, Rat(0));
          for (std::size_t m = 0; m <= nn; ++m)
            for (std::size_t l = 0; l + m <= nn; ++l)
              c[m] += Rat(binomial(l + m, l)) / Rat(binomial(l + nn + 1, l)) *
                      Rat(stirling2(l + nn + 1, nn + 1)) * Rat(stirling1(nn, l + m));
          return std::vector<Comparison>{{"", lhs, RatPoly(std::move(c))}};
        });

    // B_n^{(n+1)}(x+1) = (x)_n
    add({"lem2", false, "B_n^(n+1)(x+1) = (x)_n", {}, 0, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = shift(bernoulli_high(nn, static_cast<long long>(nn) + 1), Rat(1));
          return std::vector<Comparison>{{"", lhs, falling_poly(nn)}};
        });

    // B_{n-1}^{(n)}(x) = (x-1)_{n-1}
    add({"eq9", false, "B_{n-1}^(n)(x) = (x-1)_{n-1}", {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = bernoulli_high(nn - 1, static_cast<long long>(nn));
          return std::vector<Comparison>{{"", lhs, shift(falling_poly(nn - 1), Rat(-1))}};
        });

    // B_n^{(n)}(x+1) = integral of (u)_n over [x, x+1]
    add({"eq13", false, "B_n^(n)(x+1) = int_x^{x+1} (u)_n du", {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = shift(bernoulli_high(nn, static_cast<long long>(nn)), Rat(1));
          const RatPoly anti = antiderivative(falling_poly(nn));
          return std::vector<Comparison>{{"", lhs, shift(anti, Rat(1)) - anti}};
        });

    // B_n^{(n)}(x+1) = sum_l S1(n,l)/(l+1) (...powers...): the stated right
    // side integrates over [x-1, x]; the derivation's over [x, x+1].
    add({"thm3", false, "B_n^(n)(x+1) = sum_l S1(n,l)/(l+1) (x^{l+1} - (x-1)^{l+1})",
         {}, 1, 0, true},
        [](Variant variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = shift(bernoulli_high(nn, static_cast<long long>(nn)), Rat(1));
          RatPoly rhs;
          for (std::size_t l = 0; l <= nn; ++l) {
            const Rat s1(stirling1(nn, l));
            if (s1 == 0) continue;
            const RatPoly pw = RatPoly::monomial(l + 1);
            const RatPoly diffp = variant == Variant::AsStated
                                      ? pw - shift(pw, Rat(-1))
                                      : shift(pw, Rat(1)) - pw;
            rhs += diffp * (s1 / Rat(static_cast<long>(l + 1)));
          }
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // (x/b)_n three ways: Abel-substituted sum (as stated), the plain
    // x(x-an)^{n-1-k} sum it came from, and (x/b) B_{n-1}^{(n)}(x/b).
    add({"thm4", false,
         "(x/b)_n = sum_k binom(n-1,k) b^{k-n} B_k^(n)(an/b) A_{n-k}(x-ak;a) = (x/b) B_{n-1}^(n)(x/b)",
         {"a", "b"}, 1, 0, true},
        [](Variant variant, int n, const ParamMap& p) {
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a"), b = param(p, "b");
          const Rat an = a * Rat(static_cast<long>(n));
          const RatPoly lhs = family_poly(FamilyId::scaled_falling(b), nn);
          RatPoly rhs;
          for (std::size_t k = 0; k < nn; ++k) {
            const Rat w = Rat(binomial(nn - 1, k)) *
                          rat_pow(b, static_cast<long long>(k) - static_cast<long long>(nn)) *
                          bernoulli_high(k, static_cast<long long>(nn))(an / b);
            if (w == 0) continue;
            const RatPoly tail = variant == Variant::AsStated
                                     ? shift(family_poly(FamilyId::abel(a), nn - k),
                                             -a * Rat(static_cast<long>(k)))
                                     : abel_tail(an, nn, k);
            rhs += tail * w;
          }
          const RatPoly bform =
              scale_arg(bernoulli_high(nn - 1, static_cast<long long>(nn)), Rat(1) / b) *
              RatPoly(std::vector<Rat>{Rat(0), Rat(1) / b});
          return std::vector<Comparison>{{"", lhs, rhs}, {"b-form", lhs, bform}};
        });

    // The b = 1 remark: (x)_n = x B_{n-1}^{(n)}(x) = sum_k binom(n-1,k) B_k^(n)(an) ...
    add({"remark_b1", false,
         "(x)_n = x B_{n-1}^(n)(x) = sum_k binom(n-1,k) B_k^(n)(an) A_{n-k}(x-ak;a)",
         {"a"}, 1, 0, true},
        [](Variant variant, int n, const ParamMap& p) {
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a");
          const Rat an = a * Rat(static_cast<long>(n));
          const RatPoly lhs = falling_poly(nn);
          RatPoly rhs;
          for (std::size_t k = 0; k < nn; ++k) {
            const Rat w =
                Rat(binomial(nn - 1, k)) * bernoulli_high(k, static_cast<long long>(nn))(an);
            if (w == 0) continue;
            const RatPoly tail = variant == Variant::AsStated
                                     ? shift(family_poly(FamilyId::abel(a), nn - k),
                                             -a * Rat(static_cast<long>(k)))
                                     : abel_tail(an, nn, k);
            rhs += tail * w;
          }
          const RatPoly bform = times_x(bernoulli_high(nn - 1, static_cast<long long>(nn)));
          return std::vector<Comparison>{{"", lhs, rhs}, {"b-form", lhs, bform}};
        });

    // sum_k n binom(k+m-1,k)/(n+k) B_k^{(n+k)} S2(n,k+m) = delta_{m,n},
    // full 1 <= m <= n column
    add({"thm5", true, "sum_k n binom(k+m-1,k)/(n+k) B_k^(n+k) S2(n,k+m) = delta_{m,n}",
         {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          std::vector<Comparison> out;
          for (std::size_t m = 1; m <= nn; ++m) {
            Rat s(0);
            for (std::size_t k = 0; k + m <= nn; ++k)
              s += Rat(static_cast<long>(nn)) * Rat(binomial(k + m - 1, k)) /
                   Rat(static_cast<long>(nn + k)) *
                   bernoulli_number_high(k, static_cast<long long>(nn + k)) *
                   Rat(stirling2(nn, k + m));
            out.push_back({"m=" + std::to_string(m), s, Rat(m == nn ? 1 : 0)});
          }
          return out;
        });

    // (x)_n via the Mittag-Leffler transfer through (2/(e^t+1))^n
    add({"prop6", true,
         "(x)_n = sum_{k,l} binom(n,k)(n-1)_{n-k} 2^{k-n} S1(k-1,l) x E_l^(n)(x-1)",
         {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          RatPoly rhs;
          for (std::size_t k = 1; k <= nn; ++k) {
            const Rat w0 = Rat(binomial(nn, k)) * falling(Rat(static_cast<long>(nn) - 1), nn - k) *
                           rat_pow(Rat(2), static_cast<long long>(k) - static_cast<long long>(nn));
            if (w0 == 0) continue;
            for (std::size_t l = 0; l < k; ++l) {
              const Rat s1(stirling1(k - 1, l));
              if (s1 == 0) continue;
              rhs += times_x(shift(euler_high(l, static_cast<long long>(nn)), Rat(-1))) * (w0 * s1);
            }
          }
          return std::vector<Comparison>{{"", Value(falling_poly(nn)), Value(rhs)}};
        });

    // M_n(x) = x sum_k binom(n,k) (x+k-1)_{n-1}
    add({"cor7", false, "M_n(x) = x sum_k binom(n,k) (x+k-1)_{n-1}", {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = family_poly(FamilyId::mittag_leffler(), nn);
          RatPoly inner;
          for (std::size_t k = 0; k <= nn; ++k)
            inner += shift(falling_poly(nn - 1), Rat(static_cast<long>(k)) - 1) *
                     Rat(binomial(nn, k));
          return std::vector<Comparison>{{"", lhs, times_x(inner)}};
        });

    // Derivation twin of cor7: M_n = x (e^t+1)^n (x-1)_{n-1}, evaluated as
    // an operator identity through the series engine.
    add({"eq25", false, "M_n(x) = x (e^t+1)^n applied to (x-1)_{n-1}", {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = family_poly(FamilyId::mittag_leffler(), nn);
          const std::size_t tr = nn == 1 ? 1 : nn - 1;
          const RatSeries op = pow_int(exp_series(Rat(1), tr) + Rat(1), static_cast<long long>(nn));
          const RatPoly rhs = times_x(apply_series(op, shift(falling_poly(nn - 1), Rat(-1))));
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // S2(n,l) as a multinomial sum over products of self-order Bernoulli
    // numbers, 1 <= l <= n
    add({"thm8", true,
         "S2(n,l) = sum_m binom(n-1,m-1) binom(m-1,l-1) n!/m! sum_{|comp|=m-l} multinom prod B_{l_i}^(l_i)",
         {}, 1, 6, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const std::vector<Rat> bb = self_order_bernoulli(nn);
          std::vector<Comparison> out;
          for (std::size_t l = 1; l <= nn; ++l) {
            Rat s(0);
            for (std::size_t m = l; m <= nn; ++m) {
              const Rat w = Rat(binomial(nn - 1, m - 1)) * Rat(binomial(m - 1, l - 1)) *
                            Rat(factorial(nn)) / Rat(factorial(m));
              Rat inner(0);
              for (const auto& comp : Compositions(m - l, nn)) {
                Rat prod(multinomial(m - l, comp));
                for (std::size_t li : comp) prod *= bb[li];
                inner += prod;
              }
              s += w * inner;
            }
            out.push_back({"l=" + std::to_string(l), Rat(stirling2(nn, l)), s});
          }
          return out;
        });

    // A_n(x;a) as the triple Stirling sum; the stated form carries an (n!)^2
    // factor that the derivation (and exact evaluation) does not support.
    add({"lem9", false,
         "A_n(x;a) = [(n!)^2] b^{n-1} sum_{k,j,l} (-an/b)^{k-j} binom(k,j)binom(l,k) S2(j+n,n)S1(n-1,l)/binom(j+n,j) x(x/b-1)^{l-k}",
         {"a", "b"}, 1, 6, true},
        [](Variant variant, int n, const ParamMap& p) {
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a"), b = param(p, "b");
          const Rat an = a * Rat(static_cast<long>(n));
          const RatPoly lhs = family_poly(FamilyId::abel(a), nn);
          const RatPoly base(std::vector<Rat>{Rat(-1), Rat(1) / b});  // x/b - 1
          RatPoly rhs;
          for (std::size_t k = 0; k < nn; ++k)
            for (std::size_t j = 0; j <= k; ++j) {
              const Rat wj = rat_pow(-an / b, static_cast<long long>(k - j)) *
                             Rat(binomial(k, j)) * Rat(stirling2(j + nn, nn)) /
                             Rat(binomial(j + nn, j));
              if (wj == 0) continue;
              for (std::size_t l = k; l < nn; ++l) {
                const Rat w = wj * Rat(binomial(l, k)) * Rat(stirling1(nn - 1, l));
                if (w == 0) continue;
                rhs += times_x(poly_pow(base, l - k)) * w;
              }
            }
          rhs = rhs * rat_pow(b, static_cast<long long>(nn) - 1);
          if (variant == Variant::AsStated) {
            const Rat nfact2 = Rat(factorial(nn)) * Rat(factorial(nn));
            rhs = rhs * nfact2;
          }
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // Closed form of the sequence associated to t(1+t)^a vs the engine
    add({"prop10", false,
         "S_n(x) = sum_k binom(-an,n-k)(n-1)_{n-k} x^k equals the sequence associated to t(1+t)^a",
         {"a"}, 1, 0, false},
        [](Variant, int n, const ParamMap& p) {
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a");
          const RatPoly lhs = family_poly(FamilyId::power_assoc(a), nn);
          const RatSeries f = builtin_series(Builtin::TOnePlusTPowA, {{"a", a}}, nn);
          const RatPoly rhs = associated_sequence(f, nn)[nn];
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // Derivation twin: S_n = x (1+t)^{-an} x^{n-1}
    add({"eq43", false, "S_n(x) = x (1+t)^{-an} applied to x^{n-1}", {"a"}, 1, 0, false},
        [](Variant, int n, const ParamMap& p) {
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a");
          const Rat an = a * Rat(static_cast<long>(n));
          const RatPoly lhs = family_poly(FamilyId::power_assoc(a), nn);
          const RatSeries op = binomial_series(-an, nn == 1 ? 1 : nn - 1);
          const RatPoly rhs = times_x(apply_series(op, RatPoly::monomial(nn - 1)));
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // S2(n,m) via negative-order Bernoulli values, full 0 <= m <= n column
    add({"thm11", true,
         "S2(n,m) = sum_l binom(-an,n-l)(n-1)_{n-l} binom(l-1,m-1) B_{l-m}^{(l-m-n+1)}(an+1)",
         {"a"}, 1, 8, false},
        [](Variant, int n, const ParamMap& p) {
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a");
          const Rat an = a * Rat(static_cast<long>(n));
          std::vector<Comparison> out;
          for (std::size_t m = 0; m <= nn; ++m) {
            Rat s(0);
            // m = 0: binom(l-1,-1) = 0 throughout, an empty sum
            if (m >= 1)
              for (std::size_t l = m; l <= nn; ++l) {
                const long long ord = static_cast<long long>(l) - static_cast<long long>(m) -
                                      static_cast<long long>(nn) + 1;
                s += gen_binomial(-an, nn - l) * falling(Rat(static_cast<long>(nn) - 1), nn - l) *
                     Rat(binomial(l - 1, m - 1)) * bernoulli_high(l - m, ord)(an + 1);
              }
            out.push_back({"m=" + std::to_string(m), Rat(stirling2(nn, m)), s});
          }
          return out;
        });

    // x E_{n-1}^{(n)}(x) as an Abel-weighted Euler sum; as stated it applies
    // the same x -> x - ak substitution as thm4 and fails from n = 2 on.
    add({"thm12", false,
         "x E_{n-1}^(n)(x) = sum_k binom(n-1,k) E_k^(n)(an) A_{n-k}(x-ak;a)",
         {"a"}, 1, 0, true},
        [](Variant variant, int n, const ParamMap& p) {
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a");
          const Rat an = a * Rat(static_cast<long>(n));
          const RatPoly lhs = times_x(euler_high(nn - 1, static_cast<long long>(nn)));
          RatPoly rhs;
          // the stated upper limit is k = n; binom(n-1,n) = 0 kills that term
          for (std::size_t k = 0; k < nn; ++k) {
            const Rat w =
                Rat(binomial(nn - 1, k)) * euler_high(k, static_cast<long long>(nn))(an);
            if (w == 0) continue;
            const RatPoly tail = variant == Variant::AsStated
                                     ? shift(family_poly(FamilyId::abel(a), nn - k),
                                             -a * Rat(static_cast<long>(k)))
                                     : abel_tail(an, nn, k);
            rhs += tail * w;
          }
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // S*_n built by the engine from t(e^t+1)/2 equals x E_{n-1}^{(n)}(x)
    add({"eq47", false, "S*_n(x) = x E_{n-1}^(n)(x)", {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatSeries f = builtin_series(Builtin::SStarF, {}, nn);
          const RatPoly lhs = associated_sequence(f, nn)[nn];
          const RatPoly rhs = times_x(euler_high(nn - 1, static_cast<long long>(nn)));
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // Transfer consistency: x^n = x ((e^t-1)/t)^n x^{-1} (x)_n
    add({"eq3", false, "x^n = x ((e^t-1)/t)^n x^{-1} (x)_n", {}, 1, 0, false},
        [](Variant, int n, const ParamMap&) {
          const auto nn = static_cast<std::size_t>(n);
          const RatPoly lhs = RatPoly::monomial(nn);
          const RatPoly rhs = transfer(falling_poly(nn), builtin_series(Builtin::Expm1, {}, nn),
                                       RatSeries::t(nn), nn);
          return std::vector<Comparison>{{"", lhs, rhs}};
        });

    // Operator identity ((e^t-1)/t) B_l^{(n+1)}(x) = B_l^{(n)}(x); at each
    // order n the whole column l = 0..max(8, n) is checked.
    add({"eq11_12", false, "((e^t-1)/t) B_l^(n+1)(x) = B_l^(n)(x)", {}, 0, 0, false},
        [](Variant, int n, const ParamMap&) {
          std::vector<Comparison> out;
          const std::size_t l_max = std::max<std::size_t>(8, static_cast<std::size_t>(n));
          for (std::size_t l = 0; l <= l_max; ++l) {
            const RatSeries op = bernoulli_op(-1, std::max<std::size_t>(l, 1));
            const RatPoly lhs =
                apply_series(op, bernoulli_high(l, static_cast<long long>(n) + 1));
            out.push_back(
                {"l=" + std::to_string(l), lhs, bernoulli_high(l, static_cast<long long>(n))});
          }
          return out;
        });

    // Multinomial expansion of (t/((1+t)log(1+t)))^n, umbral coefficients
    // k = 0..8 against the direct power
    add({"eq31", true,
         "a_k[(t/((1+t)log(1+t)))^n] = sum_{|comp|=k} multinom prod B_{l_i}^(l_i)",
         {}, 1, 5, false},
        [](Variant, int n, const ParamMap&) {
          constexpr std::size_t k_max = 8;
          const RatSeries log_over_t = divide_by_t(builtin_series(Builtin::Log1p, {}, k_max + 1));
          const RatSeries one_plus_t =
              RatSeries::t(k_max) + Rat(1);  // 1 + t at matching truncation
          const RatSeries base = mul_inverse(one_plus_t * log_over_t);
          const RatSeries f = pow_int(base, n);
          const std::vector<Rat> bb = self_order_bernoulli(k_max);
          std::vector<Comparison> out;
          for (std::size_t k = 0; k <= k_max; ++k) {
            Rat rhs(0);
            for (const auto& comp : Compositions(k, static_cast<std::size_t>(n))) {
              Rat prod(multinomial(k, comp));
              for (std::size_t li : comp) prod *= bb[li];
              rhs += prod;
            }
            out.push_back({"k=" + std::to_string(k), f.umbral_coeff(k), rhs});
          }
          return out;
        });

    // Umbral coefficients of ((e^{bt}-1)/(t e^{at}))^n; the stated formula
    // carries the same spurious (n!)^2 as lem9.
    add({"eq36", true,
         "a_k[((e^{bt}-1)/(te^{at}))^n] = [(n!)^2] b^n sum_j (-1)^{k-j} binom(k,j) S2(j+n,n)/binom(j+n,j) (an)^{k-j} b^j",
         {"a", "b"}, 1, 5, true},
        [](Variant variant, int n, const ParamMap& p) {
          constexpr std::size_t k_max = 6;
          const auto nn = static_cast<std::size_t>(n);
          const Rat a = param(p, "a"), b = param(p, "b");
          const Rat an = a * Rat(static_cast<long>(n));
          const RatSeries base =
              divide_by_t(builtin_series(Builtin::Expm1B, {{"b", b}}, k_max + 1)) *
              exp_series(-a, k_max);
          const RatSeries f = pow_int(base, n);
          const Rat factor = variant == Variant::AsStated
                                 ? Rat(factorial(nn)) * Rat(factorial(nn)) *
                                       rat_pow(b, static_cast<long long>(nn))
                                 : rat_pow(b, static_cast<long long>(nn));
          std::vector<Comparison> out;
          for (std::size_t k = 0; k <= k_max; ++k) {
            Rat s(0);
            for (std::size_t j = 0; j <= k; ++j)
              s += rat_pow(-an, static_cast<long long>(k - j)) * Rat(binomial(k, j)) *
                   Rat(stirling2(j + nn, nn)) / Rat(binomial(j + nn, j)) *
                   rat_pow(b, static_cast<long long>(j));
            out.push_back({"k=" + std::to_string(k), f.umbral_coeff(k), factor * s});
          }
          return out;
        });

    return v;
  }();
  return defs;
}

inline const IdentityDef& find_identity(const std::string& id) {
  for (const auto& def : identity_defs())
    if (def.info.id == id) return def;
  throw UnknownIdentity("unknown identity '" + id + "'");
}

inline void check_params(const IdentityInfo& info, const ParamMap& params) {
  for (const auto& name : info.params) {
    auto it = params.find(name);
    if (it == params.end())
      throw BadParams("identity '" + info.id + "' needs parameter '" + name + "'");
    if (it->second == 0)
      throw BadParams("identity '" + info.id + "': parameter '" + name + "' must be nonzero");
  }
}

}  // namespace detail

inline const std::vector<IdentityInfo>& identity_registry() {
  static const std::vector<IdentityInfo> infos = [] {
    std::vector<IdentityInfo> v;
    for (const auto& def : detail::identity_defs()) v.push_back(def.info);
    return v;
  }();
  return infos;
}

// Evaluates one identity at the given n values with one concrete parameter
// binding. n values outside the identity's declared domain are skipped, so
// an empty range yields an empty report.
inline IdentityReport verify(const std::string& id, Variant variant, const std::vector<int>& ns,
                             const ParamMap& params = {}) {
  const auto& def = detail::find_identity(id);
  detail::check_params(def.info, params);
  ParamMap used;
  for (const auto& name : def.info.params) used[name] = params.at(name);

  IdentityReport report;
  report.id = id;
  report.variant = def.info.distinct_variants ? variant_label(variant) : "both";
  report.params = used;
  for (int n : ns) {
    if (n < def.info.n_min) continue;
    if (def.info.n_cap > 0 && n > def.info.n_cap) continue;
    NOutcome outcome;
    outcome.n = n;
    try {
      for (auto& cmp : def.eval(variant, n, used)) {
        if (!value_equal(cmp.lhs, cmp.rhs)) {
          outcome.status = CheckStatus::Fail;
          outcome.failures.push_back(
              {cmp.label, cmp.lhs, cmp.rhs, value_diff(cmp.lhs, cmp.rhs)});
        }
      }
    } catch (const Error& e) {
      outcome.status = CheckStatus::Error;
      outcome.error = e.what();
      outcome.failures.clear();
    }
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

inline std::map<std::string, std::vector<Rat>> default_param_sweep() {
  return {{"a", {Rat(1), make_rat(-1, 2), Rat(3)}}, {"b", {Rat(1), Rat(2), make_rat(-1, 3)}}};
}

namespace detail {

inline std::vector<ParamMap> param_combos(const IdentityInfo& info,
                                          const std::map<std::string, std::vector<Rat>>& sweep) {
  std::vector<ParamMap> combos{ParamMap{}};
  for (const auto& name : info.params) {
    auto it = sweep.find(name);
    if (it == sweep.end() || it->second.empty())
      throw BadParams("no values supplied for parameter '" + name + "'");
    std::vector<ParamMap> next;
    for (const auto& combo : combos)
      for (const auto& value : it->second) {
        ParamMap c = combo;
        c[name] = value;
        next.push_back(std::move(c));
      }
    combos = std::move(next);
  }
  return combos;
}

}  // namespace detail

// Runs the requested identities (all registered ones when `ids` is empty)
// over n = 1..n_max, sweeping parameters, in registry order. Evaluation
// problems become Error outcomes instead of aborting the batch.
inline std::vector<IdentityReport> verify_all(
    int n_max, VariantFilter filter = VariantFilter::Both,
    const std::map<std::string, std::vector<Rat>>& sweep = default_param_sweep(),
    const std::vector<std::string>& ids = {}) {
  std::vector<IdentityReport> reports;
  for (const auto& def : detail::identity_defs()) {
    if (!ids.empty()) {
      bool wanted = false;
      for (const auto& id : ids) wanted = wanted || id == def.info.id;
      if (!wanted) continue;
    }
    std::vector<int> ns;
    for (int n = std::max(1, def.info.n_min); n <= n_max; ++n)
      if (def.info.n_cap == 0 || n <= def.info.n_cap) ns.push_back(n);

    std::vector<Variant> variants;
    if (!def.info.distinct_variants) {
      variants = {Variant::Derivation};  // single run, reported as "both"
    } else if (filter == VariantFilter::AsStated) {
      variants = {Variant::AsStated};
    } else if (filter == VariantFilter::Derivation) {
      variants = {Variant::Derivation};
    } else {
      variants = {Variant::AsStated, Variant::Derivation};
    }

    for (const auto& combo : detail::param_combos(def.info, sweep))
      for (Variant v : variants) reports.push_back(verify(def.info.id, v, ns, combo));
  }
  return reports;
}

}  // namespace umbra
