#include <doctest.h>

#include <random>
#include <vector>

#include "umbra/combinatorics.hpp"
#include "umbra/sequences.hpp"
#include "umbra/series.hpp"

using namespace umbra;

namespace {

// Independent oracle: Bernoulli numbers from sum_{k<n} binom(n+1,k) B_k = -B_n (n+1 choose n),
// i.e. B_n = -1/(n+1) sum_{k=0}^{n-1} binom(n+1,k) B_k.
std::vector<Rat> bernoulli_numbers(std::size_t n_max) {
  std::vector<Rat> b(n_max + 1);
  b[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rat s(0);
    for (std::size_t k = 0; k < n; ++k) s += Rat(binomial(n + 1, k)) * b[k];
    b[n] = -s / Rat(static_cast<long>(n + 1));
  }
  return b;
}

// Independent oracle: solve q * den = num coefficient by coefficient,
// den invertible. Deliberately separate from mul_inverse.
std::vector<Rat> divide_coeffs(const std::vector<Rat>& num, const std::vector<Rat>& den) {
  std::vector<Rat> q(num.size());
  for (std::size_t k = 0; k < num.size(); ++k) {
    Rat s = num[k];
    for (std::size_t j = 1; j <= k; ++j) s -= den[j] * q[k - j];
    q[k] = s / den[0];
  }
  return q;
}

RatSeries expm1_series(std::size_t trunc) { return builtin_series(Builtin::Expm1, {}, trunc); }

std::mt19937 rng(20260809);

Rat random_small_rat() {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  return make_rat(num(rng), den(rng));
}

RatSeries random_series(std::size_t trunc, std::size_t min_order) {
  std::vector<Rat> c(trunc + 1, Rat(0));
  for (std::size_t k = min_order; k <= trunc; ++k) c[k] = random_small_rat();
  if (c.size() > min_order && c[min_order] == 0) c[min_order] = 1;
  return RatSeries(std::move(c), trunc);
}

}  // namespace

TEST_CASE("series construction and coefficient conventions") {
  const RatSeries e2({Rat(1), Rat(1), make_rat(1, 2)}, 2);  // e^t to order 2
  CHECK(e2 == builtin_series(Builtin::ExpT, {}, 2));
  CHECK(e2.umbral_coeff(2) == 1);  // a_k = k! c_k

  const RatSeries t({Rat(0), Rat(1)}, 1);
  CHECK(t == RatSeries::t(1));

  CHECK_THROWS_AS(RatSeries({Rat(1), Rat(2)}, 2), BadParams);
}

TEST_CASE("t/(e^t-1) by independent long division") {
  // oracle: divide t by (e^t - 1) coefficient-wise after cancelling one t
  std::vector<Rat> den(9);  // (e^t-1)/t
  for (std::size_t k = 0; k < den.size(); ++k) den[k] = Rat(1) / Rat(factorial(k + 1));
  std::vector<Rat> num(9, Rat(0));
  num[0] = 1;
  const auto q = divide_coeffs(num, den);
  CHECK(q[0] == 1);
  CHECK(q[1] == make_rat(-1, 2));
  CHECK(q[2] == make_rat(1, 12));
  CHECK(q[3] == 0);
  CHECK(q[4] == make_rat(-1, 720));

  // and the library agrees, via mul_inverse of the shifted-down series
  const RatSeries lib = mul_inverse(divide_by_t(expm1_series(9)));
  for (std::size_t k = 0; k <= 8; ++k) CHECK(lib.coeff(k) == q[k]);

  // construction from raw coefficients
  const RatSeries s({Rat(1), make_rat(-1, 2), make_rat(1, 12)}, 2);
  CHECK(s == truncate_to(lib, 2));
}

TEST_CASE("order_of") {
  CHECK(order_of(expm1_series(6)) == std::size_t{1});
  CHECK(order_of(mul_inverse(divide_by_t(expm1_series(7)))) == std::size_t{0});
  CHECK(order_of(RatSeries::zero(8)) == std::nullopt);  // INFINITE, not trunc+1
}

TEST_CASE("ring operations truncate to the shorter operand") {
  CHECK(expm1_series(5) + Rat(1) == builtin_series(Builtin::ExpT, {}, 5));

  const RatSeries prod = RatSeries::t(6) * expm1_series(6);
  CHECK(prod.coeff(0) == 0);
  CHECK(prod.coeff(1) == 0);
  CHECK(prod.coeff(2) == 1);
  CHECK(prod.coeff(3) == make_rat(1, 2));

  CHECK((expm1_series(7) - expm1_series(4)).trunc() == 4);

  // (e^t-1)/t times its reciprocal is exactly 1
  const RatSeries a = divide_by_t(expm1_series(11));
  CHECK(a * mul_inverse(a) == RatSeries::one(10));
}

TEST_CASE("mul_inverse") {
  CHECK(mul_inverse(RatSeries::one(6)) == RatSeries::one(6));
  CHECK_THROWS_AS(mul_inverse(expm1_series(6)), NotInvertible);

  // Bernoulli numbers appear as umbral coefficients of t/(e^t-1)
  const auto bern = bernoulli_numbers(10);
  const RatSeries s = mul_inverse(divide_by_t(expm1_series(11)));
  for (std::size_t k = 0; k <= 10; ++k) CHECK(s.umbral_coeff(k) == bern[k]);
}

TEST_CASE("every invertible builtin satisfies f * f^{-1} = 1 at trunc 16") {
  const std::vector<RatSeries> fs = {
      builtin_series(Builtin::ExpT, {}, 16),
      builtin_series(Builtin::ExpT, {}, 16) + Rat(1),
      divide_by_t(expm1_series(17)),
      mul_inverse(divide_by_t(expm1_series(17))),
      binomial_series(make_rat(-5, 2), 16),
      exp_series(make_rat(2, 3), 16),
  };
  for (const auto& f : fs) CHECK(f * mul_inverse(f) == RatSeries::one(16));
}

TEST_CASE("compose") {
  const RatSeries f = random_series(9, 0);
  CHECK(compose(f, RatSeries::t(9)) == f);

  // e^{log(1+t)} - 1 = t, checked to order 10
  const RatSeries lg = builtin_series(Builtin::Log1p, {}, 10);
  CHECK(compose(expm1_series(10), lg) == RatSeries::t(10));

  // (t + t^2)^2 = t^2 + 2t^3 + t^4
  const RatSeries inner({Rat(0), Rat(1), Rat(1), Rat(0), Rat(0)}, 4);
  const RatSeries sq({Rat(0), Rat(0), Rat(1), Rat(0), Rat(0)}, 4);
  const RatSeries got = compose(sq, inner);
  CHECK(got == RatSeries({Rat(0), Rat(0), Rat(1), Rat(2), Rat(1)}, 4));

  CHECK_THROWS_AS(compose(f, RatSeries::one(9)), CompositionUndefined);
}

TEST_CASE("comp_inverse") {
  CHECK(comp_inverse(RatSeries::t(8)) == RatSeries::t(8));

  // inverse of e^t - 1 is log(1+t): alternating harmonic coefficients
  const RatSeries inv = comp_inverse(expm1_series(10));
  for (std::size_t k = 1; k <= 10; ++k)
    CHECK(inv.coeff(k) == make_rat(k % 2 == 1 ? 1 : -1, static_cast<long>(k)));
  CHECK(inv.coeff(0) == 0);

  // inverse of t/(t+1) is t/(1-t): solve w/(w+1) = t  =>  w = t/(1-t)
  const RatSeries lag = builtin_series(Builtin::LaguerreFNeg, {}, 9);
  const RatSeries lag_inv = comp_inverse(lag);
  for (std::size_t k = 1; k <= 9; ++k) CHECK(lag_inv.coeff(k) == 1);

  CHECK_THROWS_AS(comp_inverse(RatSeries::one(5)), NotDelta);
  CHECK_THROWS_AS(comp_inverse(RatSeries::zero(5)), NotDelta);
}

TEST_CASE("delta builtins round-trip through comp_inverse at trunc 16") {
  const std::vector<RatSeries> deltas = {
      expm1_series(16),
      builtin_series(Builtin::Log1p, {}, 16),
      RatSeries::t(16),
      builtin_series(Builtin::Expm1B, {{"b", Rat(2)}}, 16),
      builtin_series(Builtin::Expm1B, {{"b", make_rat(-1, 3)}}, 16),
      builtin_series(Builtin::TExpA, {{"a", Rat(1)}}, 16),
      builtin_series(Builtin::TExpA, {{"a", make_rat(-1, 2)}}, 16),
      builtin_series(Builtin::TOnePlusTPowA, {{"a", Rat(3)}}, 16),
      builtin_series(Builtin::TOnePlusTPowA, {{"a", make_rat(-1, 2)}}, 16),
      builtin_series(Builtin::EulerF, {}, 16),
      builtin_series(Builtin::LaguerreFNeg, {}, 16),
      builtin_series(Builtin::SStarF, {}, 16),
  };
  for (const auto& f : deltas) {
    const RatSeries fbar = comp_inverse(f);
    CHECK(compose(f, fbar) == RatSeries::t(16));
    CHECK(compose(fbar, f) == RatSeries::t(16));
  }

  // and for random delta series across every truncation up to 16
  for (std::size_t trunc = 1; trunc <= 16; ++trunc) {
    for (int i = 0; i < 3; ++i) {
      const RatSeries f = random_series(trunc, 1);
      const RatSeries fbar = comp_inverse(f);
      CHECK(compose(f, fbar) == RatSeries::t(trunc));
      CHECK(compose(fbar, f) == RatSeries::t(trunc));
    }
  }
}

TEST_CASE("random invertible series invert exactly across truncations") {
  for (std::size_t trunc = 0; trunc <= 16; ++trunc)
    for (int i = 0; i < 3; ++i) {
      const RatSeries f = random_series(trunc, 0);
      CHECK(f * mul_inverse(f) == RatSeries::one(trunc));
    }
}

TEST_CASE("pow_int") {
  const RatSeries f = random_series(8, 0);
  CHECK(pow_int(f, 0) == RatSeries::one(8));

  // ((e^t-1)/t)^2: ordinary coefficient of t^l is 2!/(l+2)! S2(l+2,2)
  const RatSeries sq = pow_int(divide_by_t(expm1_series(9)), 2);
  for (std::size_t l = 0; l <= 8; ++l)
    CHECK(sq.coeff(l) == Rat(2) / Rat(factorial(l + 2)) * Rat(stirling2(l + 2, 2)));

  CHECK(pow_int(mul_inverse(divide_by_t(expm1_series(9))), -1) == divide_by_t(expm1_series(9)));
  CHECK_THROWS_AS(pow_int(expm1_series(6), -2), NotInvertible);

  // exponent additivity on invertible series
  for (long long m = -3; m <= 3; ++m)
    for (long long n = -3; n <= 3; ++n)
      CHECK(pow_int(f, m + n) == pow_int(f, m) * pow_int(f, n));
}

TEST_CASE("builtin catalog") {
  const RatSeries lg = builtin_series("LOG1P", {}, 3);
  CHECK(lg == RatSeries({Rat(0), Rat(1), make_rat(-1, 2), make_rat(1, 3)}, 3));

  CHECK(builtin_series("T_EXP_A", {{"a", Rat(1)}}, 2) == RatSeries({Rat(0), Rat(1), Rat(1)}, 2));

  // (e^t-1)/(e^t+1) by independent division oracle
  std::vector<Rat> num(4), den(4);
  for (std::size_t k = 0; k < 4; ++k) {
    num[k] = k == 0 ? Rat(0) : Rat(1) / Rat(factorial(k));
    den[k] = (k == 0 ? Rat(2) : Rat(1) / Rat(factorial(k)));
  }
  const auto q = divide_coeffs(num, den);
  const RatSeries euler_f = builtin_series("EULER_F", {}, 3);
  for (std::size_t k = 0; k <= 3; ++k) CHECK(euler_f.coeff(k) == q[k]);
  CHECK(euler_f == RatSeries({Rat(0), make_rat(1, 2), Rat(0), make_rat(-1, 24)}, 3));

  CHECK(builtin_series("SSTAR_F", {}, 3) ==
        RatSeries({Rat(0), Rat(1), make_rat(1, 2), make_rat(1, 4)}, 3));
  CHECK(builtin_series("T", {}, 2) == RatSeries::t(2));
  CHECK(builtin_series("CONST", {{"c", make_rat(3, 4)}}, 1) ==
        RatSeries::constant(make_rat(3, 4), 1));

  CHECK_THROWS_AS(builtin_series("NO_SUCH_SERIES", {}, 4), BadParams);
  CHECK_THROWS_AS(builtin_series("EXPM1_B", {}, 4), BadParams);           // missing b
  CHECK_THROWS_AS(builtin_series("T_EXP_A", {{"a", Rat(0)}}, 4), BadParams);  // zero a
}

TEST_CASE("truncate_to never extends") {
  const RatSeries f = expm1_series(6);
  CHECK(truncate_to(f, 6) == f);
  CHECK(truncate_to(f, 2).trunc() == 2);
  CHECK_THROWS_AS(truncate_to(f, 7), TruncationError);
}

TEST_CASE("divide_by_t demands sufficient order") {
  CHECK(divide_by_t(RatSeries::t(4)) == RatSeries::one(3));
  CHECK_THROWS_AS(divide_by_t(RatSeries::one(4)), NotDivisible);
  const RatSeries t2({Rat(0), Rat(0), Rat(5)}, 2);
  CHECK(divide_by_t(t2, 2) == RatSeries::constant(Rat(5), 0));
  CHECK_THROWS_AS(divide_by_t(t2, 3), TruncationError);
}

TEST_CASE("degenerate truncations") {
  CHECK_THROWS_AS(RatSeries::t(0), BadParams);
  CHECK(RatSeries::zero(0).trunc() == 0);
  CHECK(pow_int(RatSeries::zero(5), 3) == RatSeries::zero(5));
  CHECK_THROWS_AS(pow_int(RatSeries::zero(5), -1), NotInvertible);
  CHECK_THROWS_AS(RatSeries::one(3).coeff(4), TruncationError);
}

// --- generating-function cross-checks --------------------------------------

TEST_CASE("((e^t-1)/t)^n matches the Stirling-2 expansion, n <= 8") {
  for (long long n = 1; n <= 8; ++n) {
    const RatSeries f = pow_int(divide_by_t(expm1_series(9)), n);
    for (std::size_t l = 0; l <= 8; ++l)
      CHECK(f.coeff(l) ==
            Rat(factorial(static_cast<std::size_t>(n))) /
                Rat(factorial(l + static_cast<std::size_t>(n))) *
                Rat(stirling2(l + static_cast<std::size_t>(n), static_cast<std::size_t>(n))));
  }
}

TEST_CASE("(log(1+t)/t)^n umbral coefficients are n B_k^{(n+k)}/(n+k)") {
  for (long long n = 1; n <= 6; ++n) {
    const RatSeries f = pow_int(divide_by_t(builtin_series(Builtin::Log1p, {}, 9)), n);
    for (std::size_t k = 0; k <= 8; ++k)
      CHECK(f.umbral_coeff(k) == Rat(n) / Rat(static_cast<long long>(k) + n) *
                                     bernoulli_number_high(k, n + static_cast<long long>(k)));
  }
}

TEST_CASE("t/((1+t)log(1+t)) umbral coefficients are B_k^{(k)}") {
  const std::size_t kmax = 10;
  const RatSeries log_over_t = divide_by_t(builtin_series(Builtin::Log1p, {}, kmax + 1));
  const RatSeries base = mul_inverse((RatSeries::t(kmax) + Rat(1)) * log_over_t);
  for (std::size_t k = 0; k <= kmax; ++k)
    CHECK(base.umbral_coeff(k) == bernoulli_number_high(k, static_cast<long long>(k)));
}

TEST_CASE("(1+t)^{x-1} (t/log(1+t))^n expands through B_k^{(k-n+1)}(x)") {
  const std::size_t kmax = 8;
  const RatSeries t_over_log =
      mul_inverse(divide_by_t(builtin_series(Builtin::Log1p, {}, kmax + 1)));
  for (const Rat& x : {Rat(0), Rat(1), make_rat(5, 2)}) {
    for (long long n = 1; n <= 5; ++n) {
      const RatSeries f = binomial_series(x - 1, kmax) * pow_int(t_over_log, n);
      for (std::size_t k = 0; k <= kmax; ++k) {
        const long long order = static_cast<long long>(k) - n + 1;
        CHECK(f.umbral_coeff(k) == bernoulli_high(k, order)(x));
      }
    }
  }
}
