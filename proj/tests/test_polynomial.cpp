#include <doctest.h>

#include <random>

#include "umbra/action.hpp"
#include "umbra/combinatorics.hpp"
#include "umbra/polynomial.hpp"
#include "umbra/series.hpp"

using namespace umbra;

namespace {

std::mt19937 rng(918273645);

Rat small_rat() {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  return make_rat(num(rng), den(rng));
}

RatPoly random_poly(int max_deg) {
  std::uniform_int_distribution<int> d(0, max_deg);
  const int deg = d(rng);
  std::vector<Rat> c(static_cast<std::size_t>(deg) + 1);
  for (auto& v : c) v = small_rat();
  return RatPoly(std::move(c));
}

RatSeries random_series(std::size_t trunc) {
  std::vector<Rat> c(trunc + 1);
  for (auto& v : c) v = small_rat();
  return RatSeries(std::move(c), trunc);
}

const RatPoly x = RatPoly::monomial(1);

}  // namespace

TEST_CASE("poly ring basics") {
  CHECK(x * (x - RatPoly::constant(Rat(1))) == RatPoly({Rat(0), Rat(-1), Rat(1)}));
  CHECK((RatPoly({Rat(0), Rat(-1), Rat(1)}))(Rat(3)) == 6);
  const RatPoly p = (x - RatPoly::constant(Rat(1))) * (x - RatPoly::constant(Rat(2)));
  CHECK(p(make_rat(1, 2)) == make_rat(3, 4));
}

TEST_CASE("canonical form: no trailing zeros, zero poly is empty") {
  const RatPoly p({Rat(1), Rat(2), Rat(0), Rat(0)});
  CHECK(p.degree() == 1);
  CHECK(p.coeffs().size() == 2);

  const RatPoly z({Rat(0), Rat(0)});
  CHECK(z.is_zero());
  CHECK(z.degree() == RatPoly::kNegInfinity);
  CHECK(z == RatPoly());
  CHECK(z.coeff(5) == 0);

  CHECK(p - p == RatPoly());
}

TEST_CASE("apply_series") {
  // t^k p(x) = p^(k)(x)
  CHECK(apply_series(RatSeries::t(3), RatPoly::monomial(3)) == RatPoly({Rat(0), Rat(0), Rat(3)}));
  const RatPoly p = random_poly(6);
  CHECK(apply_series(RatSeries::one(6), p) == p);

  // t/(e^t-1) applied to x^2 gives the Bernoulli polynomial x^2 - x + 1/6
  const RatSeries bern = mul_inverse(divide_by_t(builtin_series(Builtin::Expm1, {}, 3)));
  CHECK(apply_series(bern, RatPoly::monomial(2)) ==
        RatPoly({make_rat(1, 6), Rat(-1), Rat(1)}));

  // under-truncated operators are loud, not silently partial
  CHECK_THROWS_AS(apply_series(RatSeries::t(1), RatPoly::monomial(3)), TruncationError);
}

TEST_CASE("pairing") {
  CHECK(pair(pow_int(RatSeries::t(2), 2), RatPoly::monomial(2)) == 2);  // <t^2|x^2> = 2!
  CHECK(pair(pow_int(RatSeries::t(3), 2), RatPoly::monomial(3)) == 0);
  CHECK(pair(builtin_series(Builtin::ExpT, {}, 3), RatPoly::monomial(3)) == 1);  // a_3 = 1
  CHECK_THROWS_AS(pair(RatSeries::t(1), RatPoly::monomial(2)), TruncationError);
}

TEST_CASE("shift") {
  CHECK(shift(RatPoly::monomial(2), Rat(1)) == RatPoly({Rat(1), Rat(2), Rat(1)}));
  const RatPoly p = random_poly(7);
  CHECK(shift(p, Rat(0)) == p);
  CHECK(shift(falling_poly(2), Rat(1)) == RatPoly({Rat(0), Rat(1), Rat(1)}));  // (x+1)x
}

TEST_CASE("scale_arg") {
  // p(x/2) for p = x^2 + x
  const RatPoly p({Rat(0), Rat(1), Rat(1)});
  CHECK(scale_arg(p, make_rat(1, 2)) == RatPoly({Rat(0), make_rat(1, 2), make_rat(1, 4)}));
}

TEST_CASE("integral_pair") {
  CHECK(integral_pair(x, Rat(1)) == make_rat(1, 2));
  CHECK(integral_pair(RatPoly::constant(Rat(1)), make_rat(7, 3)) == make_rat(7, 3));
  // int_x^{x+1} u du = x + 1/2, sampled at x = 0
  CHECK(integral_pair(shift(x, Rat(0)), Rat(1)) == make_rat(1, 2));
  // negative upper limit
  CHECK(integral_pair(x, Rat(-2)) == 2);
}

TEST_CASE("divide_by_x") {
  CHECK(divide_by_x(RatPoly({Rat(0), Rat(-1), Rat(1)})) == RatPoly({Rat(-1), Rat(1)}));
  CHECK(divide_by_x(falling_poly(3)) == RatPoly({Rat(2), Rat(-3), Rat(1)}));  // (x-1)(x-2)
  CHECK_THROWS_AS(divide_by_x(RatPoly({Rat(1), Rat(0), Rat(1)})), NotDivisible);
  CHECK(times_x(RatPoly({Rat(2), Rat(-3), Rat(1)})) == falling_poly(3));
}

TEST_CASE("derivative and antiderivative") {
  const RatPoly p = random_poly(8);
  CHECK(derivative(antiderivative(p)) == p);
  CHECK(antiderivative(p).coeff(0) == 0);
  CHECK(derivative(RatPoly::constant(Rat(5))) == RatPoly());
}

// --- umbral-action properties ----------------------------------------------

TEST_CASE("adjointness: <fg | p> = <f | g p>") {
  for (int i = 0; i < 25; ++i) {
    const RatSeries f = random_series(12), g = random_series(12);
    const RatPoly p = random_poly(8);
    CHECK(pair(f * g, p) == pair(f, apply_series(g, p)));
  }
}

TEST_CASE("operator composition: (fg) p = f (g p)") {
  for (int i = 0; i < 25; ++i) {
    const RatSeries f = random_series(10), g = random_series(10);
    const RatPoly p = random_poly(8);
    CHECK(apply_series(f * g, p) == apply_series(f, apply_series(g, p)));
  }
}

TEST_CASE("shift is a ring homomorphism and additive in y") {
  for (int i = 0; i < 20; ++i) {
    const RatPoly p = random_poly(6), q = random_poly(6);
    const Rat y = small_rat(), z = small_rat();
    CHECK(shift(p * q, y) == shift(p, y) * shift(q, y));
    CHECK(shift(shift(p, y), z) == shift(p, y + z));
  }
}

TEST_CASE("integral_pair agrees with the pairing against (e^{yt}-1)/t") {
  for (int i = 0; i < 10; ++i) {
    const RatPoly p = random_poly(10);
    for (const Rat& y : {Rat(-2), make_rat(-1, 2), Rat(0), make_rat(1, 3), Rat(1), Rat(3)}) {
      // (e^{yt}-1)/t has ordinary coefficients y^{k+1}/(k+1)!
      std::vector<Rat> c(11);
      for (std::size_t k = 0; k <= 10; ++k)
        c[k] = rat_pow(y, static_cast<long long>(k) + 1) / Rat(factorial(k + 1));
      CHECK(integral_pair(p, y) == pair(RatSeries(std::move(c), 10), p));
    }
  }
}

TEST_CASE("applying e^{yt} is the same as shifting") {
  for (int i = 0; i < 10; ++i) {
    const RatPoly p = random_poly(9);
    for (const Rat& y : {Rat(-2), make_rat(-1, 2), Rat(0), make_rat(1, 3), Rat(1), Rat(3)}) {
      CHECK(apply_series(exp_series(y, 9), p) == shift(p, y));
    }
  }
}
