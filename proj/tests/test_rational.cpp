#include <doctest.h>

#include "umbra/rational.hpp"

using namespace umbra;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  const Rat r = make_rat(4, -6);
  CHECK(numerator(r) == -2);
  CHECK(denominator(r) == 3);

  const Rat s = Rat(1, 3) + Rat(-2, 6);
  CHECK(s == 0);
  CHECK(denominator(s) == 1);

  // arithmetic is exact, no rounding anywhere
  Rat acc(0);
  for (int i = 1; i <= 50; ++i) acc += make_rat(1, i);
  Rat back(0);
  for (int i = 50; i >= 1; --i) back += make_rat(1, i);
  CHECK(acc == back);
}

TEST_CASE("make_rat rejects zero denominators") {
  CHECK_THROWS_AS(make_rat(1, 0), std::domain_error);
}

TEST_CASE("rat_str renders p/q or plain p") {
  CHECK(rat_str(make_rat(-2, 3)) == "-2/3");
  CHECK(rat_str(Rat(7)) == "7");
  CHECK(rat_str(Rat(0)) == "0");
  CHECK(rat_str(make_rat(10, 4)) == "5/2");
}

TEST_CASE("rat_parse accepts exact rationals only") {
  CHECK(rat_parse("5/2") == make_rat(5, 2));
  CHECK(rat_parse("-1/3") == make_rat(-1, 3));
  CHECK(rat_parse("42") == Rat(42));
  CHECK(rat_parse("+7/7") == Rat(1));

  CHECK(!rat_parse("1.5"));
  CHECK(!rat_parse(""));
  CHECK(!rat_parse("1/0"));
  CHECK(!rat_parse("1/-2"));
  CHECK(!rat_parse("a"));
  CHECK(!rat_parse("1/2/3"));
}

TEST_CASE("rat_parse round-trips rat_str") {
  for (long p = -7; p <= 7; ++p)
    for (long q = 1; q <= 9; ++q) {
      const Rat r = make_rat(p, q);
      CHECK(rat_parse(rat_str(r)) == r);
    }
}

TEST_CASE("rat_pow handles negative exponents") {
  CHECK(rat_pow(make_rat(2, 3), 3) == make_rat(8, 27));
  CHECK(rat_pow(make_rat(-2, 3), -2) == make_rat(9, 4));
  CHECK(rat_pow(make_rat(-1, 2), 3) == make_rat(-1, 8));
  CHECK(rat_pow(Rat(5), 0) == 1);
  CHECK(rat_pow(Rat(0), 4) == 0);
  CHECK_THROWS_AS(rat_pow(Rat(0), -1), std::domain_error);
}
