#include <doctest.h>

#include "tamperlab/numeric.hpp"

using namespace tamperlab;

TEST_CASE("factorial and binomial basics") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(21) == BigInt("51090942171709440000"));  // past 64 bits
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(6, 7) == 0);
  CHECK(binomial(6, -1) == 0);
  CHECK_THROWS_AS(factorial(kMaxFactorial + 1), CapError);
}

TEST_CASE("rat_pow handles negative exponents") {
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
  CHECK(rat_pow(Rat(5), 0) == 1);
  CHECK_THROWS_AS(rat_pow(Rat(0), -1), std::domain_error);
}

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rat("1/2") == Rat(1, 2));
  CHECK(parse_rat("-3/9") == Rat(-1, 3));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("0.25") == Rat(1, 4));
  CHECK(parse_rat("-0.5") == Rat(-1, 2));
  CHECK(parse_rat(".5") == Rat(1, 2));
  CHECK(rat_str(Rat(9, 16)) == "9/16");
  CHECK(rat_str(Rat(4)) == "4");
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}
