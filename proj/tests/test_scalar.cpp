#include <doctest.h>

#include "charpoly/error.hpp"
#include "charpoly/scalar.hpp"

using namespace charpoly;

TEST_CASE("fields") {
  CHECK(Field::rationals().is_rational());
  CHECK(Field::prime(7).characteristic() == 7);
  CHECK_THROWS_AS(Field::prime(4), InvalidInput);
  CHECK_THROWS_AS(Field::prime(1), InvalidInput);
}

TEST_CASE("rational scalars stay exact") {
  Field q = Field::rationals();
  Scalar a(q, make_rational(3, 6)), b(q, make_rational(-1, 3));
  CHECK((a + b).to_string() == "1/6");
  CHECK((a * b).to_string() == "-1/6");
  CHECK((a / b).to_string() == "-3/2");
  CHECK_THROWS_AS(Scalar::zero(q).inverse(), DomainError);
}

TEST_CASE("prime field scalars") {
  Field f3 = Field::prime(3);
  Scalar half(f3, make_rational(1, 2));
  CHECK(half.to_string() == "2");
  CHECK((half + half).is_one());
  CHECK(Scalar(f3, 5L).pow(3) == Scalar(f3, 2L));
  CHECK_THROWS(Scalar(f3, make_rational(1, 3)));
  CHECK_THROWS(Scalar(f3, 1L) + Scalar(Field::prime(5), 1L));
}

TEST_CASE("rational strings") {
  CHECK(rational_to_string(make_rational(14, 4)) == "7/2");
  CHECK(rational_to_string(Rational(0)) == "0");
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
  CHECK(denominator_of(make_rational(5, 10)) == 2);
}
