#include <doctest.h>

#include "evo1d/error.hpp"
#include "evo1d/field.hpp"
#include "oracle.hpp"

using namespace evo1d;

TEST_CASE("scalar parsing") {
  const auto q = Field::rationals(RationalMode::Real);
  CHECK(parse_scalar("-3/6", q) == Scalar(q, mpq_class(-1, 2)));
  CHECK(parse_scalar("-3/6", q).to_string() == "-1/2");

  const auto f9 = Field::finite(3, 2);
  const auto x = parse_scalar("1+2*i", f9);
  CHECK(x * x == parse_scalar("i", f9));

  const auto f4 = Field::finite(2, 2);
  const auto b = parse_scalar("b", f4);
  CHECK(b * b == parse_scalar("a", f4));

  CHECK_THROWS_AS(parse_scalar("1/0", q), ParseError);
  CHECK_THROWS_AS(parse_scalar("2+", f9), ParseError);
  CHECK_THROWS_AS(parse_scalar("x", f4), ParseError);
}

TEST_CASE("arithmetic") {
  const auto f9 = Field::finite(3, 2);
  const auto w = parse_scalar("1+i", f9);
  CHECK(w * w == parse_scalar("2*i", f9));
  const auto f4 = Field::finite(2, 2);
  CHECK(parse_scalar("a", f4) * parse_scalar("b", f4) == f4.one());
  for (const auto& f : {f9, f4, Field::finite(5, 1)})
    for (const auto& y : enumerate_elements(f)) {
      CHECK((y + (-y)).is_zero());
      if (!y.is_zero()) CHECK(y * y.inverse() == f.one());
    }
  CHECK_THROWS_AS(f9.zero().inverse(), DivisionByZero);
  CHECK_THROWS_AS(f9.one() + f4.one(), FieldMismatch);
}

TEST_CASE("multiplication agrees with the naive oracle") {
  for (auto [p, d] : {std::pair{2u, 1u}, {2u, 2u}, {3u, 1u}, {3u, 2u}, {5u, 2u}, {7u, 1u}}) {
    const auto f = Field::finite(p, d);
    const oracle::Fq o(p, d);
    const auto xs = enumerate_elements(f);
    REQUIRE(xs.size() == o.q());
    for (const auto& x : xs)
      for (const auto& y : xs) {
        CHECK((x * y).code() == o.mul(x.code(), y.code()));
        CHECK((x + y).code() == o.add(x.code(), y.code()));
      }
  }
}

TEST_CASE("square classes") {
  const auto f9 = Field::finite(3, 2);
  CHECK(square_class(parse_scalar("1+i", f9)) == SquareClass::NonSquare);
  CHECK(square_class(parse_scalar("-1", f9)) == SquareClass::Square);
  CHECK(square_class(parse_scalar("2", Field::finite(3, 1))) == SquareClass::NonSquare);
  CHECK(f9.least_nonsquare() == parse_scalar("1+i", f9));

  // exhaustive squares from the oracle
  for (auto [p, d] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {5u, 2u}, {7u, 1u}}) {
    const oracle::Fq o(p, d);
    const auto sq = o.squares();
    for (const auto& x : enumerate_elements(Field::finite(p, d))) {
      if (x.is_zero()) continue;
      CHECK((square_class(x) == SquareClass::Square) == (sq.count(x.code()) == 1));
    }
  }
  for (const auto& x : enumerate_elements(Field::finite(2, 2)))
    if (!x.is_zero()) CHECK(square_class(x) == SquareClass::Nonzero);

  const auto r = Field::rationals(RationalMode::Real);
  CHECK(square_class(Scalar(r, mpq_class(-2, 7))) == SquareClass::Negative);
  CHECK(square_class(Scalar(r, mpq_class(3))) == SquareClass::Positive);
  const auto c = Field::rationals(RationalMode::QuadraticClosure);
  CHECK(square_class(Scalar(c, mpq_class(-2))) == SquareClass::Nonzero);
  CHECK(multiply(SquareClass::NonSquare, SquareClass::NonSquare) == SquareClass::Square);
  CHECK(multiply(SquareClass::Negative, SquareClass::Zero) == SquareClass::Zero);
}

TEST_CASE("square roots") {
  const auto f4 = Field::finite(2, 2);
  CHECK(*sqrt(parse_scalar("a", f4)) == parse_scalar("b", f4));
  const auto f9 = Field::finite(3, 2);
  const auto r = sqrt(parse_scalar("-1", f9));
  REQUIRE(r);
  CHECK(*r == parse_scalar("i", f9));  // i has the smaller code
  CHECK_FALSE(sqrt(Scalar(Field::rationals(RationalMode::Real), mpq_class(2))));
  CHECK(*sqrt(Scalar(Field::rationals(RationalMode::Real), mpq_class(9, 4))) ==
        Scalar(Field::rationals(RationalMode::Real), mpq_class(3, 2)));
  for (const auto& x : enumerate_elements(Field::finite(5, 2))) {
    const auto s = sqrt(x);
    if (s) CHECK(*s * *s == x);
  }
}

TEST_CASE("enumeration") {
  const auto f3 = enumerate_elements(Field::finite(3, 1));
  REQUIRE(f3.size() == 3);
  CHECK(f3[0].to_string() == "0");
  CHECK(f3[1].to_string() == "1");
  CHECK(f3[2].to_string() == "2");
  CHECK(enumerate_elements(Field::finite(2, 2)).size() == 4);
  const auto f9 = Field::finite(3, 2);
  const auto xs = enumerate_elements(f9);
  REQUIRE(xs.size() == 9);
  for (auto s : {"1", "-1", "i", "-i", "1+i", "-1-i", "1-i", "-1+i"})
    CHECK(std::find(xs.begin(), xs.end(), parse_scalar(s, f9)) != xs.end());
  for (const auto& x : xs) CHECK(parse_scalar(x.to_string(), f9) == x);
  CHECK_THROWS_AS(enumerate_elements(Field::rationals(RationalMode::Real)), UnsupportedField);
  CHECK_THROWS_AS(enumerate_elements(Field::finite(31, 2), Budget{.elements = 100}), BudgetExceeded);
}

TEST_CASE("field descriptors") {
  CHECK(Field::parse("F9") == Field::finite(3, 2));
  CHECK(Field::parse("F4") == Field::finite(2, 2));
  CHECK(Field::parse("R") == Field::rationals(RationalMode::Real));
  CHECK(Field::parse("C") == Field::rationals(RationalMode::QuadraticClosure));
  CHECK_THROWS_AS(Field::parse("F6"), UnsupportedField);
  CHECK(Field::finite(3, 2).name() == "F9");
}
