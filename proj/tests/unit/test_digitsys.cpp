#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cantor/digitsys.hpp"
#include "cantor/error.hpp"
#include "cantor/numtheory.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

PeriodicExpansion expansion(const std::string& pre, const std::string& period) {
  PeriodicExpansion e;
  e.preperiod = digits_from_string(pre);
  e.period = digits_from_string(period);
  return e;
}

bool member(std::uint64_t p, std::uint64_t q) {
  const auto g = std::gcd(p, q);
  return is_member(expansion_of_rational(p / g, q / g, 3), DigitSystem::ternary());
}

}  // namespace

TEST_CASE("digit system construction and text form") {
  const auto t = DigitSystem::ternary();
  CHECK(t.is_ternary_cantor());
  CHECK(t.to_string() == "b=3,F=0,2");
  CHECK(t.tag() == "b3-F02");
  CHECK(DigitSystem::parse("b=3,F=2,0") == t);
  CHECK(t.dimension() == doctest::Approx(std::log(2.0) / std::log(3.0)));

  const auto five = DigitSystem::parse("b=5,F=0,1,4");
  CHECK(five.base() == 5);
  CHECK(five.allows(4));
  CHECK_FALSE(five.allows(2));
  CHECK_FALSE(five.is_ternary_cantor());

  CHECK_THROWS_AS(DigitSystem(2, {0}), DomainError);
  CHECK_THROWS_AS(DigitSystem(3, {0, 1, 2}), DomainError);
  CHECK_THROWS_AS(DigitSystem(3, {}), DomainError);
  CHECK_THROWS_AS(DigitSystem(3, {3}), DomainError);
  CHECK_THROWS_AS(DigitSystem::parse("3,{0,2}"), DomainError);
  CHECK_THROWS_AS(DigitSystem::parse("b=x,F=0"), DomainError);
}

TEST_CASE("expansions of small rationals") {
  auto e = expansion_of_rational(1, 13, 3);
  CHECK(digits_to_string(e.preperiod).empty());
  CHECK(digits_to_string(e.period) == "002");

  e = expansion_of_rational(0, 1, 3);
  CHECK(e.preperiod.empty());
  CHECK(digits_to_string(e.period) == "0");

  e = expansion_of_rational(1, 2, 3);
  CHECK(digits_to_string(e.period) == "1");

  e = expansion_of_rational(1, 1, 3);
  CHECK(e.is_one);

  e = expansion_of_rational(5, 18, 3);
  CHECK(e.preperiod.size() == 2);

  CHECK_THROWS_AS(expansion_of_rational(2, 4, 3), DomainError);
  CHECK_THROWS_AS(expansion_of_rational(5, 4, 3), DomainError);
  CHECK_THROWS_AS(expansion_of_rational(0, 0, 3), DomainError);
}

TEST_CASE("values of expansions") {
  auto v = value_of_expansion(expansion("", "02"));
  CHECK(v.numerator == 2);
  CHECK(v.denominator == 8);
  CHECK(v.p == 1);
  CHECK(v.q == 4);

  v = value_of_expansion(expansion("", "20"));
  CHECK(v.numerator == 6);
  CHECK(v.denominator == 8);
  CHECK(v.p == 3);
  CHECK(v.q == 4);

  v = value_of_expansion(expansion("0", "2"));
  CHECK(v.denominator == 6);
  CHECK(v.p == 1);
  CHECK(v.q == 3);

  v = value_of_expansion(PeriodicExpansion::one(3));
  CHECK(v.p == 1);
  CHECK(v.q == 1);

  CHECK_THROWS_AS(value_of_expansion(expansion("0", "")), DomainError);
}

TEST_CASE("membership") {
  const auto t = DigitSystem::ternary();
  CHECK(is_member(expansion_of_rational(1, 4, 3), t));
  CHECK_FALSE(is_member(expansion_of_rational(1, 2, 3), t));
  CHECK(is_member(expansion_of_rational(1, 3, 3), t));
  CHECK(is_member(expansion_of_rational(2, 3, 3), t));
  CHECK(is_member(expansion_of_rational(0, 1, 3), t));
  CHECK(is_member(expansion_of_rational(1, 1, 3), t));
  CHECK(is_member(expansion_of_rational(1, 9, 3), t));
  CHECK(is_member(expansion_of_rational(7, 9, 3), t));
  CHECK_FALSE(is_member(expansion_of_rational(4, 9, 3), t));
  CHECK(is_member(expansion_of_rational(1, 10, 3), t));
  CHECK(is_member(expansion_of_rational(3, 10, 3), t));
  CHECK_FALSE(is_member(expansion_of_rational(1, 5, 3), t));

  // A system without the top digit has no trailing-(b-1) alternative.
  const DigitSystem low(3, {0, 1});
  CHECK(is_member(expansion_of_rational(1, 3, 3), low));
  CHECK_FALSE(is_member(expansion_of_rational(1, 1, 3), low));
}

TEST_CASE("primitive words") {
  CHECK(is_primitive(digits_from_string("002")));
  CHECK_FALSE(is_primitive(digits_from_string("0202")));
  CHECK_FALSE(is_primitive(digits_from_string("000")));
  CHECK(is_primitive(digits_from_string("0")));
  CHECK(is_primitive(digits_from_string("0020")));
  CHECK_THROWS_AS(is_primitive(Digits{}), DomainError);
}

TEST_CASE("digit string helpers") {
  CHECK(digits_to_string(digits_from_string("0212")) == "0212");
  CHECK(digits_value(digits_from_string("0212"), 3) == 23);
  CHECK_THROWS_AS(digits_from_string("0!"), DomainError);
  const auto t = DigitSystem::ternary();
  CHECK(digits_allowed(BigInt(20), 3, t));   // 202
  CHECK_FALSE(digits_allowed(BigInt(5), 3, t));  // 012
  CHECK_FALSE(digits_allowed(BigInt(0), 3, DigitSystem(3, {2})));
  CHECK(digits_allowed(BigInt(0), 40, t));
}

TEST_CASE("round trip for reduced p/q, q <= 10^4: every p up to q = 300, sampled p above") {
  bool ok = true;
  for (std::uint64_t q = 1; q <= 10000 && ok; ++q) {
    for (std::uint64_t p = 0; p <= q; p += (q > 300 ? 211 : 1)) {
      if (std::gcd(p, q) != 1) continue;
      const auto v = value_of_expansion(expansion_of_rational(p, q, 3));
      if (v.p != p || v.q != q) {
        ok = false;
        FAIL_CHECK("round trip failed for " << p << "/" << q);
        break;
      }
    }
  }
  CHECK(ok);
}

TEST_CASE("period length equals the order of the base; pure periodicity iff b does not divide q") {
  for (std::uint64_t q = 2; q <= 10000; ++q) {
    const auto e = expansion_of_rational(1, q, 3);
    const bool pure = q % 3 != 0;
    if (pure) {
      REQUIRE(e.preperiod.empty());
      REQUIRE(e.period.size() == mult_order(3, q));
    } else {
      REQUIRE_FALSE(e.preperiod.empty());
    }
  }
  for (std::uint64_t q : {7u, 11u, 24u, 49u, 1000u}) {
    const auto e = expansion_of_rational(1, q, 10);
    if (q % 2 && q % 5) CHECK(e.period.size() == mult_order(10, q));
  }
}

TEST_CASE("expansion digits agree with plain long division") {
  for (std::uint64_t q = 2; q <= 400; ++q) {
    for (std::uint64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const auto e = expansion_of_rational(p, q, 3);
      const auto o = oracle::expand(p, q);
      REQUIRE(digits_to_string(e.preperiod) == o.pre);
      REQUIRE(digits_to_string(e.period) == o.period);
    }
  }
}

TEST_CASE("membership is invariant under the symmetries of the set") {
  for (std::uint64_t q = 1; q <= 500; ++q) {
    for (std::uint64_t p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const bool m = member(p, q);
      REQUIRE(m == oracle::on_cantor(p, q));
      REQUIRE(m == member(q - p, q));
      REQUIRE(m == member(p, 3 * q));
      if (3 * p <= q) REQUIRE(m == member(3 * p, q));
    }
  }
}
