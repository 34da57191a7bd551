#include <doctest.h>

#include <cmath>

#include "cantor/error.hpp"
#include "cantor/factor.hpp"
#include "cantor/numtheory.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

BigInt product(const Factorization& f) {
  BigInt v = 1;
  for (const auto& pp : f)
    for (unsigned e = 0; e < pp.exponent; ++e) v *= static_cast<unsigned long>(pp.prime);
  return v;
}

BigInt product(const BigFactorization& f) {
  BigInt v = 1;
  for (const auto& pp : f)
    for (unsigned e = 0; e < pp.exponent; ++e) v *= pp.prime;
  return v;
}

BigInt three_pow_minus_one(unsigned l) {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 3, l);
  return v - 1;
}

}  // namespace

TEST_CASE("factorization examples") {
  CHECK(factorize(1).empty());
  CHECK(factorize(26) == Factorization{{2, 1}, {13, 1}});
  REQUIRE(oracle::is_prime(3851));
  CHECK(factorize(3851) == Factorization{{3851, 1}});
  CHECK(factorize(1001523179) == Factorization{{1001523179, 1}});
  CHECK(factorize(3486843451) == Factorization{{7, 1}, {13, 1}, {31, 1}, {271, 1}, {4561, 1}});
  CHECK_THROWS_AS(factorize(std::uint64_t{0}), DomainError);
}

TEST_CASE("factorization reproduces the input and every factor is prime") {
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    const auto f = factorize(n);
    REQUIRE(product(f) == static_cast<unsigned long>(n));
    for (const auto& pp : f) REQUIRE(oracle::is_prime(pp.prime));
  }
  const std::vector<std::uint64_t> big = {1001523179ull, 3486843451ull, 18446744073709551557ull,
                                          4294967291ull * 4294967279ull, 999999000001ull * 3};
  for (std::uint64_t n : big) {
    const auto f = factorize(n);
    CHECK(product(f) == BigInt(std::to_string(n)));
    for (const auto& pp : f) CHECK(is_prime(pp.prime));
  }
}

TEST_CASE("factorization of 3^l - 1") {
  for (unsigned l = 1; l <= 60; ++l) {
    const auto f = factorize_three_power_minus_one(l);
    REQUIRE(product(f) == three_pow_minus_one(l));
    for (const auto& pp : f) REQUIRE(is_probable_prime(pp.prime));
  }
  const auto f = factorize(three_pow_minus_one(22));
  CHECK(product(f) == three_pow_minus_one(22));
}

TEST_CASE("primality") {
  for (std::uint64_t n = 0; n <= 5000; ++n) REQUIRE(is_prime(n) == oracle::is_prime(n));
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_probable_prime(BigInt("170141183460469231731687303715884105727")));
  CHECK_FALSE(is_probable_prime(BigInt("170141183460469231731687303715884105729")));
}

TEST_CASE("divisors") {
  CHECK(divisors(factorize(26)) == std::vector<std::uint64_t>{1, 2, 13, 26});
  CHECK(divisors(factorize(1)) == std::vector<std::uint64_t>{1});
  const auto f = factorize_three_power_minus_one(6);  // 728 = 2^3 7 13
  CHECK(divisors_up_to(f, 30) == std::vector<std::uint64_t>{1, 2, 4, 7, 8, 13, 14, 26, 28});
  CHECK(divisor_count(f) == 16);
  for (std::uint64_t n = 1; n <= 2000; ++n) REQUIRE(divisors(factorize(n)).size() == oracle::tau(n));
}

TEST_CASE("arithmetic functions") {
  CHECK(euler_phi(1) == 1);
  CHECK(mobius(1) == 1);
  CHECK(tau(1) == 1);
  CHECK(euler_phi(757) == 756);
  CHECK(tau(26) == 4);
  CHECK(mobius(26) == 1);
  CHECK(mobius(12) == 0);
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    REQUIRE(euler_phi(n) == oracle::phi(n));
    REQUIRE(mobius(n) == oracle::mobius(n));
    REQUIRE(tau(n) == oracle::tau(n));
  }
}

TEST_CASE("multiplicative order") {
  CHECK(mult_order(3, 13) == 3);
  CHECK(mult_order(3, 10) == 4);
  CHECK(mult_order(3, 146) == 12);
  CHECK(mult_order(3, 1) == 1);
  CHECK(mult_order(3, 1001523179) == 23);
  CHECK(mult_order(10, 7) == 6);
  CHECK_THROWS_AS(mult_order(3, 12), DomainError);
  CHECK_THROWS_AS(mult_order(3, 0), DomainError);
  for (std::uint64_t q = 1; q <= 5000; ++q) {
    if (q % 3 == 0) continue;
    const auto o = mult_order(3, q);
    REQUIRE(o == oracle::order(3, q));
    REQUIRE(euler_phi(q) % o == 0);
  }
}

TEST_CASE("period length with powers of 3") {
  CHECK(ell(13) == 3);
  CHECK(ell(30) == 4);
  CHECK(ell(84) == 6);
  CHECK(ell(3) == 1);
  CHECK(ell(1) == 1);
  CHECK(ell(1001523179) == 23);
  CHECK(ell(3486843451) == 30);
  CHECK(split_base(84, 3).power == 1);
  CHECK(split_base(84, 3).rest == 28);
  CHECK(split_base(72, 6).power == 3);
  CHECK(split_base(72, 6).rest == 1);
}

TEST_CASE("primitive word counts") {
  CHECK(primitive_count(1, 2) == 2);
  CHECK(primitive_count(6, 2) == 54);
  CHECK(primitive_count(9, 2) == 504);
  for (unsigned l = 1; l <= 10; ++l) {
    REQUIRE(primitive_count(l, 2) == oracle::primitive_words(l, 2));
    REQUIRE(primitive_count(l, 3) == oracle::primitive_words(l, 3));
  }
  for (unsigned a : {2u, 3u}) {
    for (unsigned l = 1; l <= 20; ++l) {
      BigInt sum = 0;
      for (unsigned d = 1; d <= l; ++d)
        if (l % d == 0) sum += primitive_count(d, a);
      BigInt power;
      mpz_ui_pow_ui(power.get_mpz_t(), a, l);
      REQUIRE(sum == power);
    }
  }
}

TEST_CASE("even primitive word counts") {
  CHECK(even_primitive_count(1, 3) == 2);
  CHECK(even_primitive_count(2, 3) == 2);
  CHECK(even_primitive_count(9, 3) == 9828);
  for (unsigned l = 1; l <= 12; ++l) {
    const auto even = oracle::primitive_words(l, 3, true);
    REQUIRE(even_primitive_count(l, 3) == even);
    const auto odd = oracle::primitive_words(l, 3) - even;
    REQUIRE(even_primitive_count(l, 3) + odd == primitive_count(l, 3));
  }
}

TEST_CASE("m(l,2)/mbar(l,3) is close to 2 (2/3)^l for prime l") {
  for (unsigned l : {11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    const double ratio = mpq_class(primitive_count(l, 2), even_primitive_count(l, 3)).get_d();
    const double scaled = ratio / std::pow(2.0 / 3.0, l);
    CHECK(scaled > 1.9);
    CHECK(scaled < 2.1);
  }
}

TEST_CASE("rounding is half away from zero") {
  CHECK(round_quotient(5, 2) == 3);
  CHECK(round_quotient(7, 2) == 4);
  CHECK(round_quotient(4, 3) == 1);
  CHECK(round_quotient(5, 3) == 2);
  CHECK(round_quotient(0, 7) == 0);
  for (std::uint64_t n = 0; n < 200; ++n)
    for (std::uint64_t d = 1; d < 20; ++d) REQUIRE(round_quotient(n, d) == oracle::round_div(n, d));
}

TEST_CASE("most likely outcome") {
  CHECK(mlo(757) == 39);
  CHECK(mlo(3851) == 89);
  CHECK(mlo(4785157) == 1771);
  CHECK(mlo(82) == 3);
  CHECK(mlo(13) == 6);
  CHECK(mlo(23) == 1);
  CHECK(mlo(2) == 0);
  CHECK_THROWS_AS(mlo(1), DomainError);
  CHECK_THROWS_AS(mlo(12), DomainError);

  CHECK(divides_half_period(13));
  CHECK_FALSE(divides_half_period(2));
  CHECK_FALSE(divides_half_period(9));
  for (std::uint64_t q = 2; q <= 3000; ++q) {
    if (q % 3 == 0) continue;
    const auto l = oracle::order(3, q);
    BigInt half;
    mpz_ui_pow_ui(half.get_mpz_t(), 3, l);
    half = (half - 1) / 2;
    const bool divides = mpz_divisible_ui_p(half.get_mpz_t(), q) != 0;
    REQUIRE(divides_half_period(q) == divides);
    const BigInt expected = divides ? round_quotient(BigInt(static_cast<unsigned long>(oracle::phi(q))) *
                                                         primitive_count(l, 2),
                                                     even_primitive_count(l, 3))
                                    : BigInt(0);
    REQUIRE(mlo(q) == expected.get_ui());
  }
}

TEST_CASE("independent model term") {
  CHECK(independent_model_round(13) == 7);
  CHECK(independent_model_round(2) == 1);
  for (std::uint64_t q = 2; q <= 2000; ++q) {
    if (q % 3 == 0) continue;
    const auto l = static_cast<unsigned long>(oracle::order(3, q));
    BigInt three;
    mpz_ui_pow_ui(three.get_mpz_t(), 3, l);
    BigInt two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, l + 1);
    const BigInt expected = round_quotient(two * static_cast<unsigned long>(oracle::phi(q)), three);
    REQUIRE(independent_model_round(q) == expected.get_ui());
  }
}
