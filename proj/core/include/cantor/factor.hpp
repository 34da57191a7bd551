#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace cantor {

using BigInt = mpz_class;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  auto operator<=>(const PrimePower&) const = default;
};

// Primes strictly increasing; product of prime^exponent is the factored value.
using Factorization = std::vector<PrimePower>;

struct BigPrimePower {
  BigInt prime;
  unsigned exponent = 0;
};

using BigFactorization = std::vector<BigPrimePower>;

// Work limit for Pollard rho. Exceeding it raises BudgetError.
struct FactorBudget {
  std::uint64_t rho_iterations = std::uint64_t{1} << 26;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

// Probable-prime test for big integers. Composite inputs are reported prime
// with probability below 4^-kBigPrimeReps.
inline constexpr int kBigPrimeReps = 32;
bool is_probable_prime(const BigInt& n);

// Trial division below 10^6, Pollard-Brent rho above. n == 0 throws
// DomainError; factorize(1) is empty.
Factorization factorize(std::uint64_t n);

BigFactorization factorize(const BigInt& n, const FactorBudget& budget = {});

// Factorization of 3^l - 1, split first along cyclotomic values Phi_d(3),
// d | l, so rho only ever sees one cyclotomic piece at a time.
BigFactorization factorize_three_power_minus_one(std::uint64_t l, const FactorBudget& budget = {});

// Divisors in increasing order; with a bound, only those <= bound.
std::vector<std::uint64_t> divisors(const Factorization& f);
std::vector<std::uint64_t> divisors_up_to(const BigFactorization& f, std::uint64_t bound);

BigInt divisor_count(const BigFactorization& f);

}  // namespace cantor
