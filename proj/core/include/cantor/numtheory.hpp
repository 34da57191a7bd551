#pragma once

#include <cstdint>

#include "cantor/factor.hpp"

namespace cantor {

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t euler_phi(const Factorization& f);
int mobius(std::uint64_t n);
int mobius(const Factorization& f);
std::uint64_t tau(std::uint64_t n);
std::uint64_t tau(const Factorization& f);

// Splits n = stripped * rest where every prime of `stripped` divides `base`
// and gcd(rest, base) = 1. `power` is the least i with stripped | base^i.
struct BaseSplit {
  unsigned power = 0;
  std::uint64_t rest = 1;
};
BaseSplit split_base(std::uint64_t n, unsigned base);

/// Smallest l >= 1 with a^l = 1 (mod q); 1 for q = 1. Reduces the group
/// exponent phi(q) prime by prime, so it is fast for any 64-bit q.
/// Throws DomainError if gcd(a, q) != 1 or q == 0.
std::uint64_t mult_order(std::uint64_t a, std::uint64_t q);

/// Period length of p/q in base 3: mult_order(3, q / 3^t) with 3^t || q.
std::uint64_t ell(std::uint64_t q);

/// Number of primitive words of the given length over an alphabet of size a:
/// sum over d | length of mu(length/d) a^d.
BigInt primitive_count(std::uint64_t length, unsigned alphabet);

/// Number of primitive words of the given length over {0..a-1} whose value,
/// read as a base-3 integer, is even.
BigInt even_primitive_count(std::uint64_t length, unsigned alphabet);

/// Nonnegative num/den rounded half away from zero.
BigInt round_quotient(const BigInt& num, const BigInt& den);

/// True iff 3 does not divide q and q | (3^ell(q) - 1) / 2.
bool divides_half_period(std::uint64_t q);

/// Most likely outcome of N_q under the coset model:
/// round(phi(q) m(l,2) / mbar(l,3)) when q | (3^l - 1)/2, else 0.
/// Requires q >= 2 and 3 not dividing q (DomainError otherwise).
std::uint64_t mlo(std::uint64_t q);

/// round((2/3)^l * 2 * phi(q)), computed exactly.
std::uint64_t independent_model_round(std::uint64_t q);

}  // namespace cantor
