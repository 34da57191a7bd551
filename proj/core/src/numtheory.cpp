#include "cantor/numtheory.hpp"

#include <map>
#include <numeric>

#include "cantor/error.hpp"

namespace cantor {

namespace {

using u64 = std::uint64_t;

BigInt pow_big(unsigned base, u64 exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

}  // namespace

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (auto [p, e] : f) {
    phi *= p - 1;
    for (unsigned k = 1; k < e; ++k) phi *= p;
  }
  return phi;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

int mobius(const Factorization& f) {
  int sign = 1;
  for (auto [p, e] : f) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

int mobius(u64 n) { return mobius(factorize(n)); }

u64 tau(const Factorization& f) {
  u64 count = 1;
  for (auto [p, e] : f) count *= e + 1;
  return count;
}

u64 tau(u64 n) { return tau(factorize(n)); }

BaseSplit split_base(u64 n, unsigned base) {
  if (n == 0) throw DomainError("split_base: n must be >= 1");
  BaseSplit out{0, n};
  for (u64 g = std::gcd(out.rest, u64{base}); g > 1; g = std::gcd(out.rest, u64{base})) {
    out.rest /= g;
    ++out.power;
  }
  return out;
}

u64 mult_order(u64 a, u64 q) {
  if (q == 0) throw DomainError("mult_order: modulus must be >= 1");
  if (q == 1) return 1;
  if (std::gcd(a % q, q) != 1) {
    throw DomainError("mult_order: gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") != 1");
  }
  // Factor phi(q) = prod p^{e-1} (p-1).
  std::map<u64, unsigned> group;
  for (auto [p, e] : factorize(q)) {
    if (e > 1) group[p] += e - 1;
    for (auto [r, k] : factorize(p - 1 == 0 ? 1 : p - 1)) group[r] += k;
  }
  u64 order = 1;
  for (auto [r, k] : group) {
    for (unsigned i = 0; i < k; ++i) order *= r;
  }
  for (auto [r, k] : group) {
    for (unsigned i = 0; i < k; ++i) {
      if (pow_mod(a, order / r, q) != 1) break;
      order /= r;
    }
  }
  return order;
}

u64 ell(u64 q) {
  if (q == 0) throw DomainError("ell: q must be >= 1");
  while (q % 3 == 0) q /= 3;
  return mult_order(3, q);
}

BigInt primitive_count(u64 length, unsigned alphabet) {
  if (length == 0) throw DomainError("primitive_count: length must be >= 1");
  BigInt total = 0;
  for (u64 d : divisors(factorize(length))) {
    const int mu = mobius(length / d);
    if (mu == 0) continue;
    BigInt term = pow_big(alphabet, d);
    if (mu > 0) total += term;
    else total -= term;
  }
  return total;
}

BigInt even_primitive_count(u64 length, unsigned alphabet) {
  if (length == 0) throw DomainError("even_primitive_count: length must be >= 1");
  BigInt total = 0;
  for (u64 d : divisors(factorize(length))) {
    const u64 cofactor = length / d;
    const int mu = mobius(cofactor);
    if (mu == 0) continue;
    BigInt term = pow_big(alphabet, d);
    if (cofactor % 2 == 1) {
      // ceil(a^d / 2)
      term += 1;
      mpz_fdiv_q_2exp(term.get_mpz_t(), term.get_mpz_t(), 1);
    }
    if (mu > 0) total += term;
    else total -= term;
  }
  return total;
}

BigInt round_quotient(const BigInt& num, const BigInt& den) {
  if (den <= 0 || num < 0) throw DomainError("round_quotient: expects num >= 0, den > 0");
  BigInt out = 2 * num + den;
  BigInt twice_den = 2 * den;
  mpz_fdiv_q(out.get_mpz_t(), out.get_mpz_t(), twice_den.get_mpz_t());
  return out;
}

bool divides_half_period(u64 q) {
  if (q == 0 || q % 3 == 0) return false;
  const u64 l = mult_order(3, q);
  // q | (3^l - 1)/2  <=>  3^l = 1 (mod 2q)
  if (q > (~u64{0}) / 2) {
    BigInt mod = BigInt(q) * 2;
    BigInt r;
    BigInt three = 3;
    mpz_powm_ui(r.get_mpz_t(), three.get_mpz_t(), l, mod.get_mpz_t());
    return r == 1;
  }
  return pow_mod(3, l, 2 * q) == 1;
}

u64 mlo(u64 q) {
  if (q < 2) throw DomainError("mlo: q must be >= 2");
  if (q % 3 == 0) throw DomainError("mlo: undefined for 3 | q (q = " + std::to_string(q) + ")");
  if (!divides_half_period(q)) return 0;
  const u64 l = mult_order(3, q);
  BigInt num = primitive_count(l, 2) * BigInt(euler_phi(q));
  BigInt r = round_quotient(num, even_primitive_count(l, 3));
  return r.get_ui();
}

u64 independent_model_round(u64 q) {
  if (q == 0) throw DomainError("independent_model_round: q must be >= 1");
  const u64 l = ell(q);
  BigInt num = pow_big(2, l + 1) * BigInt(euler_phi(q));
  return round_quotient(num, pow_big(3, l)).get_ui();
}

}  // namespace cantor
