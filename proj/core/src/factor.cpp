#include "cantor/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "cantor/error.hpp"

namespace cantor {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<bool> composite(kTrialLimit, false);
    std::vector<u64> out;
    for (u64 i = 2; i < kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j < kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n.
u64 rho_factor(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr u64 kBlock = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(kBlock, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBlock;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rest(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = rho_factor(n);
  factor_rest(d, out);
  factor_rest(n / d, out);
}

Factorization to_factorization(const std::map<u64, unsigned>& m) {
  Factorization f;
  f.reserve(m.size());
  for (auto [p, e] : m) f.push_back({p, e});
  return f;
}

// -- big integers ----------------------------------------------------------

BigInt big_rho_factor(const BigInt& n, const FactorBudget& budget, u64& spent) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt x, y, ys, q, g, diff, c;
  for (unsigned long seed = 1;; ++seed) {
    c = seed;
    y = 2;
    q = 1;
    g = 1;
    u64 r = 1;
    constexpr u64 kBlock = 128;
    auto step = [&](BigInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) step(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u64 block = std::min(kBlock, r - k);
        for (u64 i = 0; i < block; ++i) {
          step(y);
          diff = x - y;
          q *= abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        spent += block;
        if (spent > budget.rho_iterations) {
          throw BudgetError("factorization budget exceeded while factoring " + n.get_str());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += kBlock;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

struct BigLess {
  bool operator()(const BigInt& a, const BigInt& b) const { return cmp(a, b) < 0; }
};

void big_factor_rest(BigInt n, std::map<BigInt, unsigned, BigLess>& out, const FactorBudget& budget,
                     u64& spent) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    std::map<u64, unsigned> small;
    factor_rest(n.get_ui(), small);
    for (auto [p, e] : small) out[BigInt(p)] += e;
    return;
  }
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = big_rho_factor(n, budget, spent);
  big_factor_rest(d, out, budget, spent);
  big_factor_rest(n / d, out, budget, spent);
}

void strip_small(BigInt& n, std::map<BigInt, unsigned, BigLess>& out) {
  for (u64 p : small_primes()) {
    if (n == 1) return;
    if (BigInt(p) * p > n) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) out[BigInt(p)] += e;
  }
}

BigFactorization to_big(const std::map<BigInt, unsigned, BigLess>& m) {
  BigFactorization f;
  f.reserve(m.size());
  for (const auto& [p, e] : m) f.push_back({p, e});
  return f;
}

}  // namespace

u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set for all n < 3.18 * 10^23.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_probable_prime(const BigInt& n) {
  if (n.fits_ulong_p()) return is_prime(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), kBigPrimeReps) != 0;
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  std::map<u64, unsigned> out;
  for (u64 p : small_primes()) {
    if (p * p > n) break;
    if (n % p) continue;
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    out[p] = e;
  }
  factor_rest(n, out);
  return to_factorization(out);
}

BigFactorization factorize(const BigInt& n, const FactorBudget& budget) {
  if (n <= 0) throw DomainError("factorize: n must be >= 1");
  std::map<BigInt, unsigned, BigLess> out;
  BigInt rest = n;
  strip_small(rest, out);
  u64 spent = 0;
  big_factor_rest(rest, out, budget, spent);
  return to_big(out);
}

BigFactorization factorize_three_power_minus_one(u64 l, const FactorBudget& budget) {
  if (l == 0) throw DomainError("3^l - 1 requires l >= 1");
  // Phi_d(3) = prod_{k | d} (3^k - 1)^{mu(d/k)}.
  auto mu = [](u64 n) {
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
      if (e > 1) return 0;
      sign = -sign;
    }
    return sign;
  };
  std::map<BigInt, unsigned, BigLess> out;
  u64 spent = 0;
  for (u64 d : divisors(factorize(l))) {
    BigInt num = 1, den = 1;
    for (u64 k : divisors(factorize(d))) {
      BigInt term;
      mpz_ui_pow_ui(term.get_mpz_t(), 3, k);
      term -= 1;
      int m = mu(d / k);
      if (m == 1) num *= term;
      if (m == -1) den *= term;
    }
    BigInt piece = num / den;
    strip_small(piece, out);
    big_factor_rest(piece, out, budget, spent);
  }
  return to_big(out);
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (auto [p, e] : f) {
    const std::size_t n = out.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> divisors_up_to(const BigFactorization& f, u64 bound) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : f) {
    if (!p.fits_ulong_p() || p.get_ui() > bound) continue;
    const u64 prime = p.get_ui();
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      u64 v = out[i];
      for (unsigned k = 1; k <= e; ++k) {
        if (v > bound / prime) break;
        v *= prime;
        out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt divisor_count(const BigFactorization& f) {
  BigInt count = 1;
  for (const auto& pp : f) count *= pp.exponent + 1;
  return count;
}

}  // namespace cantor
