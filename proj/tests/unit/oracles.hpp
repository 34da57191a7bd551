#pragma once

// Brute-force reference implementations. Deliberately naive and sharing no
// code with the library, so agreement is meaningful.

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline u64 order(u64 a, u64 q) {
  if (q == 1) return 1;
  u64 x = a % q;
  for (u64 k = 1;; ++k) {
    if (x == 1) return k;
    x = x * a % q;
  }
}

inline u64 phi(u64 n) {
  u64 c = 0;
  for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

inline int mobius(u64 n) {
  int s = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    s = -s;
  }
  return n > 1 ? -s : s;
}

inline u64 tau(u64 n) {
  u64 c = 0;
  for (u64 k = 1; k <= n; ++k) c += n % k == 0;
  return c;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// Base-3 long division of p/q: digits before the first repeated remainder,
// split at the repeat point.
struct Expansion {
  std::string pre;
  std::string period;
};

inline Expansion expand(u64 p, u64 q) {
  std::map<u64, std::size_t> seen;
  std::string digits;
  u64 r = p;
  while (!seen.count(r)) {
    seen[r] = digits.size();
    r *= 3;
    digits.push_back(static_cast<char>('0' + r / q));
    r %= q;
  }
  const auto at = seen[r];
  return {digits.substr(0, at), digits.substr(at)};
}

inline bool no_ones(const std::string& s) { return s.find('1') == std::string::npos; }

// Reduced p/q with 0 <= p <= q on the middle-thirds set.
inline bool on_cantor(u64 p, u64 q) {
  if (p == q || p == 0) return true;
  const auto e = expand(p, q);
  if (no_ones(e.pre) && no_ones(e.period)) return true;
  if (e.period != "0") return false;
  // Terminating: try the form ending in 222...
  std::string alt = e.pre;
  while (!alt.empty() && alt.back() == '0') alt.pop_back();
  --alt.back();
  return no_ones(alt);
}

inline std::vector<u64> numerators(u64 q) {
  std::vector<u64> out;
  for (u64 p = 1; p < q; ++p)
    if (std::gcd(p, q) == 1 && on_cantor(p, q)) out.push_back(p);
  return out;
}

inline u64 n_q(u64 q) { return numerators(q).size(); }

inline bool primitive(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t k = 1; k < n; ++k) {
    if (n % k) continue;
    bool rep = true;
    for (std::size_t i = 0; i < n; ++i) rep = rep && w[i] == w[i % k];
    if (rep) return false;
  }
  return true;
}

// Counts primitive words of length l over {0..a-1}; with even_only, only
// those whose base-3 value is even (digit sum even).
inline u64 primitive_words(unsigned l, unsigned a, bool even_only = false) {
  std::vector<int> w(l, 0);
  u64 count = 0;
  for (;;) {
    int sum = 0;
    for (int d : w) sum += d;
    if ((!even_only || sum % 2 == 0) && primitive(w)) ++count;
    std::size_t i = 0;
    while (i < l && ++w[i] == static_cast<int>(a)) w[i++] = 0;
    if (i == l) return count;
  }
}

// Exact round(num/den), half away from zero, for nonnegative values.
inline u64 round_div(u64 num, u64 den) { return (2 * num + den) / (2 * den); }

}  // namespace oracle
