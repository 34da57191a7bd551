#include "cantor/enumerator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "cantor/error.hpp"
#include "cantor/numtheory.hpp"

namespace cantor {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

// Algorithm 1 keeps one state byte per residue.
constexpr u64 kAlgorithm1MaxQ = u64{1} << 32;
constexpr u64 kAlgorithm1MemoryCap = u64{1} << 30;

enum : std::uint8_t { kOpen = 0, kMasked = 1, kPassed = 2 };

// Ternary digits of v (exactly `width` of them) all in {0,2}.
bool ternary_digits_ok(u128 v, u64 width) {
  for (u64 i = 0; i < width; ++i) {
    if (static_cast<unsigned>(v % 3) == 1) return false;
    v /= 3;
    if (v == 0) return true;
  }
  return true;
}

// 3^n as u128, or nullopt on overflow.
std::optional<u128> pow_u128(u64 base, u64 n) {
  u128 v = 1;
  for (u64 i = 0; i < n; ++i) {
    if (v > std::numeric_limits<u128>::max() / base) return std::nullopt;
    v *= base;
  }
  return v;
}

// Cantor test for p/q given T = p (3^l - 1)/q', l and t. Digits of the period
// a = T mod (3^l - 1) and of the preperiod s = T div (3^l - 1).
struct NativeTester {
  u64 period_len;
  u64 t;
  u128 period_mod;  // 3^l - 1
  u128 step;        // (3^l - 1) / q'
  bool terminating;  // q' = 1

  bool operator()(u64 p) const {
    const u128 big_t = step * p;
    if (terminating) {
      // q' = 1: p/q = s/3^t terminates, test both representations.
      const u128 s = big_t / 2;
      return ternary_digits_ok(s, t) || (s > 0 && ternary_digits_ok(s - 1, t));
    }
    const u128 a = big_t % period_mod;
    if (!ternary_digits_ok(a, period_len)) return false;
    const u128 s = big_t / period_mod;
    return ternary_digits_ok(s, t);
  }
};

struct BigTester {
  u64 period_len;
  u64 t;
  BigInt period_mod;
  BigInt step;
  DigitSystem system = DigitSystem::ternary();
  mutable BigInt big_t, a, s;

  bool operator()(u64 p) const {
    mpz_mul_ui(big_t.get_mpz_t(), step.get_mpz_t(), p);
    mpz_fdiv_qr(s.get_mpz_t(), a.get_mpz_t(), big_t.get_mpz_t(), period_mod.get_mpz_t());
    if (a == 0) {
      return digits_allowed(s, t, system) || (s > 0 && digits_allowed(BigInt(s - 1), t, system));
    }
    return digits_allowed(a, period_len, system) && digits_allowed(s, t, system);
  }
};

template <typename Tester>
DenominatorRecord run_algorithm1(u64 q, u64 t, const Tester& test, const EnumerationOptions& opts) {
  std::vector<std::uint8_t> state(q, kOpen);
  for (auto [prime, e] : factorize(q)) {
    for (u64 m = prime; m < q; m += prime) state[m] = kMasked;
  }
  const bool orbit_closure = (t == 0);

  // Marks p, its x3 multiples (when 3 does not divide q) and reflections.
  auto close = [&](u64 p, std::uint8_t mark) {
    u64 x = p;
    do {
      state[x] = mark;
      state[q - x] = mark;
      if (!orbit_closure) break;
      x = static_cast<u64>(static_cast<u128>(x) * 3 % q);
    } while (x != p);
  };

  u64 found = 0;
  for (u64 p = 1; p < q; ++p) {
    if (state[p] != kOpen) continue;
    if (test(p)) {
      close(p, kPassed);
      ++found;
      if (opts.stop_at_first) break;
    } else {
      close(p, kMasked);
    }
  }

  DenominatorRecord rec;
  rec.q = q;
  rec.method = Method::algorithm1;
  std::vector<u64> nums;
  for (u64 p = 1; p < q; ++p) {
    if (state[p] == kPassed) nums.push_back(p);
  }
  rec.n_q = nums.size();
  if (opts.keep_numerators) rec.numerators = std::move(nums);
  return rec;
}

// Values of every word of the given length over F, in base b.
std::vector<u128> word_values(const DigitSystem& sys, u64 length) {
  std::vector<u128> vals{0};
  for (u64 i = 0; i < length; ++i) {
    std::vector<u128> next;
    next.reserve(vals.size() * sys.allowed().size());
    for (u128 v : vals) {
      for (unsigned d : sys.allowed()) next.push_back(v * sys.base() + d);
    }
    vals = std::move(next);
  }
  return vals;
}

u64 checked_power(u64 base, u64 exp) {
  u64 v = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (v > std::numeric_limits<u64>::max() / base) return std::numeric_limits<u64>::max();
    v *= base;
  }
  return v;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  return m == Method::algorithm1 ? "algorithm1" : "word_oracle";
}

Method method_from_string(std::string_view s) {
  if (s == "algorithm1" || s == "alg1") return Method::algorithm1;
  if (s == "word_oracle" || s == "words") return Method::word_oracle;
  throw DomainError("unknown enumeration method '" + std::string(s) + "'");
}

DenominatorRecord enumerate_by_algorithm1(u64 q, const EnumerationOptions& opts) {
  if (q < 2) throw DomainError("enumerate_by_algorithm1: q must be >= 2");
  if (q > kAlgorithm1MaxQ) {
    throw BudgetError("algorithm 1 needs one byte per residue; q = " + std::to_string(q) + " is too large");
  }
  const BaseSplit split = split_base(q, 3);
  const u64 t = split.power;
  const u64 q_prime = split.rest;
  const u64 period_len = mult_order(3, q_prime);

  DenominatorRecord rec;
  const auto period_pow = pow_u128(3, period_len);
  const auto pre_pow = pow_u128(3, t);
  bool native = period_pow && pre_pow;
  if (native) {
    // T < 3^t (3^l - 1) must fit.
    const u128 period_mod = *period_pow - 1;
    native = period_mod <= std::numeric_limits<u128>::max() / *pre_pow;
    if (native) {
      NativeTester test{period_len, t, period_mod, period_mod / q_prime, q_prime == 1};
      rec = run_algorithm1(q, t, test, opts);
    }
  }
  if (!native) {
    BigTester test{period_len, t, {}, {}, DigitSystem::ternary(), {}, {}, {}};
    mpz_ui_pow_ui(test.period_mod.get_mpz_t(), 3, period_len);
    test.period_mod -= 1;
    test.step = test.period_mod / q_prime;
    rec = run_algorithm1(q, t, test, opts);
  }
  fill_arithmetic(rec);
  return rec;
}

std::vector<u64> enumerate_by_coprime_loop(u64 q, const DigitSystem& system) {
  if (q < 2) throw DomainError("enumerate_by_coprime_loop: q must be >= 2");
  std::vector<u64> out;
  for (u64 p = 1; p < q; ++p) {
    if (std::gcd(p, q) != 1) continue;
    if (is_member(expansion_of_rational(p, q, system.base()), system)) out.push_back(p);
  }
  return out;
}

u64 word_count(u64 q, const DigitSystem& system) {
  const BaseSplit split = split_base(q, system.base());
  const u64 period_len = mult_order(system.base(), split.rest);
  return checked_power(system.allowed().size(), split.power + period_len);
}

DenominatorRecord enumerate_by_words(u64 q, const DigitSystem& system, u64 max_words,
                                     const EnumerationOptions& opts) {
  if (q < 2) throw DomainError("enumerate_by_words: q must be >= 2");
  const unsigned b = system.base();
  const BaseSplit split = split_base(q, b);
  const u64 t = split.power;
  const u64 period_len = mult_order(b, split.rest);

  const u64 words = checked_power(system.allowed().size(), t + period_len);
  if (words > max_words) {
    throw BudgetError("word oracle for q = " + std::to_string(q) + " needs " +
                      (words == std::numeric_limits<u64>::max() ? std::string("> 2^64")
                                                                 : std::to_string(words)) +
                      " words, budget is " + std::to_string(max_words));
  }
  const auto full = pow_u128(b, t + period_len);
  if (!full || *full > (std::numeric_limits<u128>::max() >> 1)) {
    throw BudgetError("word oracle denominators exceed 127 bits for q = " + std::to_string(q));
  }
  const u128 period_mod = *pow_u128(b, period_len) - 1;
  const u128 big_q = *pow_u128(b, t) * period_mod;
  const u128 k = big_q / q;  // q | b^t (b^l - 1)

  // Period words split into a high and a low half: a = h * b^low_len + l.
  const u64 low_len = period_len / 2;
  const u64 high_len = period_len - low_len;
  const std::vector<u128> pre_vals = word_values(system, t);
  const std::vector<u128> high_vals = word_values(system, high_len);
  std::vector<u128> low_vals = word_values(system, low_len);
  const u128 low_scale = *pow_u128(b, low_len);

  // Bucket the low half by residue mod k so that only candidates with
  // num = 0 (mod k) are visited.
  const bool bucketed = k <= low_vals.size();
  std::vector<u64> bucket_start;
  if (bucketed) {
    const u64 kk = static_cast<u64>(k);
    bucket_start.assign(kk + 1, 0);
    for (u128 l : low_vals) ++bucket_start[static_cast<u64>(l % k) + 1];
    for (u64 r = 0; r < kk; ++r) bucket_start[r + 1] += bucket_start[r];
    std::vector<u128> sorted(low_vals.size());
    std::vector<u64> fill(bucket_start.begin(), bucket_start.end() - 1);
    for (u128 l : low_vals) sorted[fill[static_cast<u64>(l % k)]++] = l;
    low_vals = std::move(sorted);
  }

  std::vector<u64> nums;
  auto accept = [&](u128 num) {
    const u128 p = num / k;
    if (p == 0 || p >= q) return;
    const u64 pp = static_cast<u64>(p);
    if (std::gcd(pp, q) == 1) nums.push_back(pp);
  };

  for (u128 s : pre_vals) {
    const u128 pre_part = s * period_mod;
    for (u128 h : high_vals) {
      const u128 base = pre_part + h * low_scale;
      if (bucketed) {
        const u64 need = static_cast<u64>((k - base % k) % k);
        for (u64 i = bucket_start[need]; i < bucket_start[need + 1]; ++i) accept(base + low_vals[i]);
      } else {
        for (u128 l : low_vals) {
          const u128 num = base + l;
          if (num % k == 0) accept(num);
        }
      }
      if (opts.stop_at_first && !nums.empty()) break;
    }
    if (opts.stop_at_first && !nums.empty()) break;
  }
  std::sort(nums.begin(), nums.end());
  nums.erase(std::unique(nums.begin(), nums.end()), nums.end());

  DenominatorRecord rec;
  rec.q = q;
  rec.method = Method::word_oracle;
  rec.n_q = nums.size();
  if (opts.keep_numerators) rec.numerators = std::move(nums);
  if (system.is_ternary_cantor()) {
    fill_arithmetic(rec);
  } else {
    rec.ell = period_len;
    rec.phi = euler_phi(q);
    rec.mlo = 0;
  }
  return rec;
}

Method choose_method(u64 q) {
  const BaseSplit split = split_base(q, 3);
  const u64 len = split.power + mult_order(3, split.rest);
  if (len < 60) {
    const u128 cost = (u128{1} << len) * len;
    if (cost < q || q > kAlgorithm1MaxQ) return Method::word_oracle;
    // Algorithm 1 keeps a byte per residue; past 1 GiB prefer any affordable word scan.
    if (q > kAlgorithm1MemoryCap && (u64{1} << len) <= kDefaultWordBudget) return Method::word_oracle;
  }
  return Method::algorithm1;
}

DenominatorRecord enumerate(u64 q, std::optional<Method> method, const EnumerationOptions& opts) {
  const Method m = method.value_or(choose_method(q));
  if (m == Method::word_oracle) {
    return enumerate_by_words(q, DigitSystem::ternary(), kDefaultWordBudget, opts);
  }
  return enumerate_by_algorithm1(q, opts);
}

bool has_cantor_rational(u64 q) {
  EnumerationOptions opts;
  opts.keep_numerators = false;
  opts.stop_at_first = true;
  return enumerate(q, std::nullopt, opts).n_q > 0;
}

std::vector<std::vector<u64>> orbit_decomposition(const DenominatorRecord& record) {
  if (record.q % 3 == 0) throw DomainError("orbit_decomposition: 3 divides q");
  if (!record.numerators) {
    if (record.n_q == 0) return {};
    throw DomainError("orbit_decomposition: record has no numerator list");
  }
  const auto& nums = *record.numerators;
  std::vector<bool> done(nums.size(), false);
  auto index_of = [&](u64 p) {
    auto it = std::lower_bound(nums.begin(), nums.end(), p);
    if (it == nums.end() || *it != p) {
      throw IntegrityError("numerator set for q = " + std::to_string(record.q) + " is not closed under x3");
    }
    return static_cast<std::size_t>(it - nums.begin());
  };
  std::vector<std::vector<u64>> orbits;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (done[i]) continue;
    std::vector<u64> orbit;
    u64 x = nums[i];
    do {
      done[index_of(x)] = true;
      orbit.push_back(x);
      x = static_cast<u64>(static_cast<u128>(x) * 3 % record.q);
    } while (x != nums[i]);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<CantorRational> cantor_rationals(const DenominatorRecord& record) {
  if (!record.numerators) throw DomainError("cantor_rationals: record has no numerator list");
  const BaseSplit split = split_base(record.q, 3);
  std::vector<CantorRational> out;
  out.reserve(record.numerators->size());
  if (split.power == 0) {
    for (const auto& orbit : orbit_decomposition(record)) {
      const u64 rep = *std::min_element(orbit.begin(), orbit.end());
      for (u64 p : orbit) out.push_back({p, record.q, 0, record.ell, rep});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  } else {
    for (u64 p : *record.numerators) out.push_back({p, record.q, split.power, record.ell, p});
  }
  return out;
}

void fill_arithmetic(DenominatorRecord& record) {
  record.ell = ell(record.q);
  record.phi = euler_phi(record.q);
  record.mlo = (record.q >= 2 && record.q % 3 != 0) ? mlo(record.q) : 0;
}

void validate_record(const DenominatorRecord& r) {
  auto fail = [&](const std::string& what) {
    throw IntegrityError("record q = " + std::to_string(r.q) + ": " + what);
  };
  if (r.q < 2) fail("q must be >= 2");
  if (r.n_q > r.phi) fail("n_q exceeds phi(q)");
  if (r.q % 3 != 0 && r.n_q > 0 && r.ell != 0 && r.n_q % r.ell != 0) fail("ell does not divide n_q");
  if (r.n_q % 2 != 0) fail("n_q is odd, reflection closure broken");
  if (r.numerators) {
    const auto& nums = *r.numerators;
    if (nums.size() != r.n_q) fail("numerator count differs from n_q");
    for (std::size_t i = 0; i < nums.size(); ++i) {
      if (nums[i] == 0 || nums[i] >= r.q) fail("numerator out of range");
      if (i && nums[i] <= nums[i - 1]) fail("numerators not strictly increasing");
      if (nums[i] + nums[nums.size() - 1 - i] != r.q) fail("numerators not closed under p -> q - p");
    }
  }
}

}  // namespace cantor
