#include "cantor/digitsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/numtheory.hpp"

namespace cantor {

__extension__ using u128 = unsigned __int128;

namespace {

constexpr char kDigitChars[] = "0123456789abcdefghijklmnopqrstuvwxyz";

unsigned char_digit(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<unsigned>(c - 'a') + 10;
  throw DomainError(std::string("invalid digit character '") + c + "'");
}

// Largest power of `base` that fits in an unsigned long, and its exponent.
std::pair<unsigned long, unsigned> chunk_power(unsigned base) {
  unsigned long p = 1;
  unsigned k = 0;
  while (p <= ~0ul / base) {
    p *= base;
    ++k;
  }
  return {p, k};
}

}  // namespace

std::string digits_to_string(const Digits& d) {
  std::string s;
  s.reserve(d.size());
  for (auto v : d) s.push_back(kDigitChars[v]);
  return s;
}

Digits digits_from_string(std::string_view s) {
  Digits d;
  d.reserve(s.size());
  for (char c : s) d.push_back(static_cast<std::uint8_t>(char_digit(c)));
  return d;
}

DigitSystem::DigitSystem(unsigned base, std::vector<unsigned> allowed) : base_(base) {
  if (base < 3 || base > 36) throw DomainError("digit system base must lie in [3, 36]");
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (allowed.empty() || allowed.size() >= base) {
    throw DomainError("allowed digits must be a proper nonempty subset of {0..b-1}");
  }
  for (unsigned d : allowed) {
    if (d >= base) throw DomainError("allowed digit " + std::to_string(d) + " >= base");
    mask_ |= std::uint64_t{1} << d;
  }
  allowed_ = std::move(allowed);
}

DigitSystem DigitSystem::ternary() { return DigitSystem(3, {0, 2}); }

DigitSystem DigitSystem::parse(std::string_view text) {
  // b=<int>,F=<d>,<d>,...
  if (text.substr(0, 2) != "b=") throw DomainError("digit system must start with 'b='");
  const auto fpos = text.find(",F=");
  if (fpos == std::string_view::npos) throw DomainError("digit system must contain ',F='");
  unsigned base = 0;
  std::vector<unsigned> allowed;
  try {
    base = static_cast<unsigned>(std::stoul(std::string(text.substr(2, fpos - 2))));
    std::stringstream list{std::string(text.substr(fpos + 3))};
    std::string item;
    while (std::getline(list, item, ',')) allowed.push_back(static_cast<unsigned>(std::stoul(item)));
  } catch (const std::logic_error&) {
    throw DomainError("malformed digit system '" + std::string(text) + "'");
  }
  return DigitSystem(base, std::move(allowed));
}

double DigitSystem::dimension() const noexcept {
  return std::log(static_cast<double>(allowed_.size())) / std::log(static_cast<double>(base_));
}

std::string DigitSystem::to_string() const {
  std::string s = "b=" + std::to_string(base_) + ",F=";
  for (std::size_t i = 0; i < allowed_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(allowed_[i]);
  }
  return s;
}

std::string DigitSystem::tag() const {
  std::string s = "b" + std::to_string(base_) + "-F";
  for (unsigned d : allowed_) s.push_back(kDigitChars[d]);
  return s;
}

PeriodicExpansion PeriodicExpansion::one(unsigned base) {
  PeriodicExpansion e;
  e.base = base;
  e.is_one = true;
  return e;
}

PeriodicExpansion expansion_of_rational(std::uint64_t p, std::uint64_t q, unsigned base) {
  if (q == 0) throw DomainError("denominator must be >= 1");
  if (p > q) throw DomainError("expansion_of_rational: p > q");
  if (std::gcd(p, q) != 1) throw DomainError("expansion_of_rational: gcd(p, q) != 1");
  if (base < 2) throw DomainError("base must be >= 2");
  if (p == q) return PeriodicExpansion::one(base);

  const BaseSplit split = split_base(q, base);
  const std::uint64_t period_len = mult_order(base, split.rest);

  PeriodicExpansion e;
  e.base = base;
  e.preperiod.reserve(split.power);
  e.period.reserve(period_len);
  // Long division; p < q so p * base fits in 128 bits.
  std::uint64_t r = p;
  auto next_digit = [&] {
    const auto scaled = static_cast<u128>(r) * base;
    r = static_cast<std::uint64_t>(scaled % q);
    return static_cast<std::uint8_t>(scaled / q);
  };
  for (unsigned i = 0; i < split.power; ++i) e.preperiod.push_back(next_digit());
  for (std::uint64_t i = 0; i < period_len; ++i) e.period.push_back(next_digit());
  return e;
}

BigInt digits_value(const Digits& d, unsigned base) {
  BigInt v = 0;
  for (auto digit : d) {
    v *= base;
    v += digit;
  }
  return v;
}

ExpansionValue value_of_expansion(const PeriodicExpansion& e) {
  ExpansionValue out;
  if (e.is_one) {
    out.numerator = out.denominator = out.p = out.q = 1;
    return out;
  }
  if (e.period.empty()) throw DomainError("expansion has an empty period");
  BigInt period_den;
  mpz_ui_pow_ui(period_den.get_mpz_t(), e.base, e.period.size());
  period_den -= 1;
  BigInt pre_scale;
  mpz_ui_pow_ui(pre_scale.get_mpz_t(), e.base, e.preperiod.size());

  out.numerator = digits_value(e.preperiod, e.base) * period_den + digits_value(e.period, e.base);
  out.denominator = pre_scale * period_den;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), out.numerator.get_mpz_t(), out.denominator.get_mpz_t());
  out.p = out.numerator / g;
  out.q = out.denominator / g;
  return out;
}

bool is_member(const PeriodicExpansion& e, const DigitSystem& system) {
  if (e.is_one) return system.allows(system.base() - 1);
  auto all_allowed = [&](const Digits& d) {
    return std::all_of(d.begin(), d.end(), [&](auto v) { return system.allows(v); });
  };
  if (all_allowed(e.preperiod) && all_allowed(e.period)) return true;

  // A terminating value 0.s000... also equals 0.s'(b-1)(b-1)... where s' is s
  // with its last nonzero digit decremented.
  const bool terminating = e.period.size() == 1 && e.period[0] == 0;
  if (!terminating) return false;
  Digits alt = e.preperiod;
  while (!alt.empty() && alt.back() == 0) alt.pop_back();
  if (alt.empty()) return false;  // the value 0
  --alt.back();
  return all_allowed(alt) && system.allows(system.base() - 1);
}

bool is_primitive(const Digits& word) {
  if (word.empty()) throw DomainError("is_primitive: empty word");
  const std::size_t n = word.size();
  for (std::size_t k = 1; k < n; ++k) {
    if (n % k) continue;
    bool repeats = true;
    for (std::size_t i = k; i < n && repeats; ++i) repeats = word[i] == word[i - k];
    if (repeats) return false;
  }
  return true;
}

bool digits_allowed(const BigInt& n, std::size_t width, const DigitSystem& system) {
  const unsigned base = system.base();
  const auto [chunk, chunk_digits] = chunk_power(base);
  BigInt rest = n;
  std::size_t seen = 0;
  while (seen < width) {
    unsigned long low = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), chunk);
    for (unsigned i = 0; i < chunk_digits && seen < width; ++i, ++seen) {
      if (!system.allows(static_cast<unsigned>(low % base))) return false;
      low /= base;
    }
    if (rest == 0 && system.allows(0)) return true;
  }
  return true;
}

}  // namespace cantor
