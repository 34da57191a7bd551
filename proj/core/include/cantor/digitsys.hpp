#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cantor {

using BigInt = mpz_class;

// A digit string, most significant digit first. Each element is a digit value
// (not an ASCII character).
using Digits = std::vector<std::uint8_t>;

std::string digits_to_string(const Digits& d);
Digits digits_from_string(std::string_view s);

/// Base b together with the set of allowed digits F. The missing-digit set is
/// every x in [0,1] with some base-b expansion whose digits all lie in F.
class DigitSystem {
 public:
  /// Throws DomainError unless 3 <= base <= 36 and F is a proper nonempty
  /// subset of {0, ..., base-1}.
  DigitSystem(unsigned base, std::vector<unsigned> allowed);

  /// Base 3, digits {0,2}: the middle-thirds Cantor set.
  static DigitSystem ternary();

  /// Parses the `b=<int>,F=<comma-list>` form written by to_string().
  static DigitSystem parse(std::string_view text);

  unsigned base() const noexcept { return base_; }
  const std::vector<unsigned>& allowed() const noexcept { return allowed_; }
  bool allows(unsigned digit) const noexcept { return digit < base_ && ((mask_ >> digit) & 1u); }
  bool is_ternary_cantor() const noexcept { return base_ == 3 && mask_ == 0b101u; }

  /// log|F| / log b.
  double dimension() const noexcept;

  std::string to_string() const;
  /// Filesystem-safe tag, e.g. "b3-F02".
  std::string tag() const;

  bool operator==(const DigitSystem& other) const noexcept {
    return base_ == other.base_ && mask_ == other.mask_;
  }

 private:
  unsigned base_;
  std::vector<unsigned> allowed_;
  std::uint64_t mask_ = 0;
};

/// Canonical eventually periodic expansion 0.s a a a ... of a rational in
/// [0,1]. Terminating values carry the period "0". The value 1 has no such
/// expansion with a nonzero leading digit position and is stored as the flag
/// `is_one` with empty digit strings.
struct PeriodicExpansion {
  Digits preperiod;
  Digits period;
  unsigned base = 3;
  bool is_one = false;

  static PeriodicExpansion one(unsigned base);
  bool operator==(const PeriodicExpansion&) const = default;
};

/// Unreduced P/Q with Q = b^i0 (b^l - 1), and the reduced pair p/q.
struct ExpansionValue {
  BigInt numerator;
  BigInt denominator;
  BigInt p;
  BigInt q;
};

/// Canonical expansion of p/q in the given base. Requires 0 <= p <= q,
/// q >= 1 and gcd(p,q) = 1; throws DomainError otherwise.
PeriodicExpansion expansion_of_rational(std::uint64_t p, std::uint64_t q, unsigned base);

ExpansionValue value_of_expansion(const PeriodicExpansion& e);

/// True iff some base-b representation of the value has all digits allowed.
/// For terminating values both the canonical form and the trailing-(b-1)
/// form are tested.
bool is_member(const PeriodicExpansion& e, const DigitSystem& system);

/// True iff the word is not a concatenation of two or more copies of a
/// shorter block. Requires a nonempty word.
bool is_primitive(const Digits& word);

/// True iff n, written with exactly `width` base-b digits (leading zeros
/// included), uses only allowed digits. n must be nonnegative and < b^width.
bool digits_allowed(const BigInt& n, std::size_t width, const DigitSystem& system);

/// Integer value of a digit string in the given base.
BigInt digits_value(const Digits& d, unsigned base);

}  // namespace cantor
