#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/digitsys.hpp"

namespace cantor {

enum class Method { algorithm1, word_oracle };

std::string_view to_string(Method m) noexcept;
Method method_from_string(std::string_view s);

/// A reduced rational p/q lying on the set.
struct CantorRational {
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  std::uint64_t i0 = 0;
  std::uint64_t ell = 1;
  std::uint64_t orbit_rep = 0;  // least numerator in the x3 orbit (p itself when 3 | q)
  bool operator==(const CantorRational&) const = default;
};

/// Per-denominator summary. `mlo` is 0 whenever the coset model does not
/// apply (3 | q, or q does not divide (3^l - 1)/2).
struct DenominatorRecord {
  std::uint64_t q = 0;
  std::uint64_t ell = 0;
  std::uint64_t phi = 0;
  std::uint64_t n_q = 0;
  std::uint64_t mlo = 0;
  Method method = Method::algorithm1;
  std::optional<std::vector<std::uint64_t>> numerators;

  bool operator==(const DenominatorRecord&) const = default;
};

struct EnumerationOptions {
  bool keep_numerators = true;
  // Stop after the first Cantor rational is found; n_q is then 0 or >= 1
  // rather than exact. Used by the l-hat scan.
  bool stop_at_first = false;
};

/// The appendix algorithm: prime mask, x3/reflection passlist, per-p test on
/// T = (p/q)(3^l - 1)3^t split into period a and preperiod s. Base-3 {0,2}
/// only. Throws DomainError for q < 2.
DenominatorRecord enumerate_by_algorithm1(std::uint64_t q, const EnumerationOptions& opts = {});

/// Same set computed as "loop over p coprime to q" with a direct digit walk of
/// each p/q. Shares nothing with the passlist machinery; used as a check.
std::vector<std::uint64_t> enumerate_by_coprime_loop(std::uint64_t q, const DigitSystem& system);

inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 32;

/// Independent oracle: enumerate every allowed preperiod/period word pair,
/// form P/Q, reduce, keep denominator exactly q. Throws BudgetError when the
/// number of words exceeds max_words.
DenominatorRecord enumerate_by_words(std::uint64_t q, const DigitSystem& system,
                                     std::uint64_t max_words = kDefaultWordBudget,
                                     const EnumerationOptions& opts = {});

/// Number of words enumerate_by_words would visit for q.
std::uint64_t word_count(std::uint64_t q, const DigitSystem& system);

/// Word oracle when 2^(l+t) (l+t) < q, or when q > 2^30 and 2^(l+t) is within
/// the word budget; Algorithm 1 otherwise.
Method choose_method(std::uint64_t q);

DenominatorRecord enumerate(std::uint64_t q, std::optional<Method> method = std::nullopt,
                            const EnumerationOptions& opts = {});

/// True iff some p/q with gcd(p,q) = 1 lies on the ternary Cantor set.
bool has_cantor_rational(std::uint64_t q);

/// Partition of the record's numerators into x3 orbits, each listed in walk
/// order from its least element. Requires 3 not dividing q.
std::vector<std::vector<std::uint64_t>> orbit_decomposition(const DenominatorRecord& record);

std::vector<CantorRational> cantor_rationals(const DenominatorRecord& record);

/// Fills ell, phi and mlo for q (n_q, method and numerators untouched).
void fill_arithmetic(DenominatorRecord& record);

/// Throws IntegrityError describing the first violated record invariant.
void validate_record(const DenominatorRecord& record);

}  // namespace cantor
