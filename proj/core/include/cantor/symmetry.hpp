#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/enumerator.hpp"

namespace cantor {

/// omega_bar: words w w' of length 2r, w' the 0<->2 swap of w; target 3^r + 1.
/// pad0 / pad2: w w' 0^r or w w' 2^r of length 3r; padded is their union.
/// Padded kinds target q_r = 3^(2r) + 3^r + 1.
enum class SymmetryKind { omega_bar, pad0, pad2, padded };

std::string_view to_string(SymmetryKind k) noexcept;
SymmetryKind symmetry_kind_from_string(std::string_view s);

std::uint64_t word_length(SymmetryKind kind, unsigned r);
std::uint64_t target_q(SymmetryKind kind, unsigned r);

inline constexpr std::uint64_t kDefaultSymmetryBudget = std::uint64_t{1} << 24;

/// All generated words together with every cyclic shift, deduplicated as
/// strings, sorted. Throws BudgetError if 2^r * length exceeds max_words.
std::vector<std::string> generate_words(SymmetryKind kind, unsigned r,
                                        std::uint64_t max_words = kDefaultSymmetryBudget);

/// Reduced denominator of the purely periodic value 0.(word) in base 3.
std::uint64_t word_denominator(std::string_view word);

struct CensusRow {
  unsigned r = 0;
  std::uint64_t q = 0;
  std::uint64_t n_q = 0;
  std::uint64_t x = 0;
  std::uint64_t y_floor = 0;  // floor(X phi(q) / q)
  std::uint64_t y_round = 0;  // round(X phi(q) / q)
  std::uint64_t z = 0;        // generated words with reduced denominator exactly q
  std::uint64_t mlo = 0;
  std::uint64_t y_plus_mlo = 0;  // y_floor + mlo
};

/// Census for one r. N_q comes from `record` if given, else from enumerate().
CensusRow census(SymmetryKind kind, unsigned r, const std::optional<DenominatorRecord>& record = std::nullopt);

struct CorrectedPrediction {
  unsigned r = 0;
  std::uint64_t q = 0;
  std::uint64_t n_q = 0;
  std::uint64_t mlo = 0;
  std::optional<double> ratio;      // N_q / MLO
  std::optional<double> corrected;  // (2/3)^r N_q / MLO
  double revised_estimate = 0;      // MLO (3/2)^r
};

/// Prediction for q = 3^r + 1 revised by (3/2)^r. The ratios are empty when
/// MLO(q) = 0.
CorrectedPrediction corrected_prediction(unsigned r, const std::optional<DenominatorRecord>& record = std::nullopt);

}  // namespace cantor
