#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/enumerator.hpp"
#include "cantor/factor.hpp"

namespace cantor {

// N_1: the values 0 and 1, both on the set.
inline constexpr std::uint64_t kUnitCount = 2;

/// Denominator window I_T = {q : (1 - c) T < q <= T}. c = 0 is the single
/// denominator T; c = 1 is the full range (0, T].
struct Window {
  double c = 0.5;
  std::uint64_t t = 1;

  Window(double c, std::uint64_t t);
  std::uint64_t first() const noexcept { return first_; }
  std::uint64_t last() const noexcept { return t; }
  bool contains(std::uint64_t q) const noexcept { return q >= first_ && q <= t; }

 private:
  std::uint64_t first_;
};

/// Dense per-q table of N_q with prefix sums, built from records. q = 1 is
/// implicit and contributes kUnitCount unless excluded.
class CountTable {
 public:
  CountTable(const std::vector<DenominatorRecord>& records, bool include_unit = true);

  std::uint64_t max_q() const noexcept { return max_q_; }
  bool include_unit() const noexcept { return include_unit_; }
  const DenominatorRecord* find(std::uint64_t q) const noexcept;

  /// Sum of N_q over q in [lo, hi] (all q, or only 3 not dividing q).
  /// Throws CoverageError naming the missing range if any q is absent.
  std::uint64_t sum(std::uint64_t lo, std::uint64_t hi, bool purely_periodic) const;

  /// Throws CoverageError unless every q in [lo, hi] (q >= 2) has a record.
  void require(std::uint64_t lo, std::uint64_t hi) const;

 private:
  std::uint64_t max_q_ = 1;
  bool include_unit_;
  std::vector<std::size_t> by_q_;  // index into owned_, or npos
  std::vector<std::uint64_t> prefix_all_;
  std::vector<std::uint64_t> prefix_pure_;
  std::vector<std::uint64_t> prefix_missing_;
  std::vector<DenominatorRecord> owned_;
};

std::uint64_t n_tilde(std::uint64_t t, double c, const CountTable& table);
std::uint64_t n_window(std::uint64_t t, double c, const CountTable& table);
std::uint64_t n_tilde_star(std::uint64_t t, const CountTable& table);
std::uint64_t n_star(std::uint64_t t, const CountTable& table);

struct CountRow {
  std::uint64_t t = 0;
  double c = 0;
  std::uint64_t n_tilde = 0;
  std::uint64_t n = 0;
  std::uint64_t n_tilde_star = 0;
  std::uint64_t n_star = 0;
};
std::vector<CountRow> count_series(const std::vector<std::uint64_t>& grid, double c, const CountTable& table);

/// T_k = round((1 + c)^k) for k = 0, 1, ..., deduplicated, within [t_min, t_max].
std::vector<std::uint64_t> geometric_grid(double c, std::uint64_t t_min, std::uint64_t t_max);
std::vector<std::uint64_t> linear_grid(std::uint64_t t_min, std::uint64_t t_max, std::uint64_t step);

/// L(l, T) = {q in I_T : ell(q) = l}, found among the divisors of 3^l - 1.
std::vector<std::uint64_t> l_set(std::uint64_t l, std::uint64_t t, double c, const FactorBudget& budget = {});

struct EllHatRecord {
  std::uint64_t q = 0;
  std::uint64_t ell_hat = 0;
  double ratio = 0;  // ell_hat / log_3 q
};

struct EllHatScan {
  std::vector<EllHatRecord> records;  // record-setting q, increasing ratio
  std::uint64_t scanned_to = 1;       // every q <= scanned_to was examined
  bool complete = false;
};

/// ell_hat(q) = ell(q) if N_q != 0, else 0.
std::uint64_t ell_hat(std::uint64_t q);

/// Scans q = 2..q_max and reports each q whose ratio ell_hat(q)/log_3 q
/// strictly exceeds every earlier nonzero ratio. With a time limit the scan
/// may stop early; the result then has complete = false.
EllHatScan ell_hat_scan(std::uint64_t q_max, unsigned threads, std::optional<double> max_seconds = std::nullopt);

}  // namespace cantor
