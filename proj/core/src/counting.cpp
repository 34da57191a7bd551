#include "cantor/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "cantor/error.hpp"
#include "cantor/numtheory.hpp"
#include "cantor/parallel.hpp"

namespace cantor {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::string range_text(std::uint64_t lo, std::uint64_t hi) {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

}  // namespace

Window::Window(double c_, std::uint64_t t_) : c(c_), t(t_) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("window parameter c must lie in [0, 1]");
  if (t == 0) throw DomainError("window threshold T must be >= 1");
  if (c == 0.0) {
    first_ = t;
  } else if (c == 1.0) {
    first_ = 1;
  } else {
    const long double low = (1.0L - static_cast<long double>(c)) * static_cast<long double>(t);
    // Guard against (1-c)T landing a hair below an integer it equals exactly.
    first_ = static_cast<std::uint64_t>(std::floor(low * (1.0L + 1e-15L))) + 1;
  }
}

CountTable::CountTable(const std::vector<DenominatorRecord>& records, bool include_unit)
    : include_unit_(include_unit) {
  for (const auto& r : records) max_q_ = std::max(max_q_, r.q);
  by_q_.assign(max_q_ + 1, npos);
  owned_.reserve(records.size());
  for (const auto& r : records) {
    if (r.q < 2) throw DomainError("count table records must have q >= 2");
    if (by_q_[r.q] != npos) throw IntegrityError("duplicate record for q = " + std::to_string(r.q));
    DenominatorRecord slim = r;
    slim.numerators.reset();
    by_q_[r.q] = owned_.size();
    owned_.push_back(std::move(slim));
  }
  prefix_all_.assign(max_q_ + 1, 0);
  prefix_pure_.assign(max_q_ + 1, 0);
  prefix_missing_.assign(max_q_ + 1, 0);
  const std::uint64_t unit = include_unit_ ? kUnitCount : 0;
  prefix_all_[1] = prefix_pure_[1] = unit;
  for (std::uint64_t q = 2; q <= max_q_; ++q) {
    const std::uint64_t n = by_q_[q] == npos ? 0 : owned_[by_q_[q]].n_q;
    prefix_all_[q] = prefix_all_[q - 1] + n;
    prefix_pure_[q] = prefix_pure_[q - 1] + (q % 3 ? n : 0);
    prefix_missing_[q] = prefix_missing_[q - 1] + (by_q_[q] == npos ? 1 : 0);
  }
}

const DenominatorRecord* CountTable::find(std::uint64_t q) const noexcept {
  if (q > max_q_ || by_q_[q] == npos) return nullptr;
  return &owned_[by_q_[q]];
}

void CountTable::require(std::uint64_t lo, std::uint64_t hi) const {
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi < lo) return;
  if (hi > max_q_) {
    const std::uint64_t from = std::max(lo, max_q_ + 1);
    throw CoverageError("no records for q in " + range_text(from, hi));
  }
  if (prefix_missing_[hi] - prefix_missing_[lo - 1] == 0) return;
  std::uint64_t a = lo;
  while (by_q_[a] != npos) ++a;
  std::uint64_t b = a;
  while (b + 1 <= hi && by_q_[b + 1] == npos) ++b;
  throw CoverageError("no records for q in " + range_text(a, b));
}

std::uint64_t CountTable::sum(std::uint64_t lo, std::uint64_t hi, bool purely_periodic) const {
  if (lo == 0) lo = 1;
  if (hi < lo) return 0;
  require(lo, hi);
  const auto& prefix = purely_periodic ? prefix_pure_ : prefix_all_;
  return prefix[hi] - prefix[lo - 1];
}

std::uint64_t n_tilde(std::uint64_t t, double c, const CountTable& table) {
  const Window w(c, t);
  return table.sum(w.first(), w.last(), true);
}

std::uint64_t n_window(std::uint64_t t, double c, const CountTable& table) {
  const Window w(c, t);
  return table.sum(w.first(), w.last(), false);
}

std::uint64_t n_tilde_star(std::uint64_t t, const CountTable& table) { return table.sum(1, t, true); }

std::uint64_t n_star(std::uint64_t t, const CountTable& table) { return table.sum(1, t, false); }

std::vector<CountRow> count_series(const std::vector<std::uint64_t>& grid, double c, const CountTable& table) {
  std::vector<CountRow> rows;
  rows.reserve(grid.size());
  for (std::uint64_t t : grid) {
    rows.push_back({t, c, n_tilde(t, c, table), n_window(t, c, table), n_tilde_star(t, table),
                    n_star(t, table)});
  }
  return rows;
}

std::vector<std::uint64_t> geometric_grid(double c, std::uint64_t t_min, std::uint64_t t_max) {
  if (!(c > 0.0)) throw DomainError("geometric grid needs c > 0");
  std::vector<std::uint64_t> grid;
  const long double ratio = 1.0L + static_cast<long double>(c);
  long double x = 1.0L;
  for (;;) {
    const auto t = static_cast<std::uint64_t>(std::llround(x));
    if (t > t_max) break;
    if (t >= t_min && (grid.empty() || grid.back() != t)) grid.push_back(t);
    x *= ratio;
  }
  return grid;
}

std::vector<std::uint64_t> linear_grid(std::uint64_t t_min, std::uint64_t t_max, std::uint64_t step) {
  if (step == 0) throw DomainError("linear grid step must be >= 1");
  std::vector<std::uint64_t> grid;
  for (std::uint64_t t = std::max<std::uint64_t>(t_min, 1); t <= t_max; t += step) grid.push_back(t);
  return grid;
}

std::vector<std::uint64_t> l_set(std::uint64_t l, std::uint64_t t, double c, const FactorBudget& budget) {
  if (l == 0) throw DomainError("l_set: l must be >= 1");
  const Window w(c, t);
  std::vector<std::uint64_t> out;
  for (std::uint64_t q : divisors_up_to(factorize_three_power_minus_one(l, budget), t)) {
    if (q < 2 || !w.contains(q)) continue;
    if (mult_order(3, q) == l) out.push_back(q);
  }
  return out;
}

std::uint64_t ell_hat(std::uint64_t q) {
  if (q < 2) throw DomainError("ell_hat: q must be >= 2");
  return has_cantor_rational(q) ? ell(q) : 0;
}

EllHatScan ell_hat_scan(std::uint64_t q_max, unsigned threads, std::optional<double> max_seconds) {
  EllHatScan scan;
  if (q_max < 2) {
    scan.complete = true;
    return scan;
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> values(q_max + 1, 0);
  constexpr std::uint64_t kBlock = 512;
  std::uint64_t done = 1;
  while (done < q_max) {
    const std::uint64_t hi = std::min(q_max, done + kBlock);
    parallel_for(done + 1, hi + 1, threads, [&](std::uint64_t q) { values[q] = ell_hat(q); });
    done = hi;
    if (max_seconds) {
      const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
      if (spent.count() > *max_seconds && done < q_max) break;
    }
  }
  scan.scanned_to = done;
  scan.complete = done >= q_max;

  double best = 0;
  for (std::uint64_t q = 2; q <= done; ++q) {
    if (values[q] == 0) continue;
    const double ratio = static_cast<double>(values[q]) * std::log(3.0) / std::log(static_cast<double>(q));
    if (ratio > best) {
      best = ratio;
      scan.records.push_back({q, values[q], ratio});
    }
  }
  return scan;
}

}  // namespace cantor
