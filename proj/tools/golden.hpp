#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cantor::cli {

/// A computed or published table. The first column is the row key.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table compute_table1(std::uint64_t q_max, unsigned threads);
Table compute_table2();
Table compute_table3(const std::vector<std::uint64_t>& qs);
Table compute_table4(const std::vector<std::uint64_t>& qs);
Table compute_table5(unsigned r_max);

Table read_table(const std::filesystem::path& path);

/// A known difference between golden and computed values, listed in
/// known_discrepancies.csv as (table, key, column, expected, computed, reason).
/// Column "*" refers to a whole row; "present" / "" mark presence.
struct KnownDiscrepancy {
  int table = 0;
  std::string key;
  std::string column;
  std::string expected;
  std::string computed;
  std::string reason;
};

std::vector<KnownDiscrepancy> read_known(const std::filesystem::path& path);

struct DiffLine {
  enum class Kind { match, known, mismatch, skipped } kind = Kind::match;
  std::string key;
  std::string column;
  std::string expected;
  std::string computed;
  std::string reason;
};

struct DiffReport {
  std::vector<DiffLine> lines;
  std::size_t count(DiffLine::Kind k) const;
};

/// Compares every golden cell against the computed table. Integers must be
/// equal; decimals must agree to half a unit in the last printed place or
/// 1e-9, whichever is larger; "-" means undefined. Golden rows whose key is
/// missing from `computed` are skipped when listed in `not_computed`.
DiffReport diff_tables(int table_no, const Table& golden, const Table& computed,
                       const std::vector<KnownDiscrepancy>& known, const std::vector<std::string>& not_computed = {});

/// Keys of golden table 4, for computing exactly those rows.
std::vector<std::uint64_t> table_keys(const Table& golden);

}  // namespace cantor::cli
