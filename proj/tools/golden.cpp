#include "golden.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "cantor/counting.hpp"
#include "cantor/error.hpp"
#include "cantor/models.hpp"
#include "cantor/numtheory.hpp"
#include "cantor/symmetry.hpp"
#include "csv.hpp"

namespace cantor::cli {

namespace {

using u64 = std::uint64_t;

std::string num(u64 v) { return std::to_string(v); }
std::string num(double v) { return format_double(v); }

DenominatorRecord record_of(u64 q) {
  EnumerationOptions opts;
  opts.keep_numerators = false;
  return enumerate(q, std::nullopt, opts);
}

Table ratio_table(const std::vector<u64>& qs) {
  Table t{{"q", "ell", "N_q", "MLO", "ratio"}, {}};
  for (u64 q : qs) {
    const DenominatorRecord r = record_of(q);
    t.rows.push_back({num(q), num(r.ell), num(r.n_q), num(r.mlo),
                      r.mlo == 0 ? std::string("-") : num(static_cast<double>(r.n_q) / static_cast<double>(r.mlo))});
  }
  return t;
}

bool is_blank(const std::string& s) { return s.empty() || s == "-"; }

int decimals(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

bool cells_agree(const std::string& expected, const std::string& computed) {
  if (is_blank(expected) || is_blank(computed)) return is_blank(expected) && is_blank(computed);
  double a = 0;
  double b = 0;
  try {
    a = std::stod(expected);
    b = std::stod(computed);
  } catch (const std::exception&) {
    return expected == computed;
  }
  const double tol = std::max(0.5 * std::pow(10.0, -decimals(expected)), 1e-9);
  return std::fabs(a - b) <= tol;
}

}  // namespace

Table compute_table1(u64 q_max, unsigned threads) {
  Table t{{"q", "ratio"}, {}};
  for (const auto& r : ell_hat_scan(q_max, threads).records) t.rows.push_back({num(r.q), num(r.ratio)});
  return t;
}

Table compute_table2() {
  Table t{{"r", "q", "N_q", "MLO", "ratio", "corrected"}, {}};
  for (unsigned r = 4; r <= 13; ++r) {
    const CorrectedPrediction p = corrected_prediction(r);
    t.rows.push_back({num(u64{r}), num(p.q), num(p.n_q), num(p.mlo), p.ratio ? num(*p.ratio) : "-",
                      p.corrected ? num(*p.corrected) : "-"});
  }
  return t;
}

Table compute_table3(const std::vector<u64>& qs) { return ratio_table(qs); }
Table compute_table4(const std::vector<u64>& qs) { return ratio_table(qs); }

Table compute_table5(unsigned r_max) {
  Table t{{"r", "q_r", "N_q", "X", "Y_floor", "Y_round", "Z", "Y_plus_MLO", "Y_round_plus_F"}, {}};
  for (unsigned r = 1; r <= r_max; ++r) {
    const CensusRow c = census(SymmetryKind::padded, r);
    const u64 f = independent_term(ell(c.q), euler_phi(c.q));
    t.rows.push_back({num(u64{r}), num(c.q), num(c.n_q), num(c.x), num(c.y_floor), num(c.y_round), num(c.z),
                      num(c.y_plus_mlo), num(c.y_round + f)});
  }
  return t;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read golden file " + path.string());
  auto rows = read_csv(in);
  if (rows.empty()) throw DomainError("golden file " + path.string() + " is empty");
  Table t;
  t.header = std::move(rows.front());
  t.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  return t;
}

std::vector<KnownDiscrepancy> read_known(const std::filesystem::path& path) {
  const Table t = read_table(path);
  std::vector<KnownDiscrepancy> out;
  for (const auto& row : t.rows) {
    if (row.size() != 6) throw DomainError("malformed row in " + path.string());
    out.push_back({std::stoi(row[0]), row[1], row[2], row[3], row[4], row[5]});
  }
  return out;
}

std::size_t DiffReport::count(DiffLine::Kind k) const {
  return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [&](const DiffLine& l) { return l.kind == k; }));
}

DiffReport diff_tables(int table_no, const Table& golden, const Table& computed,
                       const std::vector<KnownDiscrepancy>& known, const std::vector<std::string>& not_computed) {
  DiffReport report;
  auto find_known = [&](const std::string& key, const std::string& column) -> const KnownDiscrepancy* {
    for (const auto& k : known) {
      if (k.table == table_no && k.key == key && k.column == column) return &k;
    }
    return nullptr;
  };
  auto classify = [&](DiffLine line) {
    if (cells_agree(line.expected, line.computed)) {
      line.kind = DiffLine::Kind::match;
    } else if (const auto* k = find_known(line.key, line.column); k && k->computed == line.computed) {
      line.kind = DiffLine::Kind::known;
      line.reason = k->reason;
    } else {
      line.kind = DiffLine::Kind::mismatch;
    }
    report.lines.push_back(std::move(line));
  };

  std::map<std::string, std::size_t> computed_col;
  for (std::size_t i = 0; i < computed.header.size(); ++i) computed_col[computed.header[i]] = i;
  std::map<std::string, const std::vector<std::string>*> computed_rows;
  for (const auto& row : computed.rows) computed_rows[row.at(0)] = &row;

  std::map<std::string, bool> golden_keys;
  for (const auto& row : golden.rows) {
    const std::string& key = row.at(0);
    golden_keys[key] = true;
    const auto it = computed_rows.find(key);
    if (it == computed_rows.end()) {
      if (std::find(not_computed.begin(), not_computed.end(), key) != not_computed.end()) {
        report.lines.push_back({DiffLine::Kind::skipped, key, "*", "present", "", "not computed in this run"});
      } else {
        classify({DiffLine::Kind::match, key, "*", "present", "", ""});
      }
      continue;
    }
    for (std::size_t c = 1; c < golden.header.size() && c < row.size(); ++c) {
      const auto col = computed_col.find(golden.header[c]);
      if (col == computed_col.end()) throw DomainError("computed table lacks column " + golden.header[c]);
      classify({DiffLine::Kind::match, key, golden.header[c], row[c], it->second->at(col->second), ""});
    }
  }
  for (const auto& row : computed.rows) {
    if (!golden_keys.count(row.at(0))) classify({DiffLine::Kind::match, row.at(0), "*", "", "present", ""});
  }
  return report;
}

std::vector<u64> table_keys(const Table& golden) {
  std::vector<u64> keys;
  for (const auto& row : golden.rows) keys.push_back(std::stoull(row.at(0)));
  return keys;
}

}  // namespace cantor::cli
