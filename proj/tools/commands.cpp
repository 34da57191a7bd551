#include "commands.hpp"

#include <ostream>

#include "cantor/counting.hpp"
#include "cantor/error.hpp"
#include "cantor/models.hpp"
#include "cantor/store.hpp"
#include "cantor/symmetry.hpp"
#include "csv.hpp"
#include "golden.hpp"

namespace cantor::cli {

namespace {

using u64 = std::uint64_t;

std::vector<u64> make_grid(const std::string& kind, double c, u64 t_min, u64 t_max, u64 step) {
  if (t_max == 0) throw DomainError("--t-max must be >= 1");
  if (kind == "geometric") return geometric_grid(c, t_min, t_max);
  if (kind == "linear") return linear_grid(t_min, t_max, step);
  throw DomainError("unknown grid '" + kind + "' (expected geometric or linear)");
}

std::optional<Method> parse_method(const std::string& s) {
  if (s == "auto") return std::nullopt;
  return method_from_string(s);
}

void write_table(std::ostream& out, const Table& t) {
  CsvWriter csv(out);
  csv.write(t.header);
  for (const auto& row : t.rows) csv.write(row);
}

}  // namespace

std::vector<DenominatorRecord> Context::records_up_to(u64 q_max) {
  if (q_max < 2) return {};
  if (store_root) {
    RecordStore store(*store_root, DigitSystem::ternary());
    RecordStore::ScanStats stats;
    auto records = store.ensure_range(2, q_max, std::nullopt, threads, &stats);
    for (const auto& f : store.files()) inputs.push_back(f);
    err << "store " << store.directory().string() << ": " << stats.reused << " reused, " << stats.computed
        << " computed\n";
    return records;
  }
  return enumerate_range(2, q_max, std::nullopt, threads, false);
}

std::pair<u64, u64> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const u64 v = std::stoull(text);
      return {v, v};
    }
    const u64 a = std::stoull(text.substr(0, dots));
    const u64 b = std::stoull(text.substr(dots + 2));
    if (b < a) throw DomainError("empty range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw DomainError("malformed range '" + text + "' (expected a..b)");
  }
}

int run_enumerate(const EnumerateOptions& o, Context& ctx) {
  if (o.q.has_value() == o.range.has_value()) throw DomainError("give exactly one of --q and --q-range");
  const auto [a, b] = o.q ? std::pair{*o.q, *o.q} : parse_range(*o.range);
  if (a < 2) throw DomainError("denominators must be >= 2");
  const std::optional<Method> method = parse_method(o.method);

  std::vector<DenominatorRecord> records;
  if (ctx.store_root) {
    RecordStore store(*ctx.store_root, DigitSystem::ternary());
    RecordStore::ScanStats stats;
    records = store.ensure_range(a, b, method, ctx.threads, &stats);
    ctx.err << "store " << store.directory().string() << ": " << stats.reused << " reused, " << stats.computed
            << " computed\n";
  } else if (a == b) {
    EnumerationOptions opts;
    opts.keep_numerators = o.numerators;
    records.push_back(enumerate(a, method, opts));
  } else {
    records = enumerate_range(a, b, method, ctx.threads, o.numerators);
  }
  if (!o.numerators) {
    for (auto& r : records) r.numerators.reset();
  }

  if (o.format == "csv") {
    write_records_csv(ctx.out, records);
  } else if (o.format == "jsonl") {
    for (const auto& r : records) ctx.out << record_to_json_line(r);
  } else {
    throw DomainError("unknown format '" + o.format + "' (expected jsonl or csv)");
  }
  return 0;
}

int run_count(const CountOptions& o, Context& ctx) {
  const auto grid = make_grid(o.grid, o.c, o.t_min, o.t_max, o.step);
  const CountTable table(ctx.records_up_to(o.t_max), ctx.include_unit);
  CsvWriter csv(ctx.out);
  csv.header({"T", "c", "N_tilde", "N", "N_tilde_star", "N_star"});
  for (const auto& row : count_series(grid, o.c, table)) {
    csv.write({CsvWriter::field(row.t), CsvWriter::field(row.c), CsvWriter::field(row.n_tilde), CsvWriter::field(row.n),
               CsvWriter::field(row.n_tilde_star), CsvWriter::field(row.n_star)});
  }
  return 0;
}

int run_predict(const PredictOptions& o, Context& ctx) {
  const auto grid = make_grid(o.grid, o.c, o.t_min, o.t_max, o.step);
  CsvWriter csv(ctx.out);
  if (o.heuristic) {
    csv.header({"T", "c", "exact", "l_lo", "l_hi", "truncated", "majorant", "complete"});
    for (u64 t : grid) {
      const HeuristicExpectation h = heuristic_expectation(t, o.c);
      for (const auto& w : h.warnings) ctx.err << "warning: T = " << t << ", " << w << '\n';
      if (!h.complete) ctx.complete = false;
      csv.write({CsvWriter::field(h.t), CsvWriter::field(h.c), CsvWriter::field(h.exact), CsvWriter::field(h.l_lo),
                 CsvWriter::field(h.l_hi), CsvWriter::field(h.truncated), CsvWriter::field(h.majorant),
                 CsvWriter::field(h.complete)});
    }
    return 0;
  }
  const CountTable table(ctx.records_up_to(o.t_max), ctx.include_unit);
  csv.header({"T", "N_tilde", "F", "M", "ratio_M", "ratio_F"});
  for (const auto& row : predict_series(grid, o.c, table).rows) {
    csv.write({CsvWriter::field(row.t), CsvWriter::field(row.n_tilde), CsvWriter::field(row.f), CsvWriter::field(row.m),
               CsvWriter::field(row.ratio_m), CsvWriter::field(row.ratio_f)});
  }
  return 0;
}

int run_simulate(const SimulateOptions& o, Context& ctx) {
  if (o.q.has_value() == o.window.has_value()) throw DomainError("give exactly one of --q and --window");
  SimulationConfig config;
  config.model = model_from_string(o.model);
  config.seed = o.seed;
  config.trials = o.trials;
  config.q = o.q;
  if (o.window) {
    config.t = *o.window;
    config.c = o.c;
  }
  const auto values = simulate(config, ctx.threads);
  CsvWriter csv(ctx.out);
  csv.header({"trial", "value"});
  for (std::size_t i = 0; i < values.size(); ++i) csv.write({CsvWriter::field(u64{i}), CsvWriter::field(values[i])});
  return 0;
}

int run_tailcheck(const TailcheckOptions& o, Context& ctx) {
  const TailCheck check = tail_check(o.k_max, o.c, o.eps, o.trials, o.seed, ctx.threads);
  CsvWriter csv(ctx.out);
  csv.header({"k", "T", "mean", "mean_1", "mean_2", "l0", "threshold", "bound", "empirical", "sigma", "pass"});
  if (check.skipped) {
    ctx.err << "notice: " << check.notice << '\n';
    return 0;
  }
  std::size_t failed = 0;
  for (const auto& r : check.rows) {
    csv.write({CsvWriter::field(u64{r.k}), CsvWriter::field(r.t), CsvWriter::field(r.mean), CsvWriter::field(r.mean_1),
               CsvWriter::field(r.mean_2), CsvWriter::field(r.l0), CsvWriter::field(r.threshold),
               CsvWriter::field(r.bound), CsvWriter::field(r.empirical), CsvWriter::field(r.sigma),
               CsvWriter::field(r.pass)});
    if (!r.pass) ++failed;
  }
  ctx.err << (check.rows.size() - failed) << "/" << check.rows.size() << " rows within bound + 3 sigma\n";
  return 0;
}

int run_bourgain(const BourgainOptions& o, Context& ctx) {
  const EllHatScan scan = ell_hat_scan(o.q_max, ctx.threads, o.max_seconds);
  CsvWriter csv(ctx.out);
  csv.header({"q", "ell_hat", "ratio"});
  for (const auto& r : scan.records) {
    csv.write({CsvWriter::field(r.q), CsvWriter::field(r.ell_hat), CsvWriter::field(r.ratio)});
  }
  if (!scan.complete) {
    ctx.complete = false;
    ctx.err << "error: partial result, only q <= " << scan.scanned_to << " of " << o.q_max << " scanned\n";
    return static_cast<int>(ExitCode::budget);
  }
  return 0;
}

int run_symmetry(const SymmetryOptions& o, Context& ctx) {
  if (o.r_min == 0 || o.r_max < o.r_min) throw DomainError("need 1 <= --r-min <= --r-max");
  const SymmetryKind kind = symmetry_kind_from_string(o.kind);
  CsvWriter csv(ctx.out);
  if (kind == SymmetryKind::omega_bar) {
    csv.header({"r", "q", "N_q", "MLO", "ratio", "corrected"});
    for (unsigned r = o.r_min; r <= o.r_max; ++r) {
      const CorrectedPrediction p = corrected_prediction(r);
      csv.write({CsvWriter::field(u64{r}), CsvWriter::field(p.q), CsvWriter::field(p.n_q), CsvWriter::field(p.mlo),
                 CsvWriter::field(p.ratio), CsvWriter::field(p.corrected)});
    }
    return 0;
  }
  csv.header({"r", "q_r", "N_q", "X", "Y_floor", "Y_round", "Z", "Y_plus_MLO"});
  for (unsigned r = o.r_min; r <= o.r_max; ++r) {
    const CensusRow c = census(kind, r);
    csv.write({CsvWriter::field(u64{r}), CsvWriter::field(c.q), CsvWriter::field(c.n_q), CsvWriter::field(c.x),
               CsvWriter::field(c.y_floor), CsvWriter::field(c.y_round), CsvWriter::field(c.z),
               CsvWriter::field(c.y_plus_mlo)});
  }
  return 0;
}

int run_tables(const TablesOptions& o, Context& ctx) {
  if (o.which < 1 || o.which > 5) throw DomainError("--which must be 1..5");
  const auto golden_path = o.golden_dir / ("table" + std::to_string(o.which) + ".csv");
  const auto known_path = o.golden_dir / "known_discrepancies.csv";
  const Table golden = read_table(golden_path);
  const auto known = read_known(known_path);
  ctx.inputs.push_back(golden_path);
  ctx.inputs.push_back(known_path);

  Table computed;
  std::vector<std::string> not_computed;
  switch (o.which) {
    case 1: computed = compute_table1(o.q_max, ctx.threads); break;
    case 2: computed = compute_table2(); break;
    case 3: computed = compute_table3(table_keys(golden)); break;
    case 4: computed = compute_table4(table_keys(golden)); break;
    case 5:
      computed = compute_table5(o.r_max);
      for (const auto& row : golden.rows) {
        if (std::stoul(row.at(0)) > o.r_max) not_computed.push_back(row.at(0));
      }
      break;
  }
  write_table(ctx.out, computed);

  const DiffReport report = diff_tables(o.which, golden, computed, known, not_computed);
  for (const auto& l : report.lines) {
    switch (l.kind) {
      case DiffLine::Kind::match: continue;
      case DiffLine::Kind::known: ctx.err << "KNOWN    "; break;
      case DiffLine::Kind::mismatch: ctx.err << "MISMATCH "; break;
      case DiffLine::Kind::skipped: ctx.err << "SKIPPED  "; break;
    }
    ctx.err << "table " << o.which << " key " << l.key << " column " << l.column << ": expected '" << l.expected
            << "', computed '" << l.computed << "'";
    if (!l.reason.empty()) ctx.err << " (" << l.reason << ")";
    ctx.err << '\n';
  }
  const auto mismatches = report.count(DiffLine::Kind::mismatch);
  ctx.err << "table " << o.which << ": " << report.count(DiffLine::Kind::match) << " match, "
          << report.count(DiffLine::Kind::known) << " known discrepancies, " << mismatches << " mismatches, "
          << report.count(DiffLine::Kind::skipped) << " skipped\n";
  if (report.count(DiffLine::Kind::skipped)) ctx.complete = false;
  return mismatches == 0 ? 0 : 1;
}

}  // namespace cantor::cli
