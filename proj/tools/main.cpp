#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cantor/error.hpp"
#include "commands.hpp"
#include "manifest.hpp"

#ifndef CANTOR_GOLDEN_DIR
#define CANTOR_GOLDEN_DIR "data/golden"
#endif

using namespace cantor;
using namespace cantor::cli;

int main(int argc, char** argv) {
  CLI::App app{"Rational points on missing-digit Cantor sets", "cantor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.fallthrough();

  std::string out_path;
  std::string store_dir;
  unsigned threads = 0;
  bool exclude_unit = false;
  app.add_option("--out", out_path, "Write output here (plus <out>.manifest.json) instead of stdout");
  app.add_option("--store", store_dir, "Record store root (default: $CANTOR_DATA_DIR, else in memory)");
  app.add_option("--threads", threads, "Worker threads (default: all cores)");
  app.add_flag("--exclude-unit", exclude_unit, "Do not count q = 1 (the values 0 and 1)");

  EnumerateOptions en;
  auto* en_cmd = app.add_subcommand("enumerate", "Enumerate Cantor rationals by denominator");
  en_cmd->add_option("--q", en.q, "Single denominator");
  en_cmd->add_option("--q-range", en.range, "Denominator range a..b");
  en_cmd->add_option("--method", en.method, "auto, alg1 or words")->capture_default_str();
  en_cmd->add_option("--format", en.format, "jsonl or csv")->capture_default_str();
  en_cmd->add_flag("--numerators", en.numerators, "Include numerator lists");

  CountOptions co;
  auto* co_cmd = app.add_subcommand("count", "Window and cumulative counts");
  co_cmd->add_option("--c", co.c, "Window parameter")->capture_default_str();
  co_cmd->add_option("--t-min", co.t_min)->capture_default_str();
  co_cmd->add_option("--t-max", co.t_max)->required();
  co_cmd->add_option("--grid", co.grid, "geometric or linear")->capture_default_str();
  co_cmd->add_option("--step", co.step, "Linear grid step")->capture_default_str();

  PredictOptions pr;
  auto* pr_cmd = app.add_subcommand("predict", "Model predictions F(T), M(T) against the counts");
  pr_cmd->add_option("--c", pr.c, "Window parameter")->capture_default_str();
  pr_cmd->add_option("--t-min", pr.t_min)->capture_default_str();
  pr_cmd->add_option("--t-max", pr.t_max)->required();
  pr_cmd->add_option("--grid", pr.grid, "geometric or linear")->capture_default_str();
  pr_cmd->add_option("--step", pr.step, "Linear grid step")->capture_default_str();
  pr_cmd->add_flag("--heuristic", pr.heuristic, "Emit the heuristic expectation sums instead");

  SimulateOptions si;
  auto* si_cmd = app.add_subcommand("simulate", "Monte Carlo simulation of model (*) or (**)");
  si_cmd->add_option("--model", si.model, "star or dstar")->capture_default_str();
  si_cmd->add_option("--q", si.q, "Single denominator");
  si_cmd->add_option("--window", si.window, "Threshold T of the window I_T");
  si_cmd->add_option("--c", si.c, "Window parameter")->capture_default_str();
  si_cmd->add_option("--trials", si.trials)->capture_default_str();
  si_cmd->add_option("--seed", si.seed)->capture_default_str();

  TailcheckOptions tc;
  auto* tc_cmd = app.add_subcommand("tailcheck", "Tail probabilities against the Markov bound");
  tc_cmd->add_option("--eps", tc.eps)->capture_default_str();
  tc_cmd->add_option("--c", tc.c)->capture_default_str();
  tc_cmd->add_option("--k-max", tc.k_max)->capture_default_str();
  tc_cmd->add_option("--trials", tc.trials)->capture_default_str();
  tc_cmd->add_option("--seed", tc.seed)->capture_default_str();

  BourgainOptions bo;
  auto* bo_cmd = app.add_subcommand("bourgain", "Record values of ell_hat(q) / log_3 q");
  bo_cmd->add_option("--q-max", bo.q_max)->capture_default_str();
  bo_cmd->add_option("--max-seconds", bo.max_seconds, "Stop early; the result is then marked partial");

  SymmetryOptions sy;
  auto* sy_cmd = app.add_subcommand("symmetry", "Symmetry families and their census");
  sy_cmd->add_option("--kind", sy.kind, "pad, pad0, pad2 or bar")->capture_default_str();
  sy_cmd->add_option("--r-min", sy.r_min)->capture_default_str();
  sy_cmd->add_option("--r-max", sy.r_max)->capture_default_str();

  TablesOptions ta;
  ta.golden_dir = CANTOR_GOLDEN_DIR;
  auto* ta_cmd = app.add_subcommand("tables", "Reproduce a published table and diff it against the golden file");
  ta_cmd->add_option("--which", ta.which, "1..5")->required();
  ta_cmd->add_option("--golden-dir", ta.golden_dir)->capture_default_str();
  ta_cmd->add_option("--q-max", ta.q_max, "Scan bound for table 1")->capture_default_str();
  ta_cmd->add_option("--r-max", ta.r_max, "Rows computed for table 5")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::domain);
  }

  const auto start = std::chrono::steady_clock::now();
  std::ostringstream buffer;
  Context ctx(out_path.empty() ? std::cout : buffer, std::cerr);
  ctx.threads = threads;
  ctx.include_unit = !exclude_unit;
  if (!store_dir.empty()) {
    ctx.store_root = store_dir;
  } else if (const char* env = std::getenv("CANTOR_DATA_DIR"); env && *env) {
    ctx.store_root = env;
  }

  RunManifest manifest;
  manifest.tool_version = kToolVersion;
  manifest.args.assign(argv, argv + argc);

  int code = 0;
  try {
    if (*en_cmd) {
      manifest.command = "enumerate";
      code = run_enumerate(en, ctx);
    } else if (*co_cmd) {
      manifest.command = "count";
      code = run_count(co, ctx);
    } else if (*pr_cmd) {
      manifest.command = "predict";
      code = run_predict(pr, ctx);
    } else if (*si_cmd) {
      manifest.command = "simulate";
      manifest.seed = si.seed;
      code = run_simulate(si, ctx);
    } else if (*tc_cmd) {
      manifest.command = "tailcheck";
      manifest.seed = tc.seed;
      code = run_tailcheck(tc, ctx);
    } else if (*bo_cmd) {
      manifest.command = "bourgain";
      code = run_bourgain(bo, ctx);
    } else if (*sy_cmd) {
      manifest.command = "symmetry";
      code = run_symmetry(sy, ctx);
    } else if (*ta_cmd) {
      manifest.command = "tables";
      code = run_tables(ta, ctx);
    }
  } catch (const cantor::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::domain);
  }

  if (!out_path.empty()) {
    try {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      if (!out) throw DomainError("cannot write " + out_path);
      out << buffer.str();
      out.close();
      for (const auto& p : ctx.inputs) manifest.add_input(p);
      manifest.complete = ctx.complete;
      manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      manifest.write_for(out_path);
    } catch (const cantor::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return static_cast<int>(e.exit_code());
    }
  }
  return code;
}
