#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cantor/enumerator.hpp"

namespace cantor::cli {

inline constexpr const char* kToolVersion = "0.3.0";

/// Shared state of one command run.
struct Context {
  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;
  unsigned threads = 0;
  std::optional<std::filesystem::path> store_root;
  bool include_unit = true;
  std::vector<std::filesystem::path> inputs;  // files read, hashed into the manifest
  bool complete = true;

  /// Records for every q in [2, q_max]: from the store when one is
  /// configured (computing only what is missing), else in memory.
  std::vector<DenominatorRecord> records_up_to(std::uint64_t q_max);
};

/// `a..b` or a single integer.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text);

struct EnumerateOptions {
  std::optional<std::uint64_t> q;
  std::optional<std::string> range;
  std::string method = "auto";
  std::string format = "jsonl";
  bool numerators = false;
};
int run_enumerate(const EnumerateOptions& o, Context& ctx);

struct CountOptions {
  double c = 0.5;
  std::uint64_t t_min = 1;
  std::uint64_t t_max = 0;
  std::string grid = "geometric";
  std::uint64_t step = 1;
};
int run_count(const CountOptions& o, Context& ctx);

struct PredictOptions {
  double c = 0.5;
  std::uint64_t t_min = 1;
  std::uint64_t t_max = 0;
  std::string grid = "geometric";
  std::uint64_t step = 1;
  bool heuristic = false;
};
int run_predict(const PredictOptions& o, Context& ctx);

struct SimulateOptions {
  std::string model = "star";
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> window;  // T of the window I_T
  double c = 0.5;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
};
int run_simulate(const SimulateOptions& o, Context& ctx);

struct TailcheckOptions {
  double eps = 0.3;
  double c = 0.5;
  unsigned k_max = 12;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
};
int run_tailcheck(const TailcheckOptions& o, Context& ctx);

struct BourgainOptions {
  std::uint64_t q_max = 400;
  std::optional<double> max_seconds;
};
int run_bourgain(const BourgainOptions& o, Context& ctx);

struct SymmetryOptions {
  std::string kind = "pad";
  unsigned r_min = 1;
  unsigned r_max = 5;
};
int run_symmetry(const SymmetryOptions& o, Context& ctx);

struct TablesOptions {
  int which = 1;
  std::filesystem::path golden_dir;
  std::uint64_t q_max = 400;  // table 1 scan bound
  unsigned r_max = 10;        // table 5 rows computed
};
int run_tables(const TablesOptions& o, Context& ctx);

}  // namespace cantor::cli
