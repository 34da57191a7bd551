#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/counting.hpp"
#include "cantor/factor.hpp"

namespace cantor {

/// round((2/3)^l * 2 * phi), exact. The per-q term of F(T).
std::uint64_t independent_term(std::uint64_t ell, std::uint64_t phi);

/// Column F(T) over the grid: sum of independent_term over q in I_T with
/// 3 not dividing q. q = 1 contributes kUnitCount when the table includes it.
std::vector<std::uint64_t> f_series(const std::vector<std::uint64_t>& grid, double c, const CountTable& table);

/// Column M(T): sum of MLO(q) over q in I_T with 3 not dividing q (MLO is 0
/// unless q | (3^l - 1)/2). q = 1 is treated as in f_series.
std::vector<std::uint64_t> m_series(const std::vector<std::uint64_t>& grid, double c, const CountTable& table);

struct SeriesRow {
  std::uint64_t t = 0;
  std::uint64_t n_tilde = 0;
  std::uint64_t f = 0;
  std::uint64_t m = 0;
  std::optional<double> ratio_m;  // M / N_tilde, empty when N_tilde = 0
  std::optional<double> ratio_f;
};

struct CountSeries {
  double c = 0.5;
  std::vector<SeriesRow> rows;
};

CountSeries predict_series(const std::vector<std::uint64_t>& grid, double c, const CountTable& table);

/// lambda = (2 - d) / (1 - d).
double heuristic_lambda(double d);
/// c' = log_3 (1 - c); -infinity for c = 1.
double heuristic_c_prime(double c);

struct HeuristicExpectation {
  std::uint64_t t = 0;
  double c = 0.5;
  double exact = 0;      // sum over q in I_T, q >= 2, 3 not dividing q, of phi(q) (2/3)^ell(q)
  std::uint64_t l_lo = 0;
  std::uint64_t l_hi = 0;
  double truncated = 0;  // T * sum_{l_lo <= l <= l_hi} #L(l,T) (2/3)^l
  double majorant = 0;   // same with #L(l,T) replaced by 2^(ln n / ln ln n), n = 3^l - 1
  std::vector<std::uint64_t> l_counts;  // #L(l,T) for l = l_lo..l_hi
  bool complete = true;  // false if some 3^l - 1 could not be factored
  std::vector<std::string> warnings;
};

HeuristicExpectation heuristic_expectation(std::uint64_t t, double c, const FactorBudget& budget = {});

enum class Model { star, double_star };
std::string_view to_string(Model m) noexcept;
Model model_from_string(std::string_view s);

struct SimulationConfig {
  Model model = Model::star;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  /// Either a single denominator q, or the window I_T with parameter c.
  std::optional<std::uint64_t> q;
  std::uint64_t t = 0;
  double c = 0.5;
};

/// Simulated N_q (single q) or N_tilde(T) (window, q >= 2) per trial. Trial i
/// draws from make_stream(seed, i), so the output does not depend on threads.
std::vector<std::uint64_t> simulate(const SimulationConfig& config, unsigned threads = 1);

/// Analytic mean of the model-(*) count: sum of phi(q) (2/3)^ell(q).
double star_mean(const SimulationConfig& config);

struct TailRow {
  unsigned k = 0;
  std::uint64_t t = 0;
  double mean = 0;     // E X_k
  double mean_1 = 0;   // part with ell(q) <= l0
  double mean_2 = 0;   // part with ell(q) > l0
  double l0 = 0;       // lambda log_3 T
  double threshold = 0;  // T^(d + eps)
  double bound = 0;      // min(1, E X_k / threshold)
  double empirical = 0;  // fraction of trials with X_k >= threshold
  double sigma = 0;      // sqrt(bound (1 - bound) / trials)
  bool pass = false;
};

struct TailCheck {
  double eps = 0;
  double c = 0.5;
  std::uint64_t trials = 0;
  bool skipped = false;  // eps = 0: the bound is trivially >= 1
  std::string notice;
  std::vector<TailRow> rows;
};

/// Model-(*) simulation of X_k = N_tilde(T_k), T_k = round((1 + c)^k), for
/// k = 1..k_max, compared against the Markov bound E X_k / T_k^(d + eps).
TailCheck tail_check(unsigned k_max, double c, double eps, std::uint64_t trials, std::uint64_t seed,
                     unsigned threads = 1);

}  // namespace cantor
