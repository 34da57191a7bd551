#include "cantor/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cantor/error.hpp"
#include "cantor/numtheory.hpp"
#include "cantor/parallel.hpp"
#include "cantor/rng.hpp"

namespace cantor {

namespace {

using u64 = std::uint64_t;

const double kDimension = std::log(2.0) / std::log(3.0);

long double two_thirds_pow(u64 l) { return std::pow(2.0L / 3.0L, static_cast<long double>(l)); }

double log3(double x) { return std::log(x) / std::log(3.0); }

template <typename Term>
std::vector<u64> window_series(const std::vector<u64>& grid, double c, const CountTable& table, Term term) {
  std::vector<u64> out;
  out.reserve(grid.size());
  for (u64 t : grid) {
    const Window w(c, t);
    table.require(w.first(), w.last());
    u64 sum = 0;
    for (u64 q = w.first(); q <= w.last(); ++q) {
      if (q == 1) {
        if (table.include_unit()) sum += kUnitCount;
        continue;
      }
      if (q % 3 == 0) continue;
      sum += term(*table.find(q));
    }
    out.push_back(sum);
  }
  return out;
}

// One denominator's contribution to a simulated count.
struct Draw {
  u64 n = 0;       // Bernoulli trials (rationals or cosets)
  u64 weight = 1;  // rationals per success
  double p = 0;
};

Draw star_draw(u64 q) {
  const u64 l = ell(q);
  return {euler_phi(q), 1, static_cast<double>(two_thirds_pow(l))};
}

std::optional<Draw> double_star_draw(u64 q) {
  if (!divides_half_period(q)) return std::nullopt;
  const u64 l = ell(q);
  const mpq_class p(primitive_count(l, 2), even_primitive_count(l, 3));
  return Draw{euler_phi(q) / l, l, p.get_d()};
}

std::vector<u64> simulation_denominators(const SimulationConfig& config) {
  if (config.q) {
    if (*config.q < 2 || *config.q % 3 == 0) {
      throw DomainError("simulate: q must be >= 2 and not divisible by 3");
    }
    return {*config.q};
  }
  const Window w(config.c, config.t);
  std::vector<u64> qs;
  for (u64 q = std::max<u64>(w.first(), 2); q <= w.last(); ++q) {
    if (q % 3) qs.push_back(q);
  }
  return qs;
}

std::vector<Draw> draws_for(const SimulationConfig& config) {
  std::vector<Draw> draws;
  for (u64 q : simulation_denominators(config)) {
    if (config.model == Model::star) {
      draws.push_back(star_draw(q));
    } else if (auto d = double_star_draw(q)) {
      draws.push_back(*d);
    }
  }
  return draws;
}

u64 draw_total(Engine& engine, const std::vector<Draw>& draws) {
  u64 total = 0;
  for (const auto& d : draws) total += d.weight * binomial(engine, d.n, d.p);
  return total;
}

std::vector<u64> run_trials(const std::vector<Draw>& draws, u64 seed, u64 trials, unsigned threads) {
  std::vector<u64> values(trials, 0);
  parallel_for(0, trials, threads, [&](u64 i) {
    Engine engine = make_stream(seed, i);
    values[i] = draw_total(engine, draws);
  });
  return values;
}

double tau_majorant(u64 l) {
  if (l == 1) return 2;  // tau(2)
  if (l == 2) return 4;  // tau(8)
  const double ln_n = static_cast<double>(l) * std::log(3.0);  // ln(3^l - 1) to double precision
  return std::pow(2.0, ln_n / std::log(ln_n));
}

}  // namespace

u64 independent_term(u64 l, u64 phi) {
  BigInt num;
  mpz_ui_pow_ui(num.get_mpz_t(), 2, l + 1);
  num *= BigInt(phi);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 3, l);
  return round_quotient(num, den).get_ui();
}

std::vector<u64> f_series(const std::vector<u64>& grid, double c, const CountTable& table) {
  return window_series(grid, c, table, [](const DenominatorRecord& r) { return independent_term(r.ell, r.phi); });
}

std::vector<u64> m_series(const std::vector<u64>& grid, double c, const CountTable& table) {
  return window_series(grid, c, table, [](const DenominatorRecord& r) { return r.mlo; });
}

CountSeries predict_series(const std::vector<u64>& grid, double c, const CountTable& table) {
  CountSeries series;
  series.c = c;
  const auto f = f_series(grid, c, table);
  const auto m = m_series(grid, c, table);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SeriesRow row;
    row.t = grid[i];
    row.n_tilde = n_tilde(grid[i], c, table);
    row.f = f[i];
    row.m = m[i];
    if (row.n_tilde != 0) {
      row.ratio_m = static_cast<double>(row.m) / static_cast<double>(row.n_tilde);
      row.ratio_f = static_cast<double>(row.f) / static_cast<double>(row.n_tilde);
    }
    series.rows.push_back(row);
  }
  return series;
}

double heuristic_lambda(double d) {
  if (!(d > 0 && d < 1)) throw DomainError("dimension must lie in (0, 1)");
  return (2 - d) / (1 - d);
}

double heuristic_c_prime(double c) {
  if (!(c >= 0 && c <= 1)) throw DomainError("window parameter c must lie in [0, 1]");
  if (c == 1) return -std::numeric_limits<double>::infinity();
  return log3(1 - c);
}

HeuristicExpectation heuristic_expectation(u64 t, double c, const FactorBudget& budget) {
  HeuristicExpectation h;
  h.t = t;
  h.c = c;
  const Window w(c, t);
  long double exact = 0;
  for (u64 q = std::max<u64>(w.first(), 2); q <= w.last(); ++q) {
    if (q % 3 == 0) continue;
    exact += static_cast<long double>(euler_phi(q)) * two_thirds_pow(ell(q));
  }
  h.exact = static_cast<double>(exact);

  const double log_t = log3(static_cast<double>(t));
  const double lo = log_t + heuristic_c_prime(c);
  h.l_lo = std::isinf(lo) || lo < 1 ? 1 : static_cast<u64>(std::ceil(lo - 1e-12));
  h.l_hi = static_cast<u64>(std::floor(heuristic_lambda(kDimension) * log_t + 1e-12));
  long double truncated = 0;
  long double majorant = 0;
  for (u64 l = h.l_lo; l <= h.l_hi; ++l) {
    const long double weight = two_thirds_pow(l);
    majorant += static_cast<long double>(tau_majorant(l)) * weight;
    try {
      const u64 count = l_set(l, t, c, budget).size();
      h.l_counts.push_back(count);
      truncated += static_cast<long double>(count) * weight;
    } catch (const BudgetError& e) {
      h.complete = false;
      h.l_counts.push_back(0);
      h.warnings.push_back("l = " + std::to_string(l) + ": " + e.what());
    }
  }
  h.truncated = static_cast<double>(truncated * t);
  h.majorant = static_cast<double>(majorant * t);
  return h;
}

std::string_view to_string(Model m) noexcept { return m == Model::star ? "star" : "dstar"; }

Model model_from_string(std::string_view s) {
  if (s == "star") return Model::star;
  if (s == "dstar" || s == "double_star") return Model::double_star;
  throw DomainError("unknown model '" + std::string(s) + "'");
}

std::vector<u64> simulate(const SimulationConfig& config, unsigned threads) {
  if (config.trials == 0) throw DomainError("simulate: trials must be >= 1");
  return run_trials(draws_for(config), config.seed, config.trials, threads);
}

double star_mean(const SimulationConfig& config) {
  long double mean = 0;
  for (u64 q : simulation_denominators(config)) {
    mean += static_cast<long double>(euler_phi(q)) * two_thirds_pow(ell(q));
  }
  return static_cast<double>(mean);
}

TailCheck tail_check(unsigned k_max, double c, double eps, u64 trials, u64 seed, unsigned threads) {
  if (trials == 0) throw DomainError("tail_check: trials must be >= 1");
  if (!(c > 0 && c <= 1)) throw DomainError("tail_check: c must lie in (0, 1]");
  if (eps < 0) throw DomainError("tail_check: eps must be >= 0");
  TailCheck check;
  check.eps = eps;
  check.c = c;
  check.trials = trials;
  if (eps == 0) {
    check.skipped = true;
    check.notice = "eps = 0: the Markov bound is trivially >= 1, check skipped";
    return check;
  }
  const double lambda = heuristic_lambda(kDimension);
  for (unsigned k = 1; k <= k_max; ++k) {
    TailRow row;
    row.k = k;
    row.t = static_cast<u64>(std::llround(std::pow(1.0L + c, k)));
    row.l0 = lambda * log3(static_cast<double>(row.t));
    SimulationConfig config;
    config.t = row.t;
    config.c = c;
    std::vector<Draw> draws;
    for (u64 q : simulation_denominators(config)) {
      const Draw d = star_draw(q);
      const double part = static_cast<double>(d.n) * d.p;
      (static_cast<double>(ell(q)) <= row.l0 ? row.mean_1 : row.mean_2) += part;
      draws.push_back(d);
    }
    row.mean = row.mean_1 + row.mean_2;
    row.threshold = std::pow(static_cast<double>(row.t), kDimension + eps);
    row.bound = std::min(1.0, row.mean / row.threshold);
    const u64 stream_seed = seed + 0x9E3779B97F4A7C15ULL * k;
    const auto values = run_trials(draws, stream_seed, trials, threads);
    const auto hits = std::count_if(values.begin(), values.end(),
                                    [&](u64 v) { return static_cast<double>(v) >= row.threshold; });
    row.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    row.sigma = std::sqrt(row.bound * (1 - row.bound) / static_cast<double>(trials));
    row.pass = row.empirical <= row.bound + 3 * row.sigma;
    check.rows.push_back(row);
  }
  return check;
}

}  // namespace cantor
