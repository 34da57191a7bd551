#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "cantor/counting.hpp"
#include "cantor/error.hpp"
#include "cantor/models.hpp"
#include "cantor/numtheory.hpp"
#include "cantor/rng.hpp"
#include "cantor/store.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

const std::vector<DenominatorRecord>& records_to(std::uint64_t q_max) {
  static std::vector<DenominatorRecord> cache;
  if (cache.empty() || cache.back().q < q_max) cache = enumerate_range(2, q_max, std::nullopt, 0);
  return cache;
}

double mean(const std::vector<std::uint64_t>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("single-denominator model terms") {
  CHECK(independent_term(3, 12) == 7);
  CHECK(independent_term(1, 1) == 1);
  const CountTable table(records_to(1000));
  CHECK(f_series({13}, 0.0, table) == std::vector<std::uint64_t>{7});
  CHECK(f_series({2}, 0.0, table) == std::vector<std::uint64_t>{1});
  CHECK(f_series({9}, 0.0, table) == std::vector<std::uint64_t>{0});
  CHECK(m_series({757}, 0.0, CountTable(records_to(1000))) == std::vector<std::uint64_t>{39});
  CHECK(m_series({82}, 0.0, table) == std::vector<std::uint64_t>{3});
  CHECK(m_series({2}, 0.0, table) == std::vector<std::uint64_t>{0});
  CHECK(f_series({1}, 0.5, CountTable(records_to(10), false)) == std::vector<std::uint64_t>{0});
  CHECK(m_series({1}, 0.5, CountTable(records_to(10), false)) == std::vector<std::uint64_t>{0});
  CHECK(f_series({1}, 0.5, table) == std::vector<std::uint64_t>{2});
}

TEST_CASE("model sums match hand formulas") {
  const CountTable table(records_to(10000));
  for (std::uint64_t q = 2; q <= 10000; ++q) {
    if (q % 3 == 0) continue;
    const auto* r = table.find(q);
    REQUIRE(f_series({q}, 0.0, table)[0] == independent_model_round(q));
    REQUIRE(independent_term(r->ell, r->phi) == independent_model_round(q));
    REQUIRE(m_series({q}, 0.0, table)[0] == r->mlo);
  }
  const auto grid = geometric_grid(0.5, 1, 10000);
  const auto f = f_series(grid, 0.5, table);
  const auto m = m_series(grid, 0.5, table);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Window w(0.5, grid[i]);
    std::uint64_t fs = w.contains(1) ? 2 : 0, ms = fs;
    for (std::uint64_t q = std::max<std::uint64_t>(2, w.first()); q <= grid[i]; ++q) {
      if (q % 3 == 0) continue;
      fs += independent_model_round(q);
      ms += mlo(q);
    }
    CHECK(f[i] == fs);
    CHECK(m[i] == ms);
  }
}

TEST_CASE("predicted series") {
  const CountTable table(records_to(19683));
  const auto series = predict_series(geometric_grid(0.5, 1, 19683), 0.5, table);
  CHECK(series.c == 0.5);
  REQUIRE(series.rows.size() == 24);
  for (const auto& row : series.rows) {
    CHECK(row.n_tilde == n_tilde(row.t, 0.5, table));
    if (row.n_tilde == 0) {
      CHECK_FALSE(row.ratio_m);
      CHECK_FALSE(row.ratio_f);
    } else {
      REQUIRE(row.ratio_m);
      CHECK(*row.ratio_m == doctest::Approx(static_cast<double>(row.m) / row.n_tilde));
      CHECK(*row.ratio_f == doctest::Approx(static_cast<double>(row.f) / row.n_tilde));
    }
  }
  CHECK_THROWS_AS(predict_series({20000}, 0.5, table), CoverageError);
}

TEST_CASE("heuristic constants") {
  const double d = std::log(2.0) / std::log(3.0);
  CHECK(heuristic_lambda(d) == doctest::Approx(3.7095).epsilon(1e-4));
  CHECK(heuristic_c_prime(0.5) == doctest::Approx(-0.6309).epsilon(1e-4));
  CHECK(std::isinf(heuristic_c_prime(1.0)));
}

TEST_CASE("heuristic expectation") {
  const auto one = heuristic_expectation(13, 0.0);
  CHECK(one.exact == doctest::Approx(12.0 * 8.0 / 27.0));
  CHECK(one.complete);

  const auto h = heuristic_expectation(2000, 0.5);
  double exact = 0;
  for (std::uint64_t q = 1001; q <= 2000; ++q)
    if (q % 3) exact += static_cast<double>(oracle::phi(q)) * std::pow(2.0 / 3.0, oracle::order(3, q));
  CHECK(h.exact == doctest::Approx(exact).epsilon(1e-9));
  CHECK(h.l_hi >= h.l_lo);
  CHECK(h.l_counts.size() == h.l_hi - h.l_lo + 1);
  CHECK(h.truncated > 0);
  CHECK(h.majorant > 0);
  CHECK(h.complete);
}

TEST_CASE("model names") {
  CHECK(to_string(Model::star) == "star");
  CHECK(model_from_string("dstar") == Model::double_star);
  CHECK(model_from_string("double_star") == Model::double_star);
  CHECK_THROWS_AS(model_from_string("triple"), DomainError);
}

TEST_CASE("random streams") {
  auto a = make_stream(7, 3);
  auto b = make_stream(7, 3);
  auto c = make_stream(7, 4);
  CHECK(a() == b());
  CHECK(a() != c());
  // mt19937_64 output is fixed by the standard; so is seed_seq.
  auto fixed = make_stream(0, 0);
  const auto first = fixed();
  CHECK(make_stream(0, 0)() == first);

  auto e = make_stream(1, 1);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(e);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));

  CHECK_FALSE(bernoulli(e, 0.0));
  CHECK(bernoulli(e, 1.0));
  CHECK(binomial(e, 0, 0.5) == 0);
  CHECK(binomial(e, 10, 1.0) == 10);
  CHECK(binomial(e, 10, 0.0) == 0);
  double bsum = 0, bsq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(binomial(e, 40, 0.3));
    bsum += x;
    bsq += x * x;
  }
  const double bm = bsum / n;
  CHECK(bm == doctest::Approx(12.0).epsilon(0.02));
  CHECK(bsq / n - bm * bm == doctest::Approx(8.4).epsilon(0.05));
}

TEST_CASE("model (*) mean at q = 13") {
  SimulationConfig cfg;
  cfg.model = Model::star;
  cfg.q = 13;
  cfg.trials = 100000;
  cfg.seed = 12345;
  const auto v = simulate(cfg, 2);
  const double expected = 32.0 / 9.0;
  CHECK(star_mean(cfg) == doctest::Approx(expected));
  const double var = 12.0 * (8.0 / 27.0) * (19.0 / 27.0);
  const double se = std::sqrt(var / static_cast<double>(cfg.trials));
  CHECK(std::abs(mean(v) - expected) < 3 * se);
}

TEST_CASE("model (**) yields multiples of the period") {
  SimulationConfig cfg;
  cfg.model = Model::double_star;
  cfg.q = 13;
  cfg.trials = 5000;
  const auto v = simulate(cfg);
  std::set<std::uint64_t> seen(v.begin(), v.end());
  for (auto x : seen) CHECK((x == 0 || x == 3 || x == 6 || x == 9 || x == 12));
  CHECK(seen.size() > 2);

  cfg.q = 23;
  for (auto x : simulate(cfg)) REQUIRE(x % 11 == 0);

  cfg.q = 2;  // parity obstruction
  for (auto x : simulate(cfg)) REQUIRE(x == 0);

  cfg.q = std::nullopt;
  cfg.t = 300;
  cfg.c = 0.5;
  cfg.trials = 50;
  CHECK(simulate(cfg).size() == 50);
}

TEST_CASE("simulation is reproducible and thread independent") {
  SimulationConfig cfg;
  cfg.q = std::nullopt;
  cfg.t = 500;
  cfg.c = 0.5;
  cfg.trials = 200;
  cfg.seed = 99;
  const auto a = simulate(cfg, 1);
  const auto b = simulate(cfg, 4);
  CHECK(a == b);
  cfg.trials = 1;
  CHECK(simulate(cfg, 1) == simulate(cfg, 1));
  cfg.seed = 100;
  CHECK(simulate(cfg, 1).size() == 1);

  SimulationConfig bad;
  bad.trials = 0;
  bad.q = 13;
  CHECK_THROWS_AS(simulate(bad), DomainError);
  bad.trials = 1;
  bad.q = 9;
  CHECK_THROWS_AS(simulate(bad), DomainError);
  bad.q = 1;
  CHECK_THROWS_AS(simulate(bad), DomainError);
}

TEST_CASE("tail check") {
  const auto tc = tail_check(8, 0.5, 0.3, 2000, 1, 2);
  CHECK_FALSE(tc.skipped);
  REQUIRE(tc.rows.size() == 8);
  for (const auto& row : tc.rows) {
    CHECK(row.t == static_cast<std::uint64_t>(std::llround(std::pow(1.5, row.k))));
    CHECK(row.mean == doctest::Approx(row.mean_1 + row.mean_2));
    CHECK(row.bound <= 1.0);
    CHECK(row.pass);
  }
  const auto skipped = tail_check(8, 0.5, 0.0, 100, 1);
  CHECK(skipped.skipped);
  CHECK_FALSE(skipped.notice.empty());
  CHECK_THROWS_AS(tail_check(8, 0.5, 0.3, 0, 1), DomainError);
}
