#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "lclvol/bench.hpp"

using namespace lclvol;

namespace {

std::string synthetic_csv(const std::vector<std::uint64_t>& ns, double (*f)(double)) {
  std::string s = "# synthetic\n";
  s += kBenchCsvColumns;
  s += '\n';
  for (auto n : ns)
    for (int seed = 1; seed <= 3; ++seed) {
      // only the first seed carries the maximum
      double v = seed == 1 ? f(static_cast<double>(n)) : f(static_cast<double>(n)) / 2;
      s += std::to_string(n) + "," + std::to_string(seed) + ",1,1.0," + std::to_string(v) + ",1.0,1.0,0,0\n";
    }
  return s;
}

// Plain normal equations, kept apart from the library's centered form.
double oracle_slope(const std::vector<std::uint64_t>& ns, double (*f)(double)) {
  double m = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto n : ns) {
    double x = std::log(static_cast<double>(n)) / std::log(2.0);
    double y = std::log(f(static_cast<double>(n))) / std::log(2.0);
    m += 1, sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double ident(double n) { return n; }
double clog(double n) { return std::ceil(std::log2(n)); }
double csqrt(double n) { return std::ceil(std::sqrt(n)); }

ExperimentConfig small(const std::string& solver) {
  ExperimentConfig c;
  c.problem = "leafcolor";
  c.solver = solver;
  c.generator = "complete-binary";
  c.sweep = {7};
  c.seeds = 1;
  return c;
}

}  // namespace

TEST(Bench, ConstantSolverSingleRow) {
  auto c = small("const-R");
  c.gen_params["leaf"] = "R";
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].n, 7u);
  ASSERT_TRUE(rows[0].cost.has_value());
  EXPECT_EQ(rows[0].cost->max_vol, 1u);
  EXPECT_EQ(rows[0].cost->max_dist, 0);
  EXPECT_DOUBLE_EQ(rows[0].valid_fraction, 1.0);
  EXPECT_EQ(rows[0].seed, derive_seed(c.master_seed, 0));
}

TEST(Bench, InvalidOutputRecordsNoCost) {
  auto c = small("const-R");
  c.gen_params["leaf"] = "B";
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].valid);
  EXPECT_FALSE(rows[0].cost.has_value());
  // Only the four leaves disagree with their input color.
  EXPECT_DOUBLE_EQ(rows[0].valid_fraction, 3.0 / 7.0);
  std::string csv = bench_csv(c, rows);
  EXPECT_NE(csv.find("\n7," + std::to_string(rows[0].seed) + ",,,,,0.428571,,0\n"), std::string::npos) << csv;
}

TEST(Bench, RwToLeafValidOverDefaultSweep) {
  auto c = small("rw-to-leaf");
  c.sweep = default_sweep();
  c.seeds = 2;
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 14u);
  for (const auto& r : rows) {
    EXPECT_DOUBLE_EQ(r.valid_fraction, 1.0) << r.n;
    ASSERT_TRUE(r.cost);
    EXPECT_EQ(r.cost->relation_violations, 0u);
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_TRUE(rows[i - 1].n < rows[i].n || (rows[i - 1].n == rows[i].n && rows[i - 1].seed < rows[i].seed));
}

TEST(Bench, SameConfigSameBytes) {
  const std::string text =
      "# cfg\nproblem = hthc\nsolver = sampled-hthc\ngenerator = hier\nk = 2\nsweep = 100, 300, 1000\n"
      "seeds = 3\nmaster_seed = 99\n";
  auto c1 = parse_experiment_config(text);
  auto a = bench_csv(c1, run_experiment(c1));
  auto b = bench_csv(c1, run_experiment(parse_experiment_config(text)));
  EXPECT_EQ(a, b);
  auto c2 = c1;
  c2.threads = 3;
  EXPECT_EQ(a, bench_csv(c2, run_experiment(c2)));
  EXPECT_EQ(a.rfind("# lclvol bench v1 ", 0), 0u);
}

TEST(Bench, SeedsDeriveFromMaster) {
  auto c = small("leafcolor-dist");
  c.sweep = {7, 15};
  c.seeds = 3;
  c.master_seed = 5;
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 6u);
  std::multiset<std::pair<std::uint64_t, std::uint64_t>> got, want;
  for (const auto& r : rows) got.insert({r.n, r.seed});
  for (std::uint64_t i = 0; i < 6; ++i) want.insert({i < 3 ? 7u : 15u, derive_seed(5, i)});
  EXPECT_EQ(got, want);
  EXPECT_NE(derive_seed(5, 0), derive_seed(6, 0));
}

TEST(Bench, ConfigErrors) {
  EXPECT_THROW(parse_experiment_config("bogus = 1\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("noequals\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("sweep = 15, 7\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("sweep = 7, 7\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("sweep = 10\n"), BenchError);  // not 2^d - 1
  EXPECT_THROW(parse_experiment_config("solver = btl-dist\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("solver = nope\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("problem = nope\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("generator = disjointness\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("seeds = 0\n"), BenchError);
  EXPECT_THROW(parse_experiment_config("seeds = -1\n"), BenchError);
  auto c = parse_experiment_config("gen.leaf = R\ntau = 8\n");
  EXPECT_EQ(c.gen_params.at("leaf"), "R");
  EXPECT_EQ(c.solver_cfg.tau, 8);
  EXPECT_EQ(c.sweep, default_sweep());
}

TEST(Fit, LinearIsSlopeOne) {
  auto f = fit_exponent(synthetic_csv(default_sweep(), ident), "max_vol");
  EXPECT_NEAR(f.slope, 1.0, 1e-9);
  EXPECT_NEAR(f.intercept, 0.0, 1e-9);
  EXPECT_NEAR(f.residual, 0.0, 1e-9);
  EXPECT_EQ(f.points, 7u);
}

TEST(Fit, LogIsFlat) {
  auto f = fit_exponent(synthetic_csv(default_sweep(), clog), "max_vol");
  EXPECT_NEAR(f.slope, oracle_slope(default_sweep(), clog), 1e-9);
  EXPECT_LT(f.slope, 0.15);
  EXPECT_NEAR(f.slope, 0.147579, 1e-5);
  std::vector<std::uint64_t> big;
  for (int e = 20; e <= 40; e += 4) big.push_back((1ull << e) - 1);
  EXPECT_LT(fit_exponent(synthetic_csv(big, clog), "max_vol").slope, f.slope);
}

TEST(Fit, SqrtIsHalf) {
  auto f = fit_exponent(synthetic_csv(default_sweep(), csqrt), "max_vol");
  EXPECT_NEAR(f.slope, 0.5, 0.02);
  EXPECT_NEAR(f.slope, oracle_slope(default_sweep(), csqrt), 1e-9);
}

TEST(Fit, NeedsFourPointsAndSkipsEmpty) {
  EXPECT_THROW(fit_exponent(synthetic_csv({7, 15, 31}, ident), "max_vol"), BenchError);
  EXPECT_THROW(fit_exponent(synthetic_csv(default_sweep(), ident), "nope"), BenchError);
  std::string s = synthetic_csv({7, 15, 31, 63}, ident);
  s += "127,1,,,,,0.5,,\n";
  EXPECT_EQ(fit_exponent(s, "max_vol").points, 4u);
}
