#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lclvol/problems.hpp"
#include "lclvol/solvers.hpp"

namespace lclvol {

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string problem = "leafcolor";
  std::string solver = "rw-to-leaf";
  std::string generator = "complete-binary";
  std::map<std::string, std::string> gen_params;  // passed to generate(); n and seed are set per cell
  std::vector<std::uint64_t> sweep;               // target sizes, strictly increasing
  std::size_t seeds = 1;
  std::uint64_t master_seed = 1;
  SolverConfig solver_cfg;
  std::string output;  // empty = stdout
  unsigned threads = 1;
};

// 2^7 - 1, ..., 2^13 - 1.
std::vector<std::uint64_t> default_sweep();

// Flat key=value text; '#' starts a comment. Keys: problem, solver, generator,
// sweep (comma list), seeds, master_seed, k, l, tau, c, output, threads, gen.<key>.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig read_experiment_config(const std::string& path);
// Throws BenchError naming the first bad field.
void check_experiment_config(const ExperimentConfig& cfg);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

struct BenchRow {
  std::uint64_t n = 0;  // size of the generated instance
  std::uint64_t seed = 0;
  bool valid = false;
  double valid_fraction = 0;  // vertices whose local check passes
  std::size_t relation_violations = 0;  // executions breaking dist ≤ vol ≤ Δ^dist + 1, valid or not
  // Costs are only filled when the output validated.
  std::optional<CostSummary> cost;
};

std::vector<BenchRow> run_experiment(const ExperimentConfig& cfg);

inline constexpr const char* kBenchCsvColumns =
    "n,seed,max_dist,mean_dist,max_vol,mean_vol,valid_fraction,truncations,relation_violations";
std::string bench_csv(const ExperimentConfig& cfg, const std::vector<BenchRow>& rows);

struct ScalingFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square in log₂ units
  std::size_t points = 0;
};

// Least squares on (log₂ x, log₂ y); needs ≥ 4 distinct x values and y > 0.
ScalingFit fit_loglog(const std::vector<std::pair<double, double>>& xy);
// Groups rows by n and fits the per-n maximum of `column`; rows with an empty cell are skipped.
ScalingFit fit_exponent(const std::string& csv, const std::string& column);

}  // namespace lclvol
