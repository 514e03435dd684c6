#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lclvol/probe.hpp"
#include "lclvol/problems.hpp"

namespace lclvol {

struct SolverConfig {
  int k = 1;
  int l = 1;
  int tau = 32;     // rw-to-leaf truncation: tau·⌈log₂ n⌉ steps
  int c_const = 3;  // waypoint probability c·⌈log₂ n⌉ / ⌈n^{1/k}⌉
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument unless tau ≥ 1, c ≥ 3 and 1 ≤ k ≤ l (l only checked for HH).
void check_config(const SolverConfig& cfg, bool hh = false);

std::unique_ptr<ProbeAlgorithm> leafcolor_dist_solver();
std::unique_ptr<ProbeAlgorithm> rw_to_leaf_solver(const SolverConfig& cfg);
std::unique_ptr<ProbeAlgorithm> btl_dist_solver();
std::unique_ptr<ProbeAlgorithm> recursive_hthc_solver(const SolverConfig& cfg);
std::unique_ptr<ProbeAlgorithm> sampled_hthc_solver(const SolverConfig& cfg);
std::unique_ptr<ProbeAlgorithm> hybrid_dist_solver(const SolverConfig& cfg);
std::unique_ptr<ProbeAlgorithm> hybrid_vol_solver(const SolverConfig& cfg);
// Bit 0 solves Hierarchical-THC(l), bit 1 Hybrid-THC(k); `sampled` picks the volume variants.
std::unique_ptr<ProbeAlgorithm> hh_solver(const SolverConfig& cfg, bool sampled);

struct SolverInfo {
  std::string name;
  Problem problem;
  bool randomized;
};

const std::vector<SolverInfo>& solver_catalog();
std::optional<SolverInfo> find_solver(const std::string& name);
// Throws std::invalid_argument for unknown names or bad configs.
std::unique_ptr<ProbeAlgorithm> make_solver(const std::string& name, const SolverConfig& cfg);

// Waypoint threshold p as used by the sampled solvers.
double waypoint_probability(std::uint64_t n, int k, int c_const);

// Normalizes the labeling, runs the solver from every vertex and validates the result.
struct SolveReport {
  RunAllResult run;
  Verdict verdict;
};
SolveReport solve_and_validate(const Instance& inst, const std::string& solver, const SolverConfig& cfg,
                               const EngineOptions& opts = {});

}  // namespace lclvol
