#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lclvol/probe.hpp"
#include "lclvol/problems.hpp"

namespace lclvol {

enum class AdversaryStatus : std::uint8_t { Counterexample, Resisted, BudgetExhausted };

const char* to_string(AdversaryStatus s);

struct AdversaryOptions {
  std::size_t budget = 1000;    // queries per execution
  std::uint64_t declared_n = 0;  // reported by n(); 0 picks the default for the process
};

// One answered query. execution == -1 marks nodes the process created itself.
struct AdversaryEvent {
  int execution = -1;
  std::uint64_t from_id = 0;
  Port port = kNoPort;
  std::uint64_t revealed_id = 0;
  bool materialized = false;
};

struct AdversaryExecution {
  std::uint64_t start_id = 0;
  Output output;
  std::size_t queries = 0;
  std::size_t vol = 1;
};

struct AdversaryTranscript {
  Problem problem = Problem::LeafColoring;
  int k = 1;
  std::shared_ptr<const ProbeAlgorithm> alg;
  AdversaryStatus status = AdversaryStatus::Resisted;
  std::string reason;
  std::string predicted_condition;  // condition the process expects to break

  std::vector<AdversaryEvent> log;
  std::vector<AdversaryExecution> executions;

  std::size_t materialized = 0;  // nodes created while interacting
  std::size_t constructed = 0;   // after completing dangling ports, before padding
  std::uint64_t declared_n = 0;
  bool read_n = false;           // some execution called n(); the instance is padded to declared_n

  Instance instance;  // empty unless the interaction finished
  OutputLabeling outputs;
  Verdict verdict;
  std::vector<std::uint64_t> failing;  // violator ids

  std::size_t queries_used = 0;
  std::size_t max_queries = 0;  // m: the largest per-execution query count
};

// Size accounting constant for hthc_adversary: constructed ≤ C·k²·m'·log₂ m', m' = max(m, 2) + 1.
inline constexpr double kHthcSizeConstant = 8.0;

// Lazily grows a binary tree under `alg`, then colors every leaf against the root's answer.
// Default declared_n is 3·budget + 3.
AdversaryTranscript leafcolor_adversary(std::shared_ptr<const ProbeAlgorithm> alg, const AdversaryOptions& opts = {});

// Phases k..1 of the level-by-level splice and bisect process; k ≥ 2.
// Default declared_n is the size bound for the budget.
AdversaryTranscript hthc_adversary(std::shared_ptr<const ProbeAlgorithm> alg, int k,
                                   const AdversaryOptions& opts = {});

// Re-runs the recorded executions and the full instance; throws std::runtime_error on divergence.
Verdict replay_transcript(const AdversaryTranscript& t);

std::string format_adversary_transcript(const AdversaryTranscript& t);

// Search along a path whose end outputs are distinct and not X. Stops at an X,
// at an inadmissible output, or at an adjacent pair with distinct outputs.
struct PathSearch {
  enum Kind : std::uint8_t { FoundX, Inadmissible, Adjacent } kind = Adjacent;
  std::size_t index = 0;  // the X or inadmissible node, or the upper node of the pair
  std::size_t evaluations = 0;
};
PathSearch search_path(std::size_t len, const std::function<Output(std::size_t)>& out_at,
                       const std::function<bool(const Output&)>& admissible);

// Strawmen.
std::unique_ptr<ProbeAlgorithm> constant_solver(Output o);
// Walks left children for up to `steps` queries; answers the first leaf's color, else the start's.
std::unique_ptr<ProbeAlgorithm> left_walk_solver(int steps);
// Descends to the smaller-id child for up to `steps` moves; answers the leaf's color, else the start's.
std::unique_ptr<ProbeAlgorithm> greedy_id_solver(int steps);
// Explores the full radius-`depth` ball; answers the majority leaf color, R on ties or no leaves.
std::unique_ptr<ProbeAlgorithm> bfs_majority_solver(int depth);
// X when the level (along right children, capped at k+1) exceeds t; otherwise the input color.
std::unique_ptr<ProbeAlgorithm> threshold_x_solver(int k, int t);

// Strawmen and catalog solvers by name: const-R, const-B, left-walk-<s>, greedy-id-<s>,
// bfs-majority-<d>,
// threshold-x-<t> (uses cfg.k), then anything make_solver accepts.
struct SolverConfig;
std::unique_ptr<ProbeAlgorithm> make_adversary_target(const std::string& name, const SolverConfig& cfg);

}  // namespace lclvol
