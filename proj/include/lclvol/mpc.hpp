#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lclvol/probe.hpp"

namespace lclvol {

// One machine per vertex. S bounds messages sent and received per machine per round;
// space bounds stored items per machine (0 = unbounded, peak still recorded).
struct MpcConfig {
  double c = 0.5;
  std::size_t S = 0;  // 0 = max(Δ, ⌈n^c⌉) + 2
  std::size_t space = 0;
  std::size_t step_budget = 0;  // per execution, 0 = nΔ + 1 as in run_all
};

inline constexpr int kSortRounds = 3;

// ⌈n^c⌉ with a guard against float noise at exact powers.
std::size_t fanout(std::size_t n, double c);
std::size_t default_traffic_budget(std::size_t n, int max_degree, double c);
// Rounds per superstep never exceed this: sort + forward/answer + propagation + delivery.
std::size_t rounds_per_step_bound(double c);

struct MpcCell {
  std::uint32_t round;
  std::uint32_t machine;
  std::uint32_t sent;
  std::uint32_t received;
  std::uint32_t stored;
};

struct MpcTrace {
  std::size_t rounds = 0;
  std::size_t supersteps = 0;
  std::size_t S = 0;
  std::size_t space = 0;
  std::vector<MpcCell> cells;  // machines with traffic, per round
  std::size_t max_sent = 0;
  std::size_t max_received = 0;
  std::size_t peak_stored = 0;
  std::size_t max_vol = 0;
  std::size_t forwarded = 0;  // queries that reached a destination
  std::size_t routed = 0;     // queries routed in total
  bool violated = false;
  std::string violation;
};

struct MpcResult {
  OutputLabeling out;  // empty when the run aborted on a budget violation
  MpcTrace trace;
};

MpcResult mpc_simulate(const PortedGraph& g, const Labeling& lab, const ProbeAlgorithm& alg, const MpcConfig& cfg,
                       std::uint64_t seed);

struct RouteQuery {
  Vertex source;
  Vertex dest;
  Port port;
};

struct RouteResponse {
  Vertex neighbor = kNoVertex;
  Port back = kNoPort;
};

struct RouteResult {
  std::vector<RouteResponse> responses;  // parallel to the queries
  std::size_t rounds = 0;
  std::size_t forwarded = 0;
  std::size_t propagate_rounds = 0;
  std::vector<std::size_t> layer_messages;  // step-3 messages per propagation round
  std::vector<MpcCell> cells;              // rounds numbered from first_round
  std::size_t max_sent = 0;
  std::size_t max_received = 0;
  bool violated = false;
  std::string violation;
};

// The four-step pipeline for one superstep. At most one query per source;
// `stored` (optional, per machine) is copied into the cells.
RouteResult route_step(const PortedGraph& g, const std::vector<RouteQuery>& queries, const MpcConfig& cfg,
                       std::size_t first_round = 1, const std::vector<std::uint32_t>* stored = nullptr);

// `round,machine,sent,received,stored` with a version comment.
std::string trace_csv(const MpcTrace& t);

}  // namespace lclvol
