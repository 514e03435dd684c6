#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lclvol/graph.hpp"
#include "lclvol/random.hpp"
#include "lclvol/structure.hpp"

namespace lclvol {

// Per-execution dense index of a visited vertex, in visit order (start = 0).
using Local = std::uint32_t;
inline constexpr Local kNoLocal = 0xffffffffu;

struct VertexView {
  Local local = kNoLocal;
  std::uint64_t id = 0;
  int degree = 0;
  std::uint8_t port_mask = 0;  // bit p-1 set iff port p is assigned
  NodeLabel label;

  bool has_port(Port p) const { return p != kNoPort && p <= kMaxDegree && ((port_mask >> (p - 1)) & 1u); }
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class RunawayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The oracle an algorithm talks to. query() may only target visited vertices.
class Probe {
 public:
  virtual ~Probe() = default;
  virtual std::uint64_t n() const = 0;
  virtual int max_degree() const = 0;
  virtual VertexView start() = 0;
  virtual VertexView query(Local w, Port p) = 0;
  virtual const VertexView& view(Local w) const = 0;
  virtual RandomStream random(Local w) = 0;
  virtual void flag_truncated() {}
};

class ProbeAlgorithm {
 public:
  virtual ~ProbeAlgorithm() = default;
  virtual Output run(Probe& probe) const = 0;
  virtual std::string name() const = 0;
};

struct CostRecord {
  int dist = 0;
  std::size_t vol = 1;
  std::size_t probes = 0;
  std::uint64_t random_bits = 0;
  bool truncated = false;
};

struct QueryEvent {
  std::uint64_t from_id;
  Port port;
  std::uint64_t revealed_id;
};

struct Execution {
  Vertex start = kNoVertex;
  std::vector<Vertex> visited;             // in visit order
  std::vector<QueryEvent> log;
  std::vector<std::uint64_t> bits_used;    // parallel to visited
  Output output;
};

struct RunResult {
  Output output;
  CostRecord cost;
  Execution exec;
};

struct EngineOptions {
  std::size_t step_budget = 0;  // 0 = n·Δ + 1
  bool record_log = true;
  bool deny_random = false;
};

class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(std::uint64_t vertex_id, const std::string& what)
      : std::runtime_error("execution from vertex id " + std::to_string(vertex_id) + ": " + what),
        vertex_id(vertex_id) {}
  std::uint64_t vertex_id;
};

RunResult run_execution(const PortedGraph& g, const Labeling& lab, const ProbeAlgorithm& alg, Vertex v,
                        std::uint64_t seed, const EngineOptions& opts = {});

struct CostSummary {
  int max_dist = 0;
  double mean_dist = 0;
  std::size_t max_vol = 0;
  double mean_vol = 0;
  std::size_t truncations = 0;
  std::uint64_t random_bits = 0;
  std::size_t relation_violations = 0;  // executions breaking dist ≤ vol ≤ Δ^dist + 1
};

struct RunAllResult {
  OutputLabeling out;
  std::vector<CostRecord> costs;
  CostSummary summary;
};

RunAllResult run_all(const PortedGraph& g, const Labeling& lab, const ProbeAlgorithm& alg, std::uint64_t seed,
                     const EngineOptions& opts = {});

int dist_of(const PortedGraph& g, const Execution& e);
std::size_t vol_of(const Execution& e);
// dist ≤ vol and vol ≤ Δ^dist + 1.
bool cost_relation_holds(const CostRecord& c, int max_degree);

std::string format_transcript(const Execution& e);

// Memoizing navigator over a probe; Handle is the execution-local index.
class Explorer {
 public:
  using Handle = Local;
  static constexpr Handle none = kNoLocal;

  explicit Explorer(Probe& p);
  Handle start() const { return 0; }
  Handle nbr(Handle v, Port p);
  const NodeLabel& label(Handle v) const { return probe_.view(v).label; }
  std::uint64_t id(Handle v) const { return probe_.view(v).id; }
  const VertexView& view(Handle v) const { return probe_.view(v); }
  Probe& probe() { return probe_; }

 private:
  Probe& probe_;
  std::vector<std::array<Local, kMaxDegree>> memo_;
};

inline constexpr Local kUnqueried = 0xfffffffeu;

// Radius-T ball gathered by BFS queries, handed to a distance algorithm.
struct GatheredBall {
  std::vector<VertexView> views;                 // index = local id
  std::vector<std::array<Local, kMaxDegree>> adj;  // kNoLocal beyond the ball or unassigned
  std::vector<int> depth;
  int radius = 0;
  std::uint64_t n = 0;
};

struct BallViewNav {
  using Handle = Local;
  static constexpr Handle none = kNoLocal;
  const GatheredBall& b;
  Handle nbr(Handle v, Port p) const {
    if (p == kNoPort || p > kMaxDegree) return none;
    return b.adj[v][p - 1];
  }
  const NodeLabel& label(Handle v) const { return b.views[v].label; }
  std::uint64_t id(Handle v) const { return b.views[v].id; }
};

using DistanceFn = std::function<Output(const GatheredBall&)>;

using RadiusFn = std::function<int(std::uint64_t n)>;

std::unique_ptr<ProbeAlgorithm> simulate_distance_algorithm(DistanceFn fn, int radius, std::string name = "ball");
std::unique_ptr<ProbeAlgorithm> simulate_distance_algorithm(DistanceFn fn, RadiusFn radius, std::string name = "ball");

// BFS-gathers the radius-T ball around the start of `probe`.
GatheredBall gather_ball(Probe& probe, int radius);

}  // namespace lclvol
