#include "lclvol/probe.hpp"

#include <cmath>
#include <deque>

namespace lclvol {

namespace {

struct Scratch {
  std::vector<std::uint32_t> stamp;
  std::vector<Local> local;
  std::vector<std::uint32_t> dstamp;
  std::vector<int> dist;
  std::uint32_t epoch = 0;
  std::uint32_t depoch = 0;

  void prepare(std::size_t n) {
    if (stamp.size() < n) {
      stamp.assign(n, 0);
      local.assign(n, kNoLocal);
      dstamp.assign(n, 0);
      dist.assign(n, 0);
      epoch = depoch = 0;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
  }
  std::uint32_t next_depoch() {
    if (++depoch == 0) {
      std::fill(dstamp.begin(), dstamp.end(), 0);
      depoch = 1;
    }
    return depoch;
  }
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

std::uint8_t mask_of(const PortedGraph& g, Vertex v) {
  std::uint8_t m = 0;
  for (int p = 1; p <= g.max_degree(); ++p)
    if (g.has_port(v, static_cast<Port>(p))) m |= static_cast<std::uint8_t>(1u << (p - 1));
  return m;
}

class GraphProbe final : public Probe {
 public:
  GraphProbe(const PortedGraph& g, const Labeling& lab, Vertex start, std::uint64_t seed, const EngineOptions& o,
             Scratch& s)
      : g_(g), lab_(lab), seed_(seed), opts_(o), s_(s) {
    budget_ = o.step_budget ? o.step_budget : g.n() * static_cast<std::size_t>(g.max_degree()) + 1;
    s_.prepare(g.n());
    add(start);
  }

  std::uint64_t n() const override { return g_.n(); }
  int max_degree() const override { return g_.max_degree(); }
  VertexView start() override { return views_[0]; }

  VertexView query(Local w, Port p) override {
    if (w >= views_.size()) throw ContractViolation("query of unvisited vertex (local " + std::to_string(w) + ")");
    if (!views_[w].has_port(p))
      throw ContractViolation("query of invalid port " + std::to_string(p) + " at vertex id " +
                              std::to_string(views_[w].id));
    if (++probes_ > budget_) throw RunawayError("runaway: step budget " + std::to_string(budget_) + " exceeded");
    Vertex u = g_.neighbor(visited_[w], p);
    Local lu = s_.stamp[u] == s_.epoch ? s_.local[u] : add(u);
    if (opts_.record_log) log_.push_back({views_[w].id, p, views_[lu].id});
    return views_[lu];
  }

  const VertexView& view(Local w) const override {
    if (w >= views_.size()) throw ContractViolation("view of unvisited vertex");
    return views_[w];
  }

  RandomStream random(Local w) override {
    if (w >= views_.size()) throw ContractViolation("random stream of unvisited vertex");
    return RandomStream(seed_, views_[w].id, &cursors_[w], opts_.deny_random);
  }

  void flag_truncated() override { truncated_ = true; }

  RunResult finish(Output out) {
    RunResult r;
    r.output = out;
    r.cost.vol = visited_.size();
    r.cost.probes = probes_;
    r.cost.truncated = truncated_;
    for (auto c : cursors_) r.cost.random_bits += c;
    r.cost.dist = distance();
    r.exec.start = visited_[0];
    r.exec.output = out;
    r.exec.visited = std::move(visited_);
    r.exec.log = std::move(log_);
    r.exec.bits_used.assign(cursors_.begin(), cursors_.end());
    return r;
  }

 private:
  Local add(Vertex u) {
    Local l = static_cast<Local>(visited_.size());
    s_.stamp[u] = s_.epoch;
    s_.local[u] = l;
    visited_.push_back(u);
    views_.push_back({l, g_.id(u), g_.degree(u), mask_of(g_, u), lab_[u]});
    cursors_.push_back(0);
    return l;
  }

  int distance() {
    if (visited_.size() == 1) return 0;
    std::uint32_t de = s_.next_depoch();
    std::vector<Vertex> q;
    q.reserve(visited_.size());
    q.push_back(visited_[0]);
    s_.dstamp[visited_[0]] = de;
    s_.dist[visited_[0]] = 0;
    std::size_t found = 1;
    int best = 0;
    // In a forest the unique path runs inside any connected vertex set, so
    // BFS over the visited set is exact; otherwise search all of G.
    const bool restrict = g_.is_forest();
    for (std::size_t h = 0; h < q.size() && found < visited_.size(); ++h) {
      Vertex v = q[h];
      for (int p = 1; p <= g_.max_degree(); ++p) {
        Vertex w = g_.neighbor(v, static_cast<Port>(p));
        if (w == kNoVertex || s_.dstamp[w] == de) continue;
        bool vis = s_.stamp[w] == s_.epoch;
        if (restrict && !vis) continue;
        s_.dstamp[w] = de;
        s_.dist[w] = s_.dist[v] + 1;
        q.push_back(w);
        if (vis) {
          ++found;
          best = std::max(best, s_.dist[w]);
        }
      }
    }
    return best;
  }

  const PortedGraph& g_;
  const Labeling& lab_;
  std::uint64_t seed_;
  EngineOptions opts_;
  Scratch& s_;
  std::size_t budget_;
  std::size_t probes_ = 0;
  bool truncated_ = false;
  std::vector<Vertex> visited_;
  std::deque<VertexView> views_;
  std::deque<std::uint64_t> cursors_;
  std::vector<QueryEvent> log_;
};

}  // namespace

RunResult run_execution(const PortedGraph& g, const Labeling& lab, const ProbeAlgorithm& alg, Vertex v,
                        std::uint64_t seed, const EngineOptions& opts) {
  if (v >= g.n()) throw std::out_of_range("start vertex out of range");
  GraphProbe probe(g, lab, v, seed, opts, scratch());
  Output out = alg.run(probe);
  return probe.finish(out);
}

bool cost_relation_holds(const CostRecord& c, int max_degree) {
  if (static_cast<std::size_t>(c.dist) > c.vol) return false;
  double bound = std::pow(static_cast<double>(max_degree), c.dist) + 1.0;
  return static_cast<double>(c.vol) <= bound;
}

RunAllResult run_all(const PortedGraph& g, const Labeling& lab, const ProbeAlgorithm& alg, std::uint64_t seed,
                     const EngineOptions& opts) {
  EngineOptions o = opts;
  o.record_log = false;
  RunAllResult r;
  r.out.resize(g.n());
  r.costs.resize(g.n());
  double sd = 0, sv = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    RunResult one;
    try {
      one = run_execution(g, lab, alg, v, seed, o);
    } catch (const std::exception& e) {
      throw ExecutionError(g.id(v), e.what());
    }
    r.out[v] = one.output;
    r.costs[v] = one.cost;
    CostSummary& s = r.summary;
    s.max_dist = std::max(s.max_dist, one.cost.dist);
    s.max_vol = std::max(s.max_vol, one.cost.vol);
    sd += one.cost.dist;
    sv += static_cast<double>(one.cost.vol);
    s.truncations += one.cost.truncated;
    s.random_bits += one.cost.random_bits;
    if (!cost_relation_holds(one.cost, g.max_degree())) ++s.relation_violations;
  }
  if (g.n()) {
    r.summary.mean_dist = sd / static_cast<double>(g.n());
    r.summary.mean_vol = sv / static_cast<double>(g.n());
  }
  return r;
}

int dist_of(const PortedGraph& g, const Execution& e) {
  if (e.visited.empty()) return 0;
  std::vector<int> d(g.n(), -1);
  std::deque<Vertex> q{e.start};
  d[e.start] = 0;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop_front();
    for (Port p : g.ports(v)) {
      Vertex w = g.neighbor(v, p);
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
    }
  }
  int best = 0;
  for (Vertex w : e.visited) best = std::max(best, d[w]);
  return best;
}

std::size_t vol_of(const Execution& e) { return e.visited.size(); }

std::string format_transcript(const Execution& e) {
  std::string s;
  for (std::size_t i = 0; i < e.log.size(); ++i)
    s += std::to_string(i + 1) + " query(" + std::to_string(e.log[i].from_id) + ", " +
         std::to_string(e.log[i].port) + ") -> " + std::to_string(e.log[i].revealed_id) + '\n';
  return s;
}

Explorer::Explorer(Probe& p) : probe_(p) {
  memo_.reserve(64);
  memo_.emplace_back();
  memo_.back().fill(kUnqueried);
}

Explorer::Handle Explorer::nbr(Handle v, Port p) {
  if (p == kNoPort || p > kMaxDegree) return none;
  Local& slot = memo_[v][p - 1];
  if (slot != kUnqueried) return slot;
  if (!probe_.view(v).has_port(p)) return slot = none;
  Local u = probe_.query(v, p).local;
  while (memo_.size() <= u) {
    memo_.emplace_back();
    memo_.back().fill(kUnqueried);
  }
  memo_[v][p - 1] = u;
  return u;
}

GatheredBall gather_ball(Probe& probe, int radius) {
  GatheredBall b;
  b.radius = radius;
  b.n = probe.n();
  b.views.push_back(probe.start());
  b.adj.emplace_back();
  b.adj.back().fill(kNoLocal);
  b.depth.push_back(0);
  for (std::size_t h = 0; h < b.views.size(); ++h) {
    if (b.depth[h] >= radius) continue;
    for (int p = 1; p <= kMaxDegree; ++p) {
      if (!b.views[h].has_port(static_cast<Port>(p))) continue;
      VertexView u = probe.query(static_cast<Local>(h), static_cast<Port>(p));
      if (u.local >= b.views.size()) {
        b.views.resize(u.local + 1);
        b.adj.resize(u.local + 1);
        b.depth.resize(u.local + 1, -1);
        b.adj[u.local].fill(kNoLocal);
      }
      if (b.depth[u.local] < 0) {
        b.views[u.local] = u;
        b.depth[u.local] = b.depth[h] + 1;
      }
      b.adj[h][p - 1] = u.local;
    }
  }
  return b;
}

namespace {

class BallAlgorithm final : public ProbeAlgorithm {
 public:
  BallAlgorithm(DistanceFn fn, RadiusFn radius, std::string name)
      : fn_(std::move(fn)), radius_(std::move(radius)), name_(std::move(name)) {}
  Output run(Probe& probe) const override { return fn_(gather_ball(probe, radius_(probe.n()))); }
  std::string name() const override { return name_; }

 private:
  DistanceFn fn_;
  RadiusFn radius_;
  std::string name_;
};

}  // namespace

std::unique_ptr<ProbeAlgorithm> simulate_distance_algorithm(DistanceFn fn, int radius, std::string name) {
  return std::make_unique<BallAlgorithm>(std::move(fn), [radius](std::uint64_t) { return radius; },
                                         std::move(name));
}

std::unique_ptr<ProbeAlgorithm> simulate_distance_algorithm(DistanceFn fn, RadiusFn radius, std::string name) {
  return std::make_unique<BallAlgorithm>(std::move(fn), std::move(radius), std::move(name));
}

}  // namespace lclvol
