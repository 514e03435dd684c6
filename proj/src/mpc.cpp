#include "lclvol/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace lclvol {

std::size_t fanout(std::size_t n, double c) {
  if (c <= 0) throw std::invalid_argument("c must be positive");
  double f = std::ceil(std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), c) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(f));
}

std::size_t default_traffic_budget(std::size_t n, int max_degree, double c) {
  return std::max<std::size_t>(static_cast<std::size_t>(max_degree), fanout(n, c)) + 2;
}

std::size_t rounds_per_step_bound(double c) {
  return kSortRounds + 2 + static_cast<std::size_t>(std::ceil(1.0 / c - 1e-9)) + 1;
}

namespace {

class Counter {
 public:
  Counter(std::size_t n, std::size_t S, const std::vector<std::uint32_t>* stored, RouteResult& r)
      : sent_(n, 0), recv_(n, 0), S_(S), stored_(stored), r_(r) {}

  void send(Vertex m) { touch(m), ++sent_[m]; }
  void recv(Vertex m) { touch(m), ++recv_[m]; }

  void flush(std::size_t round) {
    std::sort(touched_.begin(), touched_.end());
    for (Vertex m : touched_) {
      std::uint32_t st = stored_ ? (*stored_)[m] : 0;
      r_.cells.push_back({static_cast<std::uint32_t>(round), m, sent_[m], recv_[m], st});
      r_.max_sent = std::max<std::size_t>(r_.max_sent, sent_[m]);
      r_.max_received = std::max<std::size_t>(r_.max_received, recv_[m]);
      if (!r_.violated && (sent_[m] > S_ || recv_[m] > S_)) {
        r_.violated = true;
        r_.violation = "machine " + std::to_string(m + 1) + " moved " + std::to_string(std::max(sent_[m], recv_[m])) +
                       " messages in round " + std::to_string(round) + ", budget " + std::to_string(S_);
      }
      sent_[m] = recv_[m] = 0;
    }
    touched_.clear();
  }

 private:
  void touch(Vertex m) {
    if (!sent_[m] && !recv_[m]) touched_.push_back(m);
  }
  std::vector<std::uint32_t> sent_, recv_;
  std::vector<Vertex> touched_;
  std::size_t S_;
  const std::vector<std::uint32_t>* stored_;
  RouteResult& r_;
};

}  // namespace

RouteResult route_step(const PortedGraph& g, const std::vector<RouteQuery>& queries, const MpcConfig& cfg,
                       std::size_t first_round, const std::vector<std::uint32_t>* stored) {
  RouteResult r;
  const std::size_t q = queries.size(), n = g.n();
  r.responses.resize(q);
  if (q == 0) return r;
  if (q > n) throw std::invalid_argument("more queries than machines");
  {
    std::vector<char> seen(n, 0);
    for (const auto& x : queries) {
      if (x.source >= n || x.dest >= n) throw std::invalid_argument("query names an unknown machine");
      if (seen[x.source]++) throw std::invalid_argument("two queries from one source");
    }
  }
  const std::size_t F = fanout(n, cfg.c);
  const std::size_t S = cfg.S ? cfg.S : default_traffic_budget(n, g.max_degree(), cfg.c);
  Counter cnt(n, S, stored, r);
  std::size_t round = first_round;

  // 1. oracle sort; query j lands on machine j.
  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto &x = queries[a], &y = queries[b];
    if (x.dest != y.dest) return x.dest < y.dest;
    if (x.port != y.port) return x.port < y.port;
    return x.source < y.source;
  });
  for (std::size_t j = 0; j < q; ++j) {
    cnt.send(queries[order[j]].source);
    cnt.recv(static_cast<Vertex>(j));
  }
  cnt.flush(round);
  round += kSortRounds;

  struct Run {
    std::size_t b, e;
  };
  std::vector<Run> runs;
  for (std::size_t j = 0; j < q;) {
    std::size_t e = j + 1;
    const auto& x = queries[order[j]];
    while (e < q && queries[order[e]].dest == x.dest && queries[order[e]].port == x.port) ++e;
    runs.push_back({j, e});
    j = e;
  }

  // 2. the last machine of each run asks the destination, which answers.
  for (const Run& run : runs) {
    cnt.send(static_cast<Vertex>(run.e - 1));
    cnt.recv(queries[order[run.e - 1]].dest);
    ++r.forwarded;
  }
  cnt.flush(round++);
  std::vector<RouteResponse> held(q);
  bool shared = false;
  for (const Run& run : runs) {
    const auto& x = queries[order[run.e - 1]];
    Vertex nb = g.neighbor(x.dest, x.port);
    if (nb == kNoVertex) throw std::invalid_argument("query of an unassigned port");
    RouteResponse resp{nb, g.back_port(x.dest, x.port)};
    cnt.send(x.dest);
    if (run.e - run.b == 1) {
      // A singleton run needs no propagation; the answer goes straight to the source.
      cnt.recv(x.source);
      r.responses[order[run.b]] = resp;
    } else {
      cnt.recv(static_cast<Vertex>(run.e - 1));
      held[run.e - 1] = resp;
      shared = true;
    }
  }
  cnt.flush(round++);
  if (!shared) {
    r.rounds = round - first_round;
    return r;
  }

  // 3. backward propagation: holders at offsets [0, K] send with stride K+1, F targets each.
  std::vector<std::size_t> known(runs.size(), 0);
  while (true) {
    std::size_t msgs = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const std::size_t len = runs[i].e - runs[i].b, lead = runs[i].e - 1;
      if (len < 2 || known[i] >= len - 1) continue;
      const std::size_t s = known[i] + 1;
      for (std::size_t o = 0; o < s; ++o)
        for (std::size_t a = 1; a <= F; ++a) {
          std::size_t t = o + a * s;
          if (t > len - 1) break;
          cnt.send(static_cast<Vertex>(lead - o));
          cnt.recv(static_cast<Vertex>(lead - t));
          held[lead - t] = held[lead];
          ++msgs;
        }
      known[i] = std::min(len - 1, s * (F + 1) - 1);
    }
    if (!msgs) break;
    r.layer_messages.push_back(msgs);
    ++r.propagate_rounds;
    cnt.flush(round++);
  }

  // 4. delivery to the sources.
  for (const Run& run : runs) {
    if (run.e - run.b < 2) continue;
    for (std::size_t j = run.b; j < run.e; ++j) {
      cnt.send(static_cast<Vertex>(j));
      cnt.recv(queries[order[j]].source);
      r.responses[order[j]] = held[j];
    }
  }
  cnt.flush(round++);
  r.rounds = round - first_round;
  return r;
}

namespace {

struct Suspend {
  Vertex dest;
  Port port;
};

struct Machine {
  std::unordered_map<std::uint64_t, std::pair<Vertex, Port>> known;  // (vertex, port) → (neighbor, back)
  bool halted = false;
  Output out;
  std::size_t vol = 1;

  static std::uint64_t key(Vertex v, Port p) { return static_cast<std::uint64_t>(v) * 256 + p; }
};

std::uint8_t port_mask(const PortedGraph& g, Vertex v) {
  std::uint8_t m = 0;
  for (int p = 1; p <= g.max_degree(); ++p)
    if (g.has_port(v, static_cast<Port>(p))) m |= static_cast<std::uint8_t>(1u << (p - 1));
  return m;
}

// Replays one execution from its start against answers the machine already holds.
class MachineProbe final : public Probe {
 public:
  MachineProbe(const PortedGraph& g, const Labeling& lab, Vertex start, std::uint64_t seed, std::size_t budget,
               const Machine& m)
      : g_(g), lab_(lab), seed_(seed), budget_(budget), m_(m) {
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
    auto it = m_.known.find(Machine::key(visited_[w], p));
    if (it == m_.known.end()) throw Suspend{visited_[w], p};
    Vertex u = it->second.first;
    auto l = local_.find(u);
    return views_[l == local_.end() ? add(u) : l->second];
  }

  const VertexView& view(Local w) const override {
    if (w >= views_.size()) throw ContractViolation("view of unvisited vertex");
    return views_[w];
  }

  RandomStream random(Local w) override {
    if (w >= views_.size()) throw ContractViolation("random stream of unvisited vertex");
    return RandomStream(seed_, views_[w].id, &cursors_[w], false);
  }

  std::size_t vol() const { return visited_.size(); }

 private:
  Local add(Vertex u) {
    Local l = static_cast<Local>(visited_.size());
    local_[u] = l;
    visited_.push_back(u);
    views_.push_back({l, g_.id(u), g_.degree(u), port_mask(g_, u), lab_[u]});
    cursors_.push_back(0);
    return l;
  }

  const PortedGraph& g_;
  const Labeling& lab_;
  std::uint64_t seed_;
  std::size_t budget_;
  const Machine& m_;
  std::size_t probes_ = 0;
  std::vector<Vertex> visited_;
  std::deque<VertexView> views_;
  std::deque<std::uint64_t> cursors_;
  std::unordered_map<Vertex, Local> local_;
};

}  // namespace

MpcResult mpc_simulate(const PortedGraph& g, const Labeling& lab, const ProbeAlgorithm& alg, const MpcConfig& cfg,
                       std::uint64_t seed) {
  const std::size_t n = g.n();
  MpcResult res;
  MpcTrace& tr = res.trace;
  tr.S = cfg.S ? cfg.S : default_traffic_budget(n, g.max_degree(), cfg.c);
  tr.space = cfg.space;
  const std::size_t budget = cfg.step_budget ? cfg.step_budget : n * static_cast<std::size_t>(g.max_degree()) + 1;
  MpcConfig rc = cfg;
  rc.S = tr.S;

  std::vector<Machine> ms(n);
  std::vector<std::uint32_t> stored(n, 0);
  std::size_t round = 1;
  std::vector<RouteQuery> queries;
  while (true) {
    queries.clear();
    for (Vertex v = 0; v < n; ++v) {
      Machine& m = ms[v];
      if (m.halted) continue;
      MachineProbe probe(g, lab, v, seed, budget, m);
      try {
        m.out = alg.run(probe);
        m.halted = true;
      } catch (const Suspend& s) {
        queries.push_back({v, s.dest, s.port});
      } catch (const std::exception& e) {
        throw ExecutionError(g.id(v), e.what());
      }
      m.vol = probe.vol();
      stored[v] = static_cast<std::uint32_t>(g.degree(v) + m.vol);
      tr.peak_stored = std::max<std::size_t>(tr.peak_stored, stored[v]);
    }
    if (tr.space && tr.peak_stored > tr.space && !tr.violated) {
      tr.violated = true;
      tr.violation = "stored items " + std::to_string(tr.peak_stored) + " exceed space " + std::to_string(tr.space);
    }
    if (tr.violated || queries.empty()) break;
    ++tr.supersteps;
    RouteResult rr = route_step(g, queries, rc, round, &stored);
    round += rr.rounds;
    tr.routed += queries.size();
    tr.forwarded += rr.forwarded;
    tr.max_sent = std::max(tr.max_sent, rr.max_sent);
    tr.max_received = std::max(tr.max_received, rr.max_received);
    tr.cells.insert(tr.cells.end(), rr.cells.begin(), rr.cells.end());
    if (rr.violated) {
      tr.violated = true;
      tr.violation = rr.violation;
      break;
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const auto& x = queries[i];
      const auto& a = rr.responses[i];
      Machine& m = ms[x.source];
      m.known[Machine::key(x.dest, x.port)] = {a.neighbor, a.back};
      m.known[Machine::key(a.neighbor, a.back)] = {x.dest, x.port};
    }
  }
  tr.rounds = round;  // routing rounds plus the output round
  for (const auto& m : ms) tr.max_vol = std::max(tr.max_vol, m.vol);
  if (tr.violated) return res;
  res.out.resize(n);
  for (Vertex v = 0; v < n; ++v) res.out[v] = ms[v].out;
  return res;
}

std::string trace_csv(const MpcTrace& t) {
  std::ostringstream o;
  o << "# lclvol mpc trace v1 S=" << t.S << " rounds=" << t.rounds << "\n";
  o << "round,machine,sent,received,stored\n";
  for (const auto& c : t.cells)
    o << c.round << ',' << c.machine + 1 << ',' << c.sent << ',' << c.received << ',' << c.stored << '\n';
  return o.str();
}

}  // namespace lclvol
