#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "lclvol/probe.hpp"
#include "support.hpp"

using namespace lclvol;
using lclvol::testing::Builder;

namespace {

Instance path(std::size_t n) {
  Builder b(n);
  for (Vertex i = 0; i + 1 < n; ++i) b.edge(i, i == 0 ? 1 : 2, i + 1, 1);
  return b.build();
}

Instance star(int leaves) {
  Builder b(static_cast<std::size_t>(leaves) + 1, leaves);
  for (int i = 1; i <= leaves; ++i) b.edge(0, static_cast<Port>(i), static_cast<Vertex>(i), 1);
  return b.build();
}

Instance cycle(std::size_t n) {
  Builder b(n);
  for (Vertex i = 0; i < n; ++i) b.edge(i, 2, (i + 1) % n, 1);
  return b.build();
}

struct Lambda final : ProbeAlgorithm {
  std::function<Output(Probe&)> f;
  explicit Lambda(std::function<Output(Probe&)> fn) : f(std::move(fn)) {}
  Output run(Probe& p) const override { return f(p); }
  std::string name() const override { return "lambda"; }
};

Output halt(Probe&) { return sym_out(Sym::R); }

// Explores every port of every visited vertex until the whole component is seen.
Output explore_all(Probe& p) {
  std::vector<VertexView> seen{p.start()};
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (int q = 1; q <= kMaxDegree; ++q)
      if (seen[i].has_port(static_cast<Port>(q))) {
        VertexView u = p.query(static_cast<Local>(i), static_cast<Port>(q));
        if (u.local == seen.size()) seen.push_back(u);
      }
  return sym_out(Sym::B);
}

// Random walk of 6 steps driven by the current vertex's stream.
Output random_walk(Probe& p) {
  Local cur = 0;
  for (int s = 0; s < 6; ++s) {
    const VertexView& v = p.view(cur);
    std::vector<Port> ps;
    for (int q = 1; q <= kMaxDegree; ++q)
      if (v.has_port(static_cast<Port>(q))) ps.push_back(static_cast<Port>(q));
    if (ps.empty()) break;
    std::uint64_t r = p.random(cur).next_block();
    cur = p.query(cur, ps[r % ps.size()]).local;
  }
  return sym_out(Sym::R);
}

}  // namespace

TEST(RunExecution, ImmediateHalt) {
  Instance g = path(4);
  Lambda a(halt);
  RunResult r = run_execution(g.g, g.lab, a, 1, 9);
  EXPECT_EQ(r.cost.vol, 1u);
  EXPECT_EQ(r.cost.dist, 0);
  EXPECT_EQ(r.cost.probes, 0u);
  EXPECT_EQ(vol_of(r.exec), 1u);
  EXPECT_EQ(dist_of(g.g, r.exec), 0);
}

TEST(RunExecution, BothPortsOfDegreeTwo) {
  Instance g = path(5);
  Lambda a([](Probe& p) {
    p.query(0, 1);
    p.query(0, 2);
    return sym_out(Sym::B);
  });
  RunResult r = run_execution(g.g, g.lab, a, 2, 0);
  EXPECT_EQ(r.cost.vol, 3u);
  EXPECT_EQ(r.cost.dist, 1);
  EXPECT_EQ(r.cost.probes, 2u);
  EXPECT_EQ(r.output, sym_out(Sym::B));
}

TEST(RunExecution, ContractViolations) {
  Instance g = path(5);
  Lambda unvisited([](Probe& p) {
    p.query(3, 1);
    return sym_out(Sym::R);
  });
  EXPECT_THROW(run_execution(g.g, g.lab, unvisited, 2, 0), ContractViolation);
  Lambda bad_port([](Probe& p) {
    p.query(0, 4);
    return sym_out(Sym::R);
  });
  EXPECT_THROW(run_execution(g.g, g.lab, bad_port, 2, 0), ContractViolation);
  Lambda forever([](Probe& p) {
    for (;;) p.query(0, 1);
    return sym_out(Sym::R);
  });
  EXPECT_THROW(run_execution(g.g, g.lab, forever, 2, 0), RunawayError);
  try {
    run_all(g.g, g.lab, unvisited, 0);
    FAIL();
  } catch (const ExecutionError& e) {
    EXPECT_EQ(e.vertex_id, g.g.id(0));
  }
}

TEST(RunAll, ConstantPathAndDeterminism) {
  Instance g = path(3);
  Lambda c(halt);
  RunAllResult r = run_all(g.g, g.lab, c, 1);
  for (auto& cost : r.costs) EXPECT_EQ(cost.vol, 1u);
  Lambda e(explore_all);
  RunAllResult r2 = run_all(g.g, g.lab, e, 1);
  EXPECT_EQ(r2.summary.max_vol, 3u);
  Instance junk;
  std::mt19937_64 rng(8);
  junk = lclvol::testing::random_junk_instance(40, 4, rng);
  Lambda w(random_walk);
  RunAllResult x = run_all(junk.g, junk.lab, w, 77), y = run_all(junk.g, junk.lab, w, 77);
  EXPECT_EQ(x.out, y.out);
  for (Vertex v = 0; v < junk.g.n(); ++v) {
    EXPECT_EQ(x.costs[v].vol, y.costs[v].vol);
    EXPECT_EQ(x.costs[v].dist, y.costs[v].dist);
    EXPECT_EQ(x.costs[v].random_bits, y.costs[v].random_bits);
  }
}

TEST(DistVol, RadiusTwoOnPathAndBound) {
  Instance g = path(9);
  auto ball = simulate_distance_algorithm([](const GatheredBall&) { return sym_out(Sym::R); }, 2);
  RunResult r = run_execution(g.g, g.lab, *ball, 4, 0);
  EXPECT_EQ(dist_of(g.g, r.exec), 2);
  EXPECT_EQ(r.cost.dist, 2);
  EXPECT_LE(static_cast<std::size_t>(r.cost.dist), vol_of(r.exec));
}

TEST(SimulateDistance, BallSizes) {
  auto t0 = simulate_distance_algorithm([](const GatheredBall&) { return sym_out(Sym::R); }, 0);
  auto t1 = simulate_distance_algorithm([](const GatheredBall&) { return sym_out(Sym::R); }, 1);
  auto t2 = simulate_distance_algorithm([](const GatheredBall&) { return sym_out(Sym::R); }, 2);
  Instance s = star(5);
  EXPECT_EQ(run_execution(s.g, s.lab, *t0, 0, 0).cost.vol, 1u);
  RunResult r1 = run_execution(s.g, s.lab, *t1, 0, 0);
  EXPECT_EQ(r1.cost.vol, 6u);
  EXPECT_LE(r1.cost.vol, static_cast<std::size_t>(std::pow(5, 1)) + 1);
  for (std::size_t n = 1; n <= 8; ++n) {
    Instance p = path(n);
    for (Vertex v = 0; v < n; ++v) {
      RunResult r = run_execution(p.g, p.lab, *t2, v, 0);
      std::size_t lo = v >= 2 ? v - 2 : 0, hi = std::min<std::size_t>(n - 1, v + 2);
      EXPECT_EQ(r.cost.vol, hi - lo + 1);  // enumerated ball size on a path
      EXPECT_LE(r.cost.vol, 5u);
      EXPECT_LE(r.cost.dist, 2);
    }
  }
}

TEST(Properties, CostRelationConnectivityAndRandomness) {
  std::mt19937_64 rng(13);
  Lambda w(random_walk);
  for (int t = 0; t < 20; ++t) {
    Instance inst = t % 2 ? lclvol::testing::random_junk_instance(50, 5, rng) : cycle(30);
    std::map<std::uint64_t, std::uint64_t> first_block;
    for (Vertex v = 0; v < inst.g.n(); ++v) {
      RunResult r = run_execution(inst.g, inst.lab, w, v, 1234);
      EXPECT_TRUE(cost_relation_holds(r.cost, inst.g.max_degree()));
      EXPECT_EQ(r.cost.dist, dist_of(inst.g, r.exec));
      std::uint64_t sum = 0;
      for (auto b : r.exec.bits_used) sum += b;
      EXPECT_EQ(sum, r.cost.random_bits);
      // Induced subgraph on the visited set is connected.
      std::set<Vertex> vis(r.exec.visited.begin(), r.exec.visited.end());
      std::set<Vertex> reach{r.exec.start};
      std::vector<Vertex> st{r.exec.start};
      while (!st.empty()) {
        Vertex x = st.back();
        st.pop_back();
        for (Port p : inst.g.ports(x)) {
          Vertex y = inst.g.neighbor(x, p);
          if (vis.count(y) && reach.insert(y).second) st.push_back(y);
        }
      }
      EXPECT_EQ(reach.size(), vis.size());
      // The first block seen at any vertex never changes across executions.
      for (Vertex x : r.exec.visited) {
        std::uint64_t b = stream_block(1234, inst.g.id(x), 0);
        auto [it, fresh] = first_block.emplace(inst.g.id(x), b);
        EXPECT_EQ(it->second, b);
      }
    }
  }
}

TEST(Properties, ReplayTranscriptIdentical) {
  std::mt19937_64 rng(19);
  Instance inst = lclvol::testing::random_junk_instance(40, 5, rng);
  Lambda w(random_walk);
  for (Vertex v = 0; v < inst.g.n(); v += 5) {
    RunResult a = run_execution(inst.g, inst.lab, w, v, 5), b = run_execution(inst.g, inst.lab, w, v, 5);
    EXPECT_EQ(format_transcript(a.exec), format_transcript(b.exec));
  }
}

TEST(RandomStream, SequentialAccounting) {
  std::uint64_t cursor = 0;
  RandomStream s(1, 2, &cursor, false);
  EXPECT_EQ(s.next_block(), stream_block(1, 2, 0));
  EXPECT_EQ(cursor, 64u);
  bool b = s.next_bit();
  EXPECT_EQ(b, static_cast<bool>(stream_block(1, 2, 1) & 1u));
  EXPECT_EQ(cursor, 65u);
  EXPECT_EQ(s.next_block(), stream_block(1, 2, 2));
  std::uint64_t c2 = 0;
  RandomStream d(1, 2, &c2, true);
  EXPECT_THROW(d.next_bit(), NondeterminismError);
}

TEST(Explorer, MemoizesQueries) {
  Instance g = path(4);
  Lambda a([](Probe& p) {
    Explorer ex(p);
    ex.nbr(0, 1);
    ex.nbr(0, 1);
    ex.nbr(0, 2);
    EXPECT_EQ(ex.nbr(0, 3), Explorer::none);
    EXPECT_EQ(ex.nbr(0, kNoPort), Explorer::none);
    return sym_out(Sym::R);
  });
  RunResult r = run_execution(g.g, g.lab, a, 1, 0);
  EXPECT_EQ(r.cost.probes, 2u);
}
