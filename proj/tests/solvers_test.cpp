#include <gtest/gtest.h>

#include <map>

#include "lclvol/generators.hpp"
#include "lclvol/mathutil.hpp"
#include "lclvol/solvers.hpp"
#include "lclvol/text_io.hpp"
#include "support.hpp"

using namespace lclvol;
using lclvol::testing::Builder;
using lclvol::testing::tree_edge;

namespace {

const Output R = Output::color(Color::R);
const Output B = Output::color(Color::B);

SolveReport solve(const Instance& inst, const std::string& name, SolverConfig cfg = {}) {
  return solve_and_validate(inst, name, cfg);
}

void expect_valid(const SolveReport& r, const Instance& inst, const std::string& what) {
  EXPECT_TRUE(r.verdict.valid) << what << "\n" << serialize_verdict(inst.g, r.verdict).substr(0, 2000);
  EXPECT_EQ(r.run.summary.relation_violations, 0u) << what;
}

}  // namespace

TEST(LeafColorDist, LeafEchoesImmediately) {
  Instance inst = gen_complete_binary(3, Color::B);
  RunResult r = run_execution(inst.g, inst.lab, *leafcolor_dist_solver(), 7, 1, {0, true, true});
  EXPECT_EQ(r.output, B);
  EXPECT_LE(r.cost.vol, 3u);
}

TEST(LeafColorDist, AllLeavesRGivesAllR) {
  Instance inst = gen_complete_binary(5, Color::R);
  SolveReport r = solve(inst, "leafcolor-dist");
  expect_valid(r, inst, "complete");
  for (Output o : r.run.out) EXPECT_EQ(o, R);
}

TEST(LeafColorDist, TieBreaksLeftMost) {
  for (Color left : {Color::R, Color::B}) {
    Builder b(3, 3);
    tree_edge(b, 0, 1, 1, true);
    tree_edge(b, 0, 2, 2, false);
    b.at(1).color = left;
    b.at(2).color = left == Color::R ? Color::B : Color::R;
    Instance inst = b.build();
    RunResult r = run_execution(inst.g, inst.lab, *leafcolor_dist_solver(), 0, 1);
    EXPECT_EQ(r.output, Output::color(left));
  }
}

// Oracle: enumerate all root-to-node LC/RC words to minimal depth.
TEST(LeafColorDist, MatchesPathEnumerationOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance inst = gen_random_tree_labeling(61, 0.0, seed);
    SolveReport r = solve(inst, "leafcolor-dist");
    expect_valid(r, inst, "random tree");
    const Labeling& lab = inst.lab;
    for (Vertex v = 0; v < inst.g.n(); ++v) {
      std::function<std::optional<std::pair<std::string, Color>>(Vertex, int)> best =
          [&](Vertex x, int budget) -> std::optional<std::pair<std::string, Color>> {
        if (classify_node(inst.g, lab, x) != NodeClass::Internal) return std::make_pair(std::string(), lab[x].color);
        if (budget == 0) return std::nullopt;
        auto a = best(inst.g.neighbor(x, lab[x].left_child), budget - 1);
        auto b = best(inst.g.neighbor(x, lab[x].right_child), budget - 1);
        if (a) a->first = "0" + a->first;
        if (b) b->first = "1" + b->first;
        if (!a) return b;
        if (!b) return a;
        if (a->first.size() != b->first.size()) return a->first.size() < b->first.size() ? a : b;
        return a;
      };
      std::optional<std::pair<std::string, Color>> got;
      for (int d = 0; d <= 64 && !got; ++d) got = best(v, d);
      ASSERT_TRUE(got);
      EXPECT_EQ(r.run.out[v], Output::color(got->second));
    }
  }
}

TEST(LeafColorDist, DistanceCeiling) {
  for (std::size_t n : {31u, 255u, 1001u}) {
    Instance inst = gen_random_tree_labeling(n, 0.05, n);
    SolveReport r = solve(inst, "leafcolor-dist");
    expect_valid(r, inst, "defects");
    EXPECT_LE(r.run.summary.max_dist, ceil_log2(n) + 2);
  }
}

TEST(RwToLeaf, StartAtLeaf) {
  Instance inst = gen_complete_binary(2, Color::B);
  RunResult r = run_execution(inst.g, inst.lab, *rw_to_leaf_solver({}), 4, 9);
  EXPECT_EQ(r.output, B);
  EXPECT_EQ(r.cost.random_bits, 0u);
}

// Replay oracle: recompute each walk directly from stream bits.
TEST(RwToLeaf, WalksFollowStreamBits) {
  Instance inst = gen_complete_binary(2, Color::R);
  for (int i = 3; i < 7; ++i) inst.lab[i].color = i % 2 ? Color::B : Color::R;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SolveReport r = solve(inst, "rw-to-leaf", {1, 1, 32, 3, seed});
    expect_valid(r, inst, "seed");
    for (Vertex v = 0; v < 7; ++v) {
      Vertex x = v;
      while (x < 3) {
        bool bit = stream_block(seed, inst.g.id(x), 1) & 1;
        x = inst.g.neighbor(x, bit ? inst.lab[x].right_child : inst.lab[x].left_child);
      }
      EXPECT_EQ(r.run.out[v], Output::color(inst.lab[x].color));
    }
    // Executions whose walks merge agree.
    for (Vertex v = 1; v < 3; ++v) {
      bool bit = stream_block(seed, inst.g.id(0), 1) & 1;
      if (inst.g.neighbor(0, bit ? 2 : 1) == v) EXPECT_EQ(r.run.out[0], r.run.out[v]);
    }
  }
}

// Internal 4-cycle 0→1→2→3→0 along LC, each with an RC leaf.
TEST(RwToLeaf, CycleRevisitTakesOppositeChild) {
  Builder b(8, 3);
  for (Vertex i = 0; i < 4; ++i) {
    b.edge(i, 1, (i + 1) % 4, 3);
    b.at(i).left_child = 1;
    b.at((i + 1) % 4).parent = 3;
    tree_edge(b, i, 2, 4 + i, false);
    b.at(4 + i).color = i % 2 ? Color::B : Color::R;
  }
  Instance inst = b.build();
  for (Vertex i = 0; i < 4; ++i) ASSERT_EQ(classify_node(inst.g, inst.lab, i), NodeClass::Internal);
  int revisits = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    SolveReport r = solve(inst, "rw-to-leaf", {1, 1, 32, 3, seed});
    expect_valid(r, inst, "cycle");
    EXPECT_EQ(r.run.summary.truncations, 0u);
    // Step-by-step simulation.
    for (Vertex v = 0; v < 4; ++v) {
      Vertex x = v;
      bool back = false;
      for (int steps = 0; x < 4; ++steps) {
        bool right = stream_block(seed, inst.g.id(x), 1) & 1;
        if (x == v && steps > 0) {
          right = !right;
          back = true;
        }
        x = inst.g.neighbor(x, right ? 2 : 1);
      }
      revisits += back;
      EXPECT_EQ(r.run.out[v], Output::color(inst.lab[x].color));
    }
  }
  EXPECT_GT(revisits, 0);
}

// Caterpillar: internal chain 0→…→4 along LC, leaves on RC and at the end.
TEST(RwToLeaf, TruncationOutputsR) {
  Builder b(11, 3);
  for (Vertex i = 0; i < 5; ++i) {
    tree_edge(b, i, 2, i == 4 ? 10 : i + 1, true);
    tree_edge(b, i, 3, 5 + i, false);
  }
  for (auto& l : b.lab) l.color = Color::B;
  Instance inst = b.build();
  ASSERT_EQ(classify_node(inst.g, inst.lab, 4), NodeClass::Internal);
  int truncated = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    // tau = 1 allows ⌈log₂ 11⌉ = 4 steps; four left turns from 0 end at internal node 4.
    RunResult r = run_execution(inst.g, inst.lab, *rw_to_leaf_solver({1, 1, 1, 3, 1}), 0, seed);
    bool all_left = true;
    for (Vertex x = 0; x < 4; ++x) all_left &= !(stream_block(seed, inst.g.id(x), 1) & 1);
    EXPECT_EQ(r.cost.truncated, all_left);
    EXPECT_EQ(r.output, all_left ? R : B);
    truncated += r.cost.truncated;
  }
  EXPECT_GT(truncated, 0);
}

TEST(RwToLeaf, ValidOnRandomTrees) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = gen_random_tree_labeling(501, 0.02, seed);
    SolveReport r = solve(inst, "rw-to-leaf", {1, 1, 32, 3, seed});
    expect_valid(r, inst, "random");
  }
}

TEST(BtlDist, CompatibleLeafAndRoot) {
  Instance inst = gen_disjointness_btl({0, 0, 0, 0}, {0, 0, 0, 0});
  SolveReport r = solve(inst, "btl-dist");
  expect_valid(r, inst, "balanced");
  for (Vertex v = 0; v < inst.g.n(); ++v) EXPECT_EQ(r.run.out[v], Output::pair(true, inst.lab[v].parent));
  EXPECT_EQ(r.run.out[0], Output::pair(true, kNoPort));
}

TEST(BtlDist, DefectPointsRootTowardIt) {
  for (int i = 0; i < 4; ++i) {
    std::vector<int> a(4, 0), b(4, 0);
    a[i] = b[i] = 1;
    Instance inst = gen_disjointness_btl(a, b);
    SolveReport r = solve(inst, "btl-dist");
    expect_valid(r, inst, "defect");
    EXPECT_EQ(r.run.out[0], Output::pair(false, i < 2 ? 1 : 2));
  }
}

TEST(BtlDist, ValidAndWithinCeilingOnCorpus) {
  std::vector<Instance> all;
  for (int bits : {1, 4, 16, 64}) {
    std::vector<int> a(bits), b(bits);
    for (int i = 0; i < bits; ++i) a[i] = i % 3 == 0, b[i] = i % 5 == 0;
    all.push_back(gen_disjointness_btl(a, b));
  }
  for (std::uint64_t s = 1; s <= 5; ++s) all.push_back(gen_random_tree_labeling(301, 0.05, s));
  for (std::uint64_t s = 1; s <= 3; ++s) {
    std::mt19937_64 rng(s);
    all.push_back(lclvol::testing::random_junk_instance(200, 5, rng, 1.5));
  }
  for (const Instance& inst : all) {
    SolveReport r = solve(inst, "btl-dist");
    expect_valid(r, inst, "corpus");
    EXPECT_LE(r.run.summary.max_dist, ceil_log2(inst.g.n()) + 3);
  }
}

TEST(RecursiveHthc, ShallowPathUsesLeafColor) {
  HierOptions o;
  o.lengths = {{3, 3}};
  Instance inst = gen_hier_balanced(1, 2, 1, o);
  SolveReport r = solve(inst, "recursive-hthc", {1});
  expect_valid(r, inst, "shallow");
  Vertex leaf = 2;
  for (Output x : r.run.out) EXPECT_EQ(x, Output::color(inst.lab[leaf].color));
}

TEST(RecursiveHthc, DeepLevelOneDeclines) {
  // A level-1 path longer than 2⌈n^{1/2}⌉ (k = 2 read as all level 1 since RC = ⊥).
  HierOptions o;
  o.lengths = {{40, 40}};
  Instance inst = gen_hier_balanced(1, 2, 1, o);
  SolveReport r = solve(inst, "recursive-hthc", {2});
  expect_valid(r, inst, "deep");
  for (Output x : r.run.out) EXPECT_EQ(x.sym, Sym::D);
}

TEST(RecursiveHthc, DeepLightLevelTwoAvoidsD) {
  // Level-2 backbone of 30 over level-1 paths of 3: n = 120, 2⌈√120⌉ = 22.
  HierOptions o;
  o.lengths = {{3, 3}, {30, 30}};
  Instance inst = gen_hier_balanced(2, 4, 1, o);
  ASSERT_EQ(inst.g.n(), 120u);
  SolveReport r = solve(inst, "recursive-hthc", {2});
  expect_valid(r, inst, "light");
  for (Output x : r.run.out) EXPECT_NE(x.sym, Sym::D);
}

TEST(RecursiveHthc, ValidAndWithinCeiling) {
  for (int k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
      for (bool cycles : {false, true}) {
        HierOptions o;
        o.cycles = cycles;
        Instance inst = gen_hier_balanced(k, 2000, seed, o);
        SolveReport r = solve(inst, "recursive-hthc", {k});
        expect_valid(r, inst, "hier");
        EXPECT_LE(r.run.summary.max_dist, 4 * k * static_cast<int>(ceil_root(inst.g.n(), k)));
      }
}

// Heavy level-2 backbones (k = 3): a D at v forces D or X at LC(v).
TEST(RecursiveHthc, LeftChildAgreement) {
  int declines = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    HierOptions o;
    o.lengths = {{33, 100}, {73, 73}, {1, 1}};
    Instance inst = gen_hier_balanced(3, 8, seed, o);
    SolveReport r = solve(inst, "recursive-hthc", {3});
    expect_valid(r, inst, "heavy");
    DerivedForest f = derive_hier_forest(inst.g, inst.lab, 3);
    for (const Backbone& bb : backbones(f)) {
      if (bb.level != 2) continue;
      for (std::size_t i = 0; i + 1 < bb.nodes.size(); ++i)
        if (r.run.out[bb.nodes[i]].sym == Sym::D) {
          ++declines;
          Sym below = r.run.out[bb.nodes[i + 1]].sym;
          EXPECT_TRUE(below == Sym::D || below == Sym::X);
        }
    }
  }
  EXPECT_GT(declines, 0);
}

TEST(SampledHthc, MatchesRecursiveWhenAllShallow) {
  HierOptions o;
  o.lengths = {{4, 4}, {4, 4}};
  Instance inst = gen_hier_balanced(2, 4, 3, o);
  SolveReport a = solve(inst, "recursive-hthc", {2});
  SolveReport b = solve(inst, "sampled-hthc", {2, 1, 32, 3, 5});
  EXPECT_EQ(a.run.out, b.run.out);
}

TEST(SampledHthc, MatchesRecursiveWhenEveryoneIsWaypoint) {
  HierOptions o;
  o.lengths = {{3, 3}, {30, 30}};
  Instance inst = gen_hier_balanced(2, 4, 1, o);
  ASSERT_GE(waypoint_probability(inst.g.n(), 2, 3), 1.0);
  SolveReport a = solve(inst, "recursive-hthc", {2});
  SolveReport b = solve(inst, "sampled-hthc", {2, 1, 32, 3, 5});
  EXPECT_EQ(a.run.out, b.run.out);
}

TEST(SampledHthc, ValidOverSeeds) {
  Instance inst = gen_hier_balanced(2, 4000, 2);
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SolveReport r = solve(inst, "sampled-hthc", {2, 1, 32, 3, seed});
    failures += !r.verdict.valid;
  }
  EXPECT_LE(failures, 1);
}

TEST(Hybrid, DistSolverLevelsAboveOneOutputX) {
  Instance inst = gen_hybrid_instance(3, 600, 1);
  SolveReport r = solve(inst, "hybrid-dist", {3});
  expect_valid(r, inst, "hybrid-dist");
  for (Vertex v = 0; v < inst.g.n(); ++v)
    if (inst.lab[v].level >= 2) EXPECT_EQ(r.run.out[v].sym, Sym::X);
    else EXPECT_TRUE(r.run.out[v].is_pair());
}

TEST(Hybrid, VolSolverValid) {
  for (int k = 2; k <= 3; ++k)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      Instance inst = gen_hybrid_instance(k, 800, seed);
      SolveReport r = solve(inst, "hybrid-vol", {k, 1, 32, 3, seed});
      expect_valid(r, inst, "hybrid-vol");
    }
}

TEST(Hybrid, DeepLevelOneDeclinesUnanimously) {
  HybridOptions o;
  o.btl_depth = 6;  // 127-node level-1 trees, well past 2⌈n^{1/2}⌉
  o.lengths = {{3, 3}};
  o.defect_prob = 0;
  Instance inst = gen_hybrid_instance(2, 8, 1, o);
  SolveReport r = solve(inst, "hybrid-vol", {2});
  expect_valid(r, inst, "deep level 1");
  for (Vertex v = 0; v < inst.g.n(); ++v) {
    if (inst.lab[v].level == 1) EXPECT_EQ(r.run.out[v].sym, Sym::D);
    else EXPECT_NE(r.run.out[v].sym, Sym::X);
  }
}

TEST(Hh, DispatchValid) {
  for (bool sampled : {false, true}) {
    Instance inst = gen_hh_instance(2, 3, 1500, 4);
    SolveReport r = solve(inst, sampled ? "hh-vol" : "hh-dist", {2, 3, 32, 3, 1});
    expect_valid(r, inst, "hh");
  }
}

TEST(Catalog, NamesAndConfig) {
  for (const auto& s : solver_catalog()) EXPECT_NE(make_solver(s.name, {1, 1}), nullptr);
  EXPECT_THROW(make_solver("nope", {}), std::invalid_argument);
  EXPECT_THROW(make_solver("rw-to-leaf", {1, 1, 0, 3, 1}), std::invalid_argument);
  EXPECT_THROW(make_solver("sampled-hthc", {1, 1, 32, 2, 1}), std::invalid_argument);
  EXPECT_THROW(make_solver("hh-vol", {3, 2, 32, 3, 1}), std::invalid_argument);
}

TEST(Determinism, DeterministicSolversNeverReadRandomness) {
  Instance h = gen_hier_balanced(2, 500, 1);
  for (const char* s : {"recursive-hthc"}) {
    EXPECT_NO_THROW(solve(h, s, {2}));
  }
  Instance t = gen_random_tree_labeling(101, 0.1, 1);
  EXPECT_NO_THROW(solve(t, "leafcolor-dist"));
  EXPECT_NO_THROW(solve(t, "btl-dist"));
}
