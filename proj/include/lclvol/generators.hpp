#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lclvol/graph.hpp"

namespace lclvol {

struct GenError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Heap-ordered complete tree: ids 1..n, root LC/RC on ports 1/2, other nodes
// parent on port 1 and children on 2/3. Internals R, leaves leaf_color.
Instance gen_complete_binary(int depth, Color leaf_color);

// Complete tree of depth log₂(2N) with lateral edges on every depth (port 4
// left, port 5 right); the leaf pair under v_i is cut apart iff a_i = b_i = 1.
Instance gen_disjointness_btl(const std::vector<int>& a, const std::vector<int>& b);

struct HierOptions {
  bool cycles = false;  // the top backbone closes into a cycle
  // Backbone length range per level (index ℓ-1); missing entries use the default.
  std::vector<std::pair<int, int>> lengths;
  bool write_levels = false;
};

// One hierarchical tree whose level-ℓ backbones have length drawn from
// [N, N + ⌊N/(4k)⌋], N = ⌈n_target^{1/k}⌉, each member's RC heading a level ℓ-1 subtree.
Instance gen_hier_balanced(int k, std::size_t n_target, std::uint64_t seed, const HierOptions& opts = {});

// Random full binary trees with ports shuffled per node; with probability
// p_defect a node drops a pointer (child pointer for internals, parent for leaves).
Instance gen_random_tree_labeling(std::size_t n, double p_defect, std::uint64_t seed);

struct HybridOptions {
  double defect_prob = 0.3;  // chance a level-1 tree carries a cut sibling pair
  int btl_depth = -1;        // level-1 tree depth; -1 picks ≈ log₂ N
  std::vector<std::pair<int, int>> lengths;  // backbone lengths for levels 2..k (index ℓ-2)
};

// Levels ≥ 2 as in gen_hier_balanced, written into the input; level-2 RCs head
// complete level-1 BalancedTree instances.
Instance gen_hybrid_instance(int k, std::size_t n_target, std::uint64_t seed, const HybridOptions& opts = {});

// Two trees: bit 0 (hierarchical, depth l) and bit 1 (hybrid, k), joined by
// a single edge that the bit-1 top's parent pointer crosses.
Instance gen_hh_instance(int k, int l, std::size_t n_target, std::uint64_t seed);

// Named family dispatch for the CLI and the harness. Keys: depth, leaf (R|B),
// a, b (0/1 strings), k, l, n, seed, p (defect), cycles (0/1).
Instance generate(const std::string& family, const std::map<std::string, std::string>& params);

}  // namespace lclvol
