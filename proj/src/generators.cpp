#include "lclvol/generators.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_set>

#include "lclvol/mathutil.hpp"

namespace lclvol {

namespace {

class Assembler {
 public:
  Vertex node(Color c = Color::None) {
    lab_.push_back({});
    lab_.back().color = c;
    next_.push_back(1);
    return static_cast<Vertex>(lab_.size() - 1);
  }
  NodeLabel& at(Vertex v) { return lab_[v]; }
  std::size_t size() const { return lab_.size(); }

  void link(Vertex u, Port pu, Vertex v, Port pv) { edges_.push_back({u, v, pu, pv}); }
  Port fresh(Vertex v) { return static_cast<Port>(next_[v]++); }

  // u gets a child c on the next free port of each side.
  void child(Vertex u, Vertex c, bool left) {
    Port pu = fresh(u), pc = fresh(c);
    link(u, pu, c, pc);
    (left ? lab_[u].left_child : lab_[u].right_child) = pu;
    lab_[c].parent = pc;
  }

  Instance finish(int delta, std::mt19937_64* rng) {
    const std::size_t n = lab_.size();
    std::vector<std::uint64_t> ids(n);
    if (!rng) {
      std::iota(ids.begin(), ids.end(), 1);
    } else {
      // Distinct ids from [n²].
      const std::uint64_t hi = std::max<std::uint64_t>(static_cast<std::uint64_t>(n) * n, n);
      std::uniform_int_distribution<std::uint64_t> d(1, hi);
      std::unordered_set<std::uint64_t> used;
      used.reserve(n * 2);
      for (auto& id : ids) {
        do id = d(*rng);
        while (!used.insert(id).second);
      }
    }
    return {build_graph(n, edges_, ids, delta), std::move(lab_)};
  }

 private:
  Labeling lab_;
  std::vector<EdgeSpec> edges_;
  std::vector<int> next_;
};

Color coin(std::mt19937_64& rng) { return (rng() & 1) ? Color::R : Color::B; }

// Complete tree of the given depth in heap order; returns nodes by heap index (1-based slot 0 unused).
std::vector<Vertex> heap_tree(Assembler& as, int depth, Vertex parent, bool parent_rc) {
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<Vertex> h(n + 1);
  for (std::size_t i = 1; i <= n; ++i) h[i] = as.node(Color::R);
  if (parent != kNoVertex) as.child(parent, h[1], !parent_rc);
  for (std::size_t i = 1; 2 * i + 1 <= n; ++i) {
    as.child(h[i], h[2 * i], true);
    as.child(h[i], h[2 * i + 1], false);
  }
  return h;
}

// Lateral edges between consecutive heap slots at each depth (port 4 left,
// port 5 right), labeled on every depth but the last.
void lateral_edges(Assembler& as, const std::vector<Vertex>& h, int depth) {
  for (int d = 1; d <= depth; ++d) {
    const std::size_t lo = std::size_t{1} << d, hi = (std::size_t{1} << (d + 1)) - 1;
    for (std::size_t i = lo; i < hi; ++i) {
      as.link(h[i], 5, h[i + 1], 4);
      if (d < depth) {
        as.at(h[i]).right_neighbor = 5;
        as.at(h[i + 1]).left_neighbor = 4;
      }
    }
  }
}

// Leaf laterals: w_i -> u_{i+1} always, u_i <-> w_i unless the pair is cut.
void leaf_laterals(Assembler& as, const std::vector<Vertex>& h, int depth, const std::vector<char>& cut) {
  const std::size_t lo = std::size_t{1} << depth;
  const std::size_t pairs = lo / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    Vertex u = h[lo + 2 * i], w = h[lo + 2 * i + 1];
    if (!cut[i]) {
      as.at(u).right_neighbor = 5;
      as.at(w).left_neighbor = 4;
    }
    if (i + 1 < pairs) {
      as.at(w).right_neighbor = 5;
      as.at(h[lo + 2 * i + 2]).left_neighbor = 4;
    }
  }
}

std::pair<int, int> default_range(std::uint64_t n_target, int k) {
  int base = static_cast<int>(ceil_root(n_target, k));
  return {base, base + base / (4 * k)};
}

int draw(std::mt19937_64& rng, std::pair<int, int> r) {
  std::uniform_int_distribution<int> d(r.first, std::max(r.first, r.second));
  return d(rng);
}

struct HierBuild {
  Assembler& as;
  std::mt19937_64& rng;
  int k;
  std::vector<std::pair<int, int>> ranges;  // index ℓ-1
  bool write_levels;
  // Called for each level-2 node to hang its level-1 part (hybrid); null for plain hierarchy.
  std::function<void(Vertex)> level_one;

  // Backbone at level ℓ under parent (as its RC) or top-level if parent is none.
  std::vector<Vertex> backbone(int lvl, Vertex parent, bool cycle) {
    const int len = draw(rng, ranges[lvl - 1]);
    std::vector<Vertex> b;
    b.reserve(len);
    for (int i = 0; i < len; ++i) {
      Vertex v = as.node(coin(rng));
      if (write_levels) as.at(v).level = static_cast<std::uint8_t>(lvl);
      if (i == 0) {
        if (parent != kNoVertex) as.child(parent, v, false);
      } else {
        as.child(b.back(), v, true);
      }
      b.push_back(v);
    }
    if (cycle && len >= 3) as.child(b.back(), b.front(), true);
    for (Vertex v : b) {
      if (lvl > 2 || (lvl == 2 && !level_one)) backbone(lvl - 1, v, false);
      else if (lvl == 2) level_one(v);
    }
    return b;
  }
};

std::vector<std::pair<int, int>> level_ranges(int k, std::size_t n_target, const std::vector<std::pair<int, int>>& over,
                                              int offset) {
  std::vector<std::pair<int, int>> r(k, default_range(n_target, k));
  for (std::size_t i = 0; i < over.size() && i + offset < r.size(); ++i) r[i + offset] = over[i];
  for (auto& x : r)
    if (x.first < 1) throw GenError("backbone lengths must be positive");
  return r;
}

}  // namespace

Instance gen_complete_binary(int depth, Color leaf_color) {
  if (depth < 0 || depth > 24) throw GenError("depth must lie in [0, 24]");
  Assembler as;
  std::vector<Vertex> h = heap_tree(as, depth, kNoVertex, false);
  const std::size_t first_leaf = std::size_t{1} << depth;
  for (std::size_t i = first_leaf; i < h.size(); ++i) as.at(h[i]).color = leaf_color;
  return as.finish(3, nullptr);
}

Instance gen_disjointness_btl(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw GenError("bit vectors differ in length");
  const std::size_t n_bits = a.size();
  if (n_bits == 0 || (n_bits & (n_bits - 1))) throw GenError("length must be a power of two");
  const int depth = ceil_log2(n_bits) + 1;
  Assembler as;
  std::vector<Vertex> h = heap_tree(as, depth, kNoVertex, false);
  lateral_edges(as, h, depth);
  std::vector<char> cut(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i) cut[i] = a[i] && b[i];
  leaf_laterals(as, h, depth, cut);
  return as.finish(5, nullptr);
}

Instance gen_hier_balanced(int k, std::size_t n_target, std::uint64_t seed, const HierOptions& opts) {
  if (k < 1) throw GenError("k must be at least 1");
  if (n_target < (std::size_t{1} << std::min(k, 62))) throw GenError("n_target too small for k");
  std::mt19937_64 rng(seed);
  Assembler as;
  HierBuild hb{as, rng, k, level_ranges(k, n_target, opts.lengths, 0), opts.write_levels, nullptr};
  hb.backbone(k, kNoVertex, opts.cycles);
  return as.finish(3, &rng);
}

Instance gen_random_tree_labeling(std::size_t n, double p_defect, std::uint64_t seed) {
  if (n == 0) throw GenError("n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  // Odd sizes admit full binary trees.
  std::vector<std::size_t> sizes;
  if (n % 2 == 1) sizes = {n};
  else if (n >= 4) sizes = {n - 3, 3};
  else sizes = {1, 1};

  std::vector<std::array<Vertex, 3>> rel(n, {kNoVertex, kNoVertex, kNoVertex});  // parent, lc, rc
  Vertex next = 0;
  for (std::size_t size : sizes) {
    std::vector<Vertex> open{next++};
    for (std::size_t made = 1; made + 2 <= size; made += 2) {
      std::uniform_int_distribution<std::size_t> d(0, open.size() - 1);
      std::size_t i = d(rng);
      Vertex u = open[i];
      open[i] = open.back();
      open.pop_back();
      Vertex a = next++, b = next++;
      rel[u][1] = a;
      rel[u][2] = b;
      rel[a][0] = rel[b][0] = u;
      open.push_back(a);
      open.push_back(b);
    }
  }
  // Ports: a random permutation of the incident relations per node.
  std::vector<std::array<Port, 3>> port(n, {kNoPort, kNoPort, kNoPort});
  for (Vertex v = 0; v < n; ++v) {
    std::array<Port, 3> perm{1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    int used = 0;
    for (int r = 0; r < 3; ++r)
      if (rel[v][r] != kNoVertex) port[v][r] = perm[used++];
  }
  Assembler as;
  for (Vertex v = 0; v < n; ++v) as.node(coin(rng));
  for (Vertex v = 0; v < n; ++v)
    for (int r = 1; r <= 2; ++r) {
      Vertex c = rel[v][r];
      if (c == kNoVertex) continue;
      as.link(v, port[v][r], c, port[c][0]);
      (r == 1 ? as.at(v).left_child : as.at(v).right_child) = port[v][r];
      as.at(c).parent = port[c][0];
    }
  for (Vertex v = 0; v < n; ++v) {
    if (u01(rng) >= p_defect) continue;
    NodeLabel& l = as.at(v);
    if (rel[v][1] != kNoVertex) (rng() & 1 ? l.left_child : l.right_child) = kNoPort;
    else l.parent = kNoPort;
  }
  return as.finish(3, &rng);
}

namespace {

void build_hybrid(Assembler& as, std::mt19937_64& rng, int k, std::size_t n_target, const HybridOptions& opts) {
  const auto range = default_range(n_target, k);
  int depth = opts.btl_depth;
  if (depth < 0) depth = std::max(1, ceil_log2(static_cast<std::uint64_t>(range.first) + 1) - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto level_one = [&](Vertex parent) {
    std::vector<Vertex> h = heap_tree(as, depth, parent, true);
    for (std::size_t i = 1; i < h.size(); ++i) {
      as.at(h[i]).color = coin(rng);
      as.at(h[i]).level = 1;
    }
    lateral_edges(as, h, depth);
    const std::size_t pairs = std::size_t{1} << (depth - 1);
    std::vector<char> cut(pairs, 0);
    if (u01(rng) < opts.defect_prob) cut[rng() % pairs] = 1;
    leaf_laterals(as, h, depth, cut);
  };
  if (k == 1) {
    // The whole instance is one level-1 tree; hang it from nothing.
    int d = std::max(1, ceil_log2(n_target + 1) - 1);
    std::vector<Vertex> h = heap_tree(as, d, kNoVertex, false);
    for (std::size_t i = 1; i < h.size(); ++i) {
      as.at(h[i]).color = coin(rng);
      as.at(h[i]).level = 1;
    }
    lateral_edges(as, h, d);
    const std::size_t pairs = std::size_t{1} << (d - 1);
    std::vector<char> cut(pairs, 0);
    if (u01(rng) < opts.defect_prob) cut[rng() % pairs] = 1;
    leaf_laterals(as, h, d, cut);
    return;
  }
  HierBuild hb{as, rng, k, level_ranges(k, n_target, opts.lengths, 1), true, level_one};
  hb.backbone(k, kNoVertex, false);
}

}  // namespace

Instance gen_hybrid_instance(int k, std::size_t n_target, std::uint64_t seed, const HybridOptions& opts) {
  if (k < 1) throw GenError("k must be at least 1");
  if (n_target < (std::size_t{1} << std::min(k + 1, 62))) throw GenError("n_target too small for k");
  std::mt19937_64 rng(seed);
  Assembler as;
  build_hybrid(as, rng, k, n_target, opts);
  return as.finish(5, &rng);
}

Instance gen_hh_instance(int k, int l, std::size_t n_target, std::uint64_t seed) {
  if (k < 1 || l < k) throw GenError("HH needs 1 <= k <= l");
  const std::size_t half = std::max<std::size_t>(n_target / 2, std::size_t{1} << (l + 1));
  std::mt19937_64 rng(seed);
  Assembler as;
  HierBuild hb{as, rng, l, level_ranges(l, half, {}, 0), false, nullptr};
  std::vector<Vertex> top0 = hb.backbone(l, kNoVertex, false);
  const std::size_t split = as.size();
  for (Vertex v = 0; v < split; ++v) as.at(v).bit = 0;
  build_hybrid(as, rng, k, half, {});
  for (Vertex v = static_cast<Vertex>(split); v < as.size(); ++v) as.at(v).bit = 1;
  // Bridge: the bit-1 top points its parent across to the bit-0 top's leaf end.
  Vertex a = static_cast<Vertex>(split), b = top0.back();
  Port pa = as.fresh(a), pb = as.fresh(b);
  as.link(a, pa, b, pb);
  as.at(a).parent = pa;
  return as.finish(5, &rng);
}

namespace {

std::string get(const std::map<std::string, std::string>& m, const std::string& key, const std::string& dflt) {
  auto it = m.find(key);
  return it == m.end() ? dflt : it->second;
}

std::vector<int> bits(const std::string& s) {
  std::vector<int> v;
  for (char c : s) {
    if (c != '0' && c != '1') throw GenError("bit strings use 0 and 1 only");
    v.push_back(c - '0');
  }
  return v;
}

}  // namespace

Instance generate(const std::string& family, const std::map<std::string, std::string>& p) {
  auto num = [&](const std::string& key, const std::string& dflt) { return std::stoull(get(p, key, dflt)); };
  const std::uint64_t seed = num("seed", "1");
  if (family == "complete-binary") {
    std::string leaf = get(p, "leaf", "B");
    return gen_complete_binary(static_cast<int>(num("depth", "3")), leaf == "R" ? Color::R : Color::B);
  }
  if (family == "disjointness") return gen_disjointness_btl(bits(get(p, "a", "10")), bits(get(p, "b", "01")));
  if (family == "hier") {
    HierOptions o;
    o.cycles = get(p, "cycles", "0") == "1";
    return gen_hier_balanced(static_cast<int>(num("k", "2")), num("n", "100"), seed, o);
  }
  if (family == "random-tree")
    return gen_random_tree_labeling(num("n", "127"), std::stod(get(p, "p", "0.05")), seed);
  if (family == "hybrid") return gen_hybrid_instance(static_cast<int>(num("k", "2")), num("n", "200"), seed);
  if (family == "hh")
    return gen_hh_instance(static_cast<int>(num("k", "2")), static_cast<int>(num("l", "3")), num("n", "400"), seed);
  throw GenError("unknown family '" + family + "'");
}

}  // namespace lclvol
