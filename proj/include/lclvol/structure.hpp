#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lclvol/graph.hpp"

namespace lclvol {

// Navigation over a labeled graph. Implemented for whole graphs (GraphNav),
// radius-bounded balls (BallNav), selector-bit restrictions (BitNav) and
// probe executions (Explorer in probe.hpp). nbr() returns Handle none for ⊥.
template <class N>
concept Nav = requires(N& nav, typename N::Handle h, Port p) {
  { nav.nbr(h, p) } -> std::same_as<typename N::Handle>;
  { nav.label(h) } -> std::convertible_to<const NodeLabel&>;
  { nav.id(h) } -> std::convertible_to<std::uint64_t>;
  { N::none } -> std::convertible_to<typename N::Handle>;
};

struct GraphNav {
  using Handle = Vertex;
  static constexpr Handle none = kNoVertex;
  const PortedGraph& g;
  const Labeling& lab;

  Handle nbr(Handle v, Port p) const { return g.neighbor(v, p); }
  const NodeLabel& label(Handle v) const { return lab[v]; }
  std::uint64_t id(Handle v) const { return g.id(v); }
};

// Sees only vertices within `radius` of `center`; edges leaving the ball read as ⊥.
class BallNav {
 public:
  using Handle = Vertex;
  static constexpr Handle none = kNoVertex;
  BallNav(const PortedGraph& g, const Labeling& lab, Vertex center, int radius);

  Handle nbr(Handle v, Port p) const {
    Vertex w = g_.neighbor(v, p);
    return (w != kNoVertex && inside(w)) ? w : none;
  }
  const NodeLabel& label(Handle v) const { return lab_[v]; }
  std::uint64_t id(Handle v) const { return g_.id(v); }
  bool inside(Vertex v) const { return dist_[v] >= 0; }
  int dist(Vertex v) const { return dist_[v]; }
  const std::vector<Vertex>& members() const { return members_; }

 private:
  const PortedGraph& g_;
  const Labeling& lab_;
  std::vector<int> dist_;
  std::vector<Vertex> members_;
};

// Drops every edge whose endpoints carry different selector bits (absent = 0).
template <Nav N>
struct BitNav {
  using Handle = typename N::Handle;
  static constexpr Handle none = N::none;
  N& base;

  static int bit_of(const NodeLabel& l) { return l.bit > 0 ? 1 : 0; }
  Handle nbr(Handle v, Port p) {
    Handle w = base.nbr(v, p);
    if (w == none) return none;
    return bit_of(base.label(w)) == bit_of(base.label(v)) ? w : none;
  }
  decltype(auto) label(Handle v) { return base.label(v); }
  std::uint64_t id(Handle v) { return base.id(v); }
};

namespace nav {

template <Nav N>
typename N::Handle follow(N& n, typename N::Handle v, Port p) {
  if (p == kNoPort) return N::none;
  return n.nbr(v, p);
}

// c's parent pointer leads back to v.
template <Nav N>
bool points_back(N& n, typename N::Handle v, typename N::Handle c) {
  if (c == N::none) return false;
  return follow(n, c, NodeLabel(n.label(c)).parent) == v;
}

template <Nav N>
typename N::Handle mutual_child(N& n, typename N::Handle v, Port p) {
  auto c = follow(n, v, p);
  return points_back(n, v, c) ? c : N::none;
}

template <Nav N>
bool is_internal(N& n, typename N::Handle v) {
  NodeLabel l = n.label(v);
  if (l.left_child == kNoPort || l.right_child == kNoPort) return false;
  return mutual_child(n, v, l.left_child) != N::none && mutual_child(n, v, l.right_child) != N::none;
}

template <Nav N>
NodeClass classify(N& n, typename N::Handle v) {
  if (is_internal(n, v)) return NodeClass::Internal;
  NodeLabel l = n.label(v);
  if (l.left_child == kNoPort && l.right_child == kNoPort) {
    auto p = follow(n, v, l.parent);
    if (p != N::none && is_internal(n, p)) return NodeClass::Leaf;
  }
  return NodeClass::Inconsistent;
}

template <Nav N>
bool is_consistent(N& n, typename N::Handle v) {
  return classify(n, v) != NodeClass::Inconsistent;
}

// Level along mutual right-child edges, capped at k+1 (RC cycles land on k+1).
template <Nav N>
int level(N& n, typename N::Handle v, int k) {
  auto cur = v;
  for (int steps = 0; steps <= k; ++steps) {
    auto rc = mutual_child(n, cur, NodeLabel(n.label(cur)).right_child);
    if (rc == N::none) return steps + 1;
    cur = rc;
  }
  return k + 1;
}

// Input level clamped to [1, k+1]; absent or out-of-range reads as k+1.
inline int input_level(const NodeLabel& l, int k) {
  return (l.level == 0 || l.level > k + 1) ? k + 1 : l.level;
}

}  // namespace nav

enum class LevelSource : std::uint8_t { Computed, Input };

// Hierarchical-forest view: pointers count only when the edge is in G_k.
template <Nav N>
class Hier {
 public:
  using Handle = typename N::Handle;
  Hier(N& n, int k, LevelSource src = LevelSource::Computed) : n_(n), k_(k), src_(src) {}

  N& nav() { return n_; }
  int k() const { return k_; }

  int level(Handle v) {
    return src_ == LevelSource::Computed ? nav::level(n_, v, k_) : nav::input_level(n_.label(v), k_);
  }
  Handle lc(Handle v) {
    int lv = level(v);
    if (lv > k_) return N::none;
    Handle c = nav::mutual_child(n_, v, NodeLabel(n_.label(v)).left_child);
    return (c != N::none && level(c) == lv) ? c : N::none;
  }
  Handle rc(Handle v) {
    int lv = level(v);
    if (lv > k_) return N::none;
    Handle c = nav::mutual_child(n_, v, NodeLabel(n_.label(v)).right_child);
    return (c != N::none && level(c) + 1 == lv) ? c : N::none;
  }
  Handle parent(Handle v) {
    Handle p = nav::follow(n_, v, NodeLabel(n_.label(v)).parent);
    if (p == N::none) return N::none;
    return (lc(p) == v || rc(p) == v) ? p : N::none;
  }
  // Parent within the same backbone.
  Handle up(Handle v) {
    Handle p = parent(v);
    return (p != N::none && lc(p) == v) ? p : N::none;
  }
  bool is_root(Handle v) {
    Handle p = parent(v);
    return p == N::none || rc(p) == v;
  }
  bool is_leaf(Handle v) { return lc(v) == N::none; }

 private:
  N& n_;
  int k_;
  LevelSource src_;
};

struct DerivedForest {
  std::vector<char> in_forest;
  std::vector<Vertex> parent;
  std::vector<std::array<Vertex, 2>> children;  // {left, right}; kNoVertex if absent
  std::vector<int> level;                        // hierarchical variant only
  std::vector<char> root;
  std::vector<char> leaf;
  std::vector<NodeClass> cls;                     // tree variant only
};

struct HierNodeInfo {
  bool root;
  bool leaf;
  int level;
};

// Out-of-range ports become ⊥; non-well-formed nodes drop P/LC/RC; pointers
// to non-well-formed neighbors become ⊥.
Labeling normalize_labeling(const PortedGraph& g, const Labeling& lab);
bool is_well_formed(const PortedGraph& g, const Labeling& lab, Vertex v);

NodeClass classify_node(const PortedGraph& g, const Labeling& lab, Vertex v);
int node_level(const PortedGraph& g, const Labeling& lab, Vertex v, int k);
HierNodeInfo classify_hier_node(const PortedGraph& g, const Labeling& lab, Vertex v, int k);

DerivedForest derive_tree_forest(const PortedGraph& g, const Labeling& lab);
DerivedForest derive_hier_forest(const PortedGraph& g, const Labeling& lab, int k,
                                 LevelSource src = LevelSource::Computed);

struct Backbone {
  int level = 0;
  bool cycle = false;
  std::vector<Vertex> nodes;  // top to bottom along LC; for cycles starts anywhere
};

// Same-level components of a hierarchical forest (levels ≤ k only).
std::vector<Backbone> backbones(const DerivedForest& f);

}  // namespace lclvol
