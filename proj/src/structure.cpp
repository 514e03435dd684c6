#include "lclvol/structure.hpp"

#include <deque>

namespace lclvol {

BallNav::BallNav(const PortedGraph& g, const Labeling& lab, Vertex center, int radius)
    : g_(g), lab_(lab), dist_(g.n(), -1) {
  std::deque<Vertex> q{center};
  dist_[center] = 0;
  members_.push_back(center);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop_front();
    if (dist_[v] == radius) continue;
    for (Port p : g.ports(v)) {
      Vertex w = g.neighbor(v, p);
      if (dist_[w] < 0) {
        dist_[w] = dist_[v] + 1;
        members_.push_back(w);
        q.push_back(w);
      }
    }
  }
}

namespace {

Port clamp_port(const PortedGraph& g, Vertex v, Port p) { return g.has_port(v, p) ? p : kNoPort; }

bool distinct_tree_ports(const NodeLabel& l) {
  Port a = l.parent, b = l.left_child, c = l.right_child;
  if (a != kNoPort && (a == b || a == c)) return false;
  if (b != kNoPort && b == c) return false;
  return true;
}

}  // namespace

bool is_well_formed(const PortedGraph& g, const Labeling& lab, Vertex v) {
  const NodeLabel& l = lab[v];
  for (Port p : {l.parent, l.left_child, l.right_child, l.left_neighbor, l.right_neighbor})
    if (p != kNoPort && !g.has_port(v, p)) return false;
  return distinct_tree_ports(l);
}

Labeling normalize_labeling(const PortedGraph& g, const Labeling& lab) {
  Labeling out = lab;
  std::vector<char> bad(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    NodeLabel& l = out[v];
    l.parent = clamp_port(g, v, l.parent);
    l.left_child = clamp_port(g, v, l.left_child);
    l.right_child = clamp_port(g, v, l.right_child);
    l.left_neighbor = clamp_port(g, v, l.left_neighbor);
    l.right_neighbor = clamp_port(g, v, l.right_neighbor);
    if (!distinct_tree_ports(l)) bad[v] = 1;
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    NodeLabel& l = out[v];
    if (bad[v]) {
      l.parent = l.left_child = l.right_child = kNoPort;
      continue;
    }
    for (Port* p : {&l.parent, &l.left_child, &l.right_child})
      if (*p != kNoPort && bad[g.neighbor(v, *p)]) *p = kNoPort;
  }
  return out;
}

NodeClass classify_node(const PortedGraph& g, const Labeling& lab, Vertex v) {
  GraphNav n{g, lab};
  return nav::classify(n, v);
}

int node_level(const PortedGraph& g, const Labeling& lab, Vertex v, int k) {
  GraphNav n{g, lab};
  return nav::level(n, v, k);
}

HierNodeInfo classify_hier_node(const PortedGraph& g, const Labeling& lab, Vertex v, int k) {
  GraphNav n{g, lab};
  Hier<GraphNav> h(n, k);
  return {h.is_root(v), h.is_leaf(v), h.level(v)};
}

namespace {

Vertex back_child(const PortedGraph& g, const Labeling& lab, Vertex v, Port p) {
  if (p == kNoPort) return kNoVertex;
  Vertex c = g.neighbor(v, p);
  if (c == kNoVertex) return kNoVertex;
  Port cp = lab[c].parent;
  return (cp != kNoPort && g.neighbor(c, cp) == v) ? c : kNoVertex;
}

}  // namespace

DerivedForest derive_tree_forest(const PortedGraph& g, const Labeling& lab) {
  const std::size_t n = g.n();
  DerivedForest f;
  f.in_forest.assign(n, 0);
  f.parent.assign(n, kNoVertex);
  f.children.assign(n, {kNoVertex, kNoVertex});
  f.root.assign(n, 0);
  f.leaf.assign(n, 0);
  f.cls.assign(n, NodeClass::Inconsistent);
  std::vector<char> internal(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    const NodeLabel& l = lab[v];
    internal[v] = l.left_child != kNoPort && l.right_child != kNoPort &&
                  back_child(g, lab, v, l.left_child) != kNoVertex &&
                  back_child(g, lab, v, l.right_child) != kNoVertex;
  }
  for (Vertex v = 0; v < n; ++v) {
    const NodeLabel& l = lab[v];
    if (internal[v]) {
      f.cls[v] = NodeClass::Internal;
    } else if (l.left_child == kNoPort && l.right_child == kNoPort && l.parent != kNoPort) {
      Vertex p = g.neighbor(v, l.parent);
      if (p != kNoVertex && internal[p]) f.cls[v] = NodeClass::Leaf;
    }
    f.in_forest[v] = f.cls[v] != NodeClass::Inconsistent;
    f.leaf[v] = f.cls[v] == NodeClass::Leaf;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!internal[v]) continue;
    const Port ports[2] = {lab[v].left_child, lab[v].right_child};
    for (int s = 0; s < 2; ++s) {
      Vertex c = g.neighbor(v, ports[s]);
      if (f.in_forest[c]) {
        f.children[v][s] = c;
        f.parent[c] = v;
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) f.root[v] = f.in_forest[v] && f.parent[v] == kNoVertex;
  return f;
}

DerivedForest derive_hier_forest(const PortedGraph& g, const Labeling& lab, int k, LevelSource src) {
  const std::size_t n = g.n();
  DerivedForest f;
  f.in_forest.assign(n, 0);
  f.parent.assign(n, kNoVertex);
  f.children.assign(n, {kNoVertex, kNoVertex});
  f.root.assign(n, 0);
  f.leaf.assign(n, 0);
  f.level.assign(n, k + 1);

  std::vector<Vertex> rc(n), lc(n);
  for (Vertex v = 0; v < n; ++v) {
    rc[v] = back_child(g, lab, v, lab[v].right_child);
    lc[v] = back_child(g, lab, v, lab[v].left_child);
  }
  if (src == LevelSource::Input) {
    for (Vertex v = 0; v < n; ++v) f.level[v] = nav::input_level(lab[v], k);
  } else {
    // Uncapped chain length with memo; nodes on or above an RC cycle get "infinite".
    constexpr int kInf = 1 << 30;
    std::vector<int> raw(n, 0);  // 0 = unknown, -1 = on current walk
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
      if (raw[s] != 0) continue;
      Vertex cur = s;
      while (cur != kNoVertex && raw[cur] == 0) {
        raw[cur] = -1;
        stack.push_back(cur);
        cur = rc[cur];
      }
      int base = cur == kNoVertex ? 0 : (raw[cur] == -1 ? kInf : raw[cur]);
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        base = base >= kInf ? kInf : base + 1;
        raw[v] = base;
      }
    }
    for (Vertex v = 0; v < n; ++v) f.level[v] = raw[v] > k ? k + 1 : raw[v];
  }
  for (Vertex v = 0; v < n; ++v) {
    int lv = f.level[v];
    if (lv > k) continue;
    f.in_forest[v] = 1;
    if (lc[v] != kNoVertex && f.level[lc[v]] == lv) f.children[v][0] = lc[v];
    if (rc[v] != kNoVertex && f.level[rc[v]] + 1 == lv) f.children[v][1] = rc[v];
    for (Vertex c : f.children[v])
      if (c != kNoVertex) f.parent[c] = v;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!f.in_forest[v]) continue;
    Vertex p = f.parent[v];
    f.root[v] = p == kNoVertex || f.children[p][1] == v;
    f.leaf[v] = f.children[v][0] == kNoVertex;
  }
  return f;
}

std::vector<Backbone> backbones(const DerivedForest& f) {
  const std::size_t n = f.in_forest.size();
  std::vector<char> seen(n, 0);
  std::vector<Backbone> out;
  for (Vertex s = 0; s < n; ++s) {
    if (!f.in_forest[s] || seen[s]) continue;
    // Climb to the top of the backbone, detecting a cycle through s.
    Vertex top = s;
    bool cycle = false;
    while (true) {
      Vertex p = f.parent[top];
      if (p == kNoVertex || f.children[p][0] != top) break;
      top = p;
      if (top == s) {
        cycle = true;
        break;
      }
    }
    Backbone b;
    b.level = f.level.empty() ? 0 : f.level[s];
    b.cycle = cycle;
    Vertex cur = top;
    do {
      seen[cur] = 1;
      b.nodes.push_back(cur);
      cur = f.children[cur][0];
    } while (cur != kNoVertex && cur != top);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace lclvol
