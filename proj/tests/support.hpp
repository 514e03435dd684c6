#pragma once

#include <random>
#include <vector>

#include "lclvol/graph.hpp"

namespace lclvol::testing {

// Hand-built instances: ids default to 1..n.
struct Builder {
  std::size_t n = 0;
  int delta = 5;
  std::vector<EdgeSpec> edges;
  Labeling lab;

  explicit Builder(std::size_t count, int max_degree = 5) : n(count), delta(max_degree), lab(count) {}
  Builder& edge(Vertex u, Port pu, Vertex v, Port pv) {
    edges.push_back({u, v, pu, pv});
    return *this;
  }
  NodeLabel& at(Vertex v) { return lab[v]; }
  Instance build() const {
    std::vector<std::uint64_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i + 1;
    return {build_graph(n, edges, ids, delta), lab};
  }
};

// Parent u, child c; child's port 1 is the parent, u uses port pu.
inline void tree_edge(Builder& b, Vertex u, Port pu, Vertex c, bool left, Port pc = 1) {
  b.edge(u, pu, c, pc);
  (left ? b.at(u).left_child : b.at(u).right_child) = pu;
  b.at(c).parent = pc;
}

// Random simple graph of max degree delta with arbitrary (junk) labels.
inline Instance random_junk_instance(std::size_t n, int delta, std::mt19937_64& rng, double edge_factor = 1.2) {
  std::vector<std::vector<Port>> free_ports(n);
  for (auto& f : free_ports)
    for (int p = 1; p <= delta; ++p) f.push_back(static_cast<Port>(p));
  std::vector<EdgeSpec> edges;
  std::vector<std::vector<Vertex>> nb(n);
  std::uniform_int_distribution<std::size_t> pick(0, n ? n - 1 : 0);
  std::size_t target = static_cast<std::size_t>(edge_factor * static_cast<double>(n));
  for (std::size_t tries = 0; tries < target * 4 && edges.size() < target && n > 1; ++tries) {
    Vertex u = static_cast<Vertex>(pick(rng)), v = static_cast<Vertex>(pick(rng));
    if (u == v || free_ports[u].empty() || free_ports[v].empty()) continue;
    bool dup = false;
    for (Vertex w : nb[u]) dup |= w == v;
    if (dup) continue;
    auto take = [&](Vertex x) {
      std::uniform_int_distribution<std::size_t> d(0, free_ports[x].size() - 1);
      std::size_t i = d(rng);
      Port p = free_ports[x][i];
      free_ports[x].erase(free_ports[x].begin() + static_cast<long>(i));
      return p;
    };
    Port pu = take(u), pv = take(v);
    edges.push_back({u, v, pu, pv});
    nb[u].push_back(v);
    nb[v].push_back(u);
  }
  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i * 7 + 3;
  Labeling lab(n);
  std::uniform_int_distribution<int> port(0, delta);
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto& l : lab) {
    l.parent = static_cast<Port>(port(rng));
    l.left_child = static_cast<Port>(port(rng));
    l.right_child = static_cast<Port>(port(rng));
    l.left_neighbor = static_cast<Port>(port(rng));
    l.right_neighbor = static_cast<Port>(port(rng));
    l.color = coin(rng) ? Color::R : Color::B;
  }
  return {build_graph(n, edges, ids, delta), std::move(lab)};
}

// Mixed alphabet: colors, D, X and pairs with any port in [0, delta].
inline Output random_any_output(std::mt19937_64& rng, int delta) {
  switch (rng() % 6) {
    case 0: return Output::color(Color::R);
    case 1: return Output::color(Color::B);
    case 2: return sym_out(Sym::D);
    case 3: return sym_out(Sym::X);
    default: return Output::pair(rng() & 1, static_cast<Port>(rng() % (delta + 1)));
  }
}

}  // namespace lclvol::testing
