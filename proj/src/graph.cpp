#include "lclvol/graph.hpp"

#include <numeric>

namespace lclvol {

std::vector<Port> PortedGraph::ports(Vertex v) const {
  std::vector<Port> out;
  for (int p = 1; p <= max_degree_; ++p)
    if (has_port(v, static_cast<Port>(p))) out.push_back(static_cast<Port>(p));
  return out;
}

Vertex PortedGraph::index_of(std::uint64_t id) const {
  auto it = index_.find(id);
  return it == index_.end() ? kNoVertex : it->second;
}

namespace {

struct Dsu {
  std::vector<Vertex> up;
  explicit Dsu(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  Vertex find(Vertex x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
};

std::string vname(const std::vector<std::uint64_t>& ids, Vertex v) {
  return "vertex id " + std::to_string(ids[v]);
}

}  // namespace

PortedGraph build_graph(std::size_t n, const std::vector<EdgeSpec>& edges,
                        const std::vector<std::uint64_t>& ids, int max_degree) {
  if (ids.size() != n) throw GraphError("id list has " + std::to_string(ids.size()) +
                                        " entries, expected " + std::to_string(n));
  if (max_degree < 0 || max_degree > kMaxDegree)
    throw GraphError("max degree " + std::to_string(max_degree) + " outside [0, " +
                     std::to_string(kMaxDegree) + "]");
  PortedGraph g;
  g.max_degree_ = max_degree;
  g.ids_ = ids;
  g.degree_.assign(n, 0);
  g.slots_.assign(n * static_cast<std::size_t>(max_degree), {});
  g.index_.reserve(n * 2);
  for (Vertex v = 0; v < n; ++v)
    if (!g.index_.emplace(ids[v], v).second) throw GraphError("duplicate id " + std::to_string(ids[v]));

  Dsu dsu(n);
  std::unordered_map<std::uint64_t, int> pairs;
  for (const EdgeSpec& e : edges) {
    if (e.u >= n || e.v >= n) throw GraphError("edge endpoint out of range");
    if (e.u == e.v) throw GraphError(vname(ids, e.u) + ": self loop");
    const Vertex ends[2] = {e.u, e.v};
    const Port ps[2] = {e.port_u, e.port_v};
    for (int s = 0; s < 2; ++s) {
      if (ps[s] < 1 || ps[s] > max_degree)
        throw GraphError(vname(ids, ends[s]) + ": port " + std::to_string(ps[s]) + " outside [1, " +
                         std::to_string(max_degree) + "]");
      auto& slot = g.slots_[static_cast<std::size_t>(ends[s]) * max_degree + (ps[s] - 1)];
      if (slot.to != kNoVertex)
        throw GraphError(vname(ids, ends[s]) + ": duplicate port " + std::to_string(ps[s]));
      slot.to = ends[1 - s];
      slot.back = ps[1 - s];
      if (++g.degree_[ends[s]] > max_degree)
        throw GraphError(vname(ids, ends[s]) + ": degree exceeds " + std::to_string(max_degree));
    }
    std::uint64_t key = (static_cast<std::uint64_t>(std::min(e.u, e.v)) << 32) | std::max(e.u, e.v);
    if (pairs[key]++ > 0) throw GraphError(vname(ids, e.u) + ": parallel edge");
    if (!dsu.unite(e.u, e.v)) g.forest_ = false;
  }
  g.edges_ = edges.size();
  return g;
}

}  // namespace lclvol
