#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lclvol/types.hpp"

namespace lclvol {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = 0xffffffffu;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeSpec {
  Vertex u;
  Vertex v;
  Port port_u;
  Port port_v;
};

// Port-numbered graph. Ports live in [1, max_degree]; a vertex's assigned
// ports need not be contiguous (the lateral ports 4/5 of the balanced-tree
// family skip unused child ports).
class PortedGraph {
 public:
  struct Slot {
    Vertex to = kNoVertex;
    Port back = kNoPort;
  };

  PortedGraph() = default;

  std::size_t n() const { return ids_.size(); }
  int max_degree() const { return max_degree_; }
  std::uint64_t id(Vertex v) const { return ids_[v]; }
  int degree(Vertex v) const { return degree_[v]; }

  // kNoVertex when the port is ⊥, out of range or unassigned.
  Vertex neighbor(Vertex v, Port p) const {
    if (p == kNoPort || p > max_degree_) return kNoVertex;
    return slots_[static_cast<std::size_t>(v) * max_degree_ + (p - 1)].to;
  }
  Port back_port(Vertex v, Port p) const {
    return slots_[static_cast<std::size_t>(v) * max_degree_ + (p - 1)].back;
  }
  bool has_port(Vertex v, Port p) const { return neighbor(v, p) != kNoVertex; }
  // Assigned ports of v in increasing order.
  std::vector<Port> ports(Vertex v) const;
  Vertex index_of(std::uint64_t id) const;
  bool is_forest() const { return forest_; }
  std::size_t edge_count() const { return edges_; }

  friend PortedGraph build_graph(std::size_t, const std::vector<EdgeSpec>&,
                                 const std::vector<std::uint64_t>&, int);

 private:
  int max_degree_ = 0;
  std::vector<std::uint64_t> ids_;
  std::vector<std::uint8_t> degree_;
  std::vector<Slot> slots_;
  std::unordered_map<std::uint64_t, Vertex> index_;
  std::size_t edges_ = 0;
  bool forest_ = true;
};

// Rejects duplicate ports, duplicate ids, ports outside [1, max_degree],
// self loops and parallel edges with a GraphError naming the vertex id.
PortedGraph build_graph(std::size_t n, const std::vector<EdgeSpec>& edges,
                        const std::vector<std::uint64_t>& ids, int max_degree = 5);

struct Instance {
  PortedGraph g;
  Labeling lab;
};

}  // namespace lclvol
