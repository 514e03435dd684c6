#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lclvol/graph.hpp"

namespace lclvol {

enum class Problem : std::uint8_t { LeafColoring, BalancedTree, Hthc, Hybrid, Hh };

const char* problem_name(Problem p);
std::optional<Problem> parse_problem(const std::string& s);

struct ProblemParams {
  int k = 1;
  int l = 1;  // HH only: the hierarchical side's depth
};

struct Violation {
  Vertex v = kNoVertex;
  std::string condition;
  std::string reason;
};

struct Verdict {
  bool valid = true;
  std::vector<Violation> violations;
  void add(Vertex v, std::string cond, std::string reason) {
    valid = false;
    violations.push_back({v, std::move(cond), std::move(reason)});
  }
};

// `vertex_id condition_id reason` per line.
std::string serialize_verdict(const PortedGraph& g, const Verdict& v);

struct CompatReport {
  bool compatible = true;
  std::vector<std::string> failed;  // condition names
};

// Nav-based check at one vertex; the labeling is normalized first.
CompatReport check_compatible(const PortedGraph& g, const Labeling& lab, Vertex v);

// Array-based failure masks (bits as rules::CompatBit) over a normalized labeling.
std::vector<std::uint8_t> compatibility_masks(const PortedGraph& g, const Labeling& lab);

// Global validators. Each normalizes the labeling before checking.
Verdict validate_leaf_coloring(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out);
Verdict validate_balanced_tree(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out);
Verdict validate_hthc(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out, int k);
Verdict validate_hybrid(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out, int k);
Verdict validate_hh(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out, int k, int l);
Verdict validate(Problem p, const PortedGraph& g, const Labeling& lab, const OutputLabeling& out,
                 const ProblemParams& params);

int check_radius(Problem p, const ProblemParams& params);

// Radius-c check at v over a normalized labeling (callers pass normalize_labeling's result).
bool local_check(Problem p, const PortedGraph& g, const Labeling& normalized, const OutputLabeling& out, Vertex v,
                 const ProblemParams& params);

}  // namespace lclvol
