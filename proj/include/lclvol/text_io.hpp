#pragma once

#include <string>

#include "lclvol/graph.hpp"

namespace lclvol {

// Header `n Δ`, then one line per vertex:
//   id deg port:neighbor_id,... P LC RC LN RN color level bit
// with `-` for ⊥ or absent fields.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

Instance read_instance_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

// One `id output` line per vertex, in vertex order.
std::string serialize_outputs(const PortedGraph& g, const OutputLabeling& out);
OutputLabeling parse_outputs(const PortedGraph& g, const std::string& text);

}  // namespace lclvol
