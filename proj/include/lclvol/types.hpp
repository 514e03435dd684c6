#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lclvol {

using Port = std::uint8_t;
inline constexpr Port kNoPort = 0;
inline constexpr int kMaxDegree = 8;

enum class Color : std::uint8_t { None, R, B };

char color_char(Color c);
std::optional<Color> parse_color(char c);

struct NodeLabel {
  Port parent = kNoPort;
  Port left_child = kNoPort;
  Port right_child = kNoPort;
  Port left_neighbor = kNoPort;
  Port right_neighbor = kNoPort;
  Color color = Color::None;
  std::uint8_t level = 0;  // 0 = absent
  std::int8_t bit = -1;    // -1 = absent

  bool operator==(const NodeLabel&) const = default;
};

using Labeling = std::vector<NodeLabel>;

enum class NodeClass : std::uint8_t { Internal, Leaf, Inconsistent };

const char* to_string(NodeClass c);

// Output symbols. Bal/Unb carry a port: the pair (B, p) and (U, p).
enum class Sym : std::uint8_t { None, R, B, D, X, Bal, Unb };

struct Output {
  Sym sym = Sym::None;
  Port port = kNoPort;

  static Output color(Color c) { return {c == Color::R ? Sym::R : Sym::B, kNoPort}; }
  static Output pair(bool balanced, Port p) { return {balanced ? Sym::Bal : Sym::Unb, p}; }

  bool is_pair() const { return sym == Sym::Bal || sym == Sym::Unb; }
  bool is_color() const { return sym == Sym::R || sym == Sym::B; }
  bool operator==(const Output&) const = default;
};

inline Output sym_out(Sym s) { return {s, kNoPort}; }

std::string to_string(const Output& o);
// Returns Sym::None on undecodable text.
Output parse_output(const std::string& s);

using OutputLabeling = std::vector<Output>;

}  // namespace lclvol
