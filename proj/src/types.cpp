#include "lclvol/types.hpp"

namespace lclvol {

char color_char(Color c) {
  switch (c) {
    case Color::R: return 'R';
    case Color::B: return 'B';
    default: return '-';
  }
}

std::optional<Color> parse_color(char c) {
  if (c == 'R') return Color::R;
  if (c == 'B') return Color::B;
  if (c == '-') return Color::None;
  return std::nullopt;
}

const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Internal: return "internal";
    case NodeClass::Leaf: return "leaf";
    default: return "inconsistent";
  }
}

std::string to_string(const Output& o) {
  switch (o.sym) {
    case Sym::R: return "R";
    case Sym::B: return "B";
    case Sym::D: return "D";
    case Sym::X: return "X";
    case Sym::Bal:
    case Sym::Unb: {
      std::string s = o.sym == Sym::Bal ? "(B," : "(U,";
      s += o.port == kNoPort ? std::string("-") : std::to_string(o.port);
      s += ')';
      return s;
    }
    default: return "?";
  }
}

Output parse_output(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'R': return sym_out(Sym::R);
      case 'B': return sym_out(Sym::B);
      case 'D': return sym_out(Sym::D);
      case 'X': return sym_out(Sym::X);
      default: return {};
    }
  }
  if (s.size() < 5 || s.front() != '(' || s.back() != ')' || s[2] != ',') return {};
  Sym sym;
  if (s[1] == 'B') sym = Sym::Bal;
  else if (s[1] == 'U') sym = Sym::Unb;
  else return {};
  std::string p = s.substr(3, s.size() - 4);
  if (p == "-") return {sym, kNoPort};
  int v = 0;
  for (char c : p) {
    if (c < '0' || c > '9') return {};
    v = v * 10 + (c - '0');
    if (v > kMaxDegree) return {};
  }
  if (v == 0) return {};
  return {sym, static_cast<Port>(v)};
}

}  // namespace lclvol
