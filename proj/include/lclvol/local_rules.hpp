#pragma once

#include <cstdint>
#include <string>

#include "lclvol/structure.hpp"

// Per-node validity rules written against the Nav interface. These back
// local_check (via BallNav) and the solvers (via Explorer); the global
// validators in problems.cpp are a separate array-based implementation.
namespace lclvol::rules {

enum CompatBit : std::uint8_t {
  kTypePreserving = 1,
  kAgreement = 2,
  kSiblings = 4,
  kPersistence = 8,
  kLeavesCond = 16,
};

std::string compat_failures(std::uint8_t mask);

// Only edges between two level-1 nodes (by input level) survive.
template <Nav N>
struct Level1Nav {
  using Handle = typename N::Handle;
  static constexpr Handle none = N::none;
  N& base;
  int k;

  bool at_one(Handle v) { return nav::input_level(NodeLabel(base.label(v)), k) == 1; }
  Handle nbr(Handle v, Port p) {
    Handle w = base.nbr(v, p);
    if (w == none || !at_one(v) || !at_one(w)) return none;
    return w;
  }
  decltype(auto) label(Handle v) { return base.label(v); }
  std::uint64_t id(Handle v) { return base.id(v); }
};

// Port if it leads somewhere visible through this nav, else ⊥.
template <Nav N>
Port effective(N& n, typename N::Handle v, Port p) {
  return nav::follow(n, v, p) == N::none ? kNoPort : p;
}

// Bitmask of failed compatibility conditions; 0 for compatible or inconsistent nodes.
template <Nav N>
std::uint8_t compat_mask(N& n, typename N::Handle v) {
  using H = typename N::Handle;
  const NodeClass c = nav::classify(n, v);
  if (c == NodeClass::Inconsistent) return 0;
  const NodeLabel l = n.label(v);
  auto rn_of = [&](H x) { return nav::follow(n, x, NodeLabel(n.label(x)).right_neighbor); };
  auto ln_of = [&](H x) { return nav::follow(n, x, NodeLabel(n.label(x)).left_neighbor); };
  const H rn = nav::follow(n, v, l.right_neighbor);
  const H ln = nav::follow(n, v, l.left_neighbor);
  std::uint8_t m = 0;
  for (H x : {ln, rn})
    if (x != N::none && nav::classify(n, x) != c) m |= kTypePreserving;
  if (ln != N::none && rn_of(ln) != v) m |= kAgreement;
  if (rn != N::none && ln_of(rn) != v) m |= kAgreement;
  if (c == NodeClass::Internal) {
    const H lc = nav::follow(n, v, l.left_child), rc = nav::follow(n, v, l.right_child);
    if (rn_of(lc) != rc || ln_of(rc) != lc) m |= kSiblings;
    if (rn != N::none) {
      H w_lc = nav::follow(n, rn, NodeLabel(n.label(rn)).left_child);
      if (!nav::is_internal(n, rn) || rn_of(rc) != w_lc) m |= kPersistence;
    }
    if (ln != N::none) {
      H u_rc = nav::follow(n, ln, NodeLabel(n.label(ln)).right_child);
      if (!nav::is_internal(n, ln) || ln_of(lc) != u_rc) m |= kPersistence;
    }
  } else {
    for (H x : {ln, rn})
      if (x != N::none && nav::classify(n, x) != NodeClass::Leaf) m |= kLeavesCond;
  }
  return m;
}

inline Output input_color(const NodeLabel& l) {
  return l.color == Color::None ? Output{} : Output::color(l.color);
}

inline bool in_rbd(const Output& o) { return o.sym == Sym::R || o.sym == Sym::B || o.sym == Sym::D; }
inline bool in_rbx(const Output& o) { return o.sym == Sym::R || o.sym == Sym::B || o.sym == Sym::X; }

inline bool leafcolor_alphabet(const Output& o) { return o.is_color(); }
inline bool btl_alphabet(const Output& o) { return o.is_pair(); }
inline bool hthc_alphabet(const Output& o) { return in_rbd(o) || o.sym == Sym::X; }
inline bool hybrid_alphabet(const Output& o) { return o.sym != Sym::None; }

struct Failure {
  const char* cond = nullptr;
  std::string reason;
  explicit operator bool() const { return cond != nullptr; }
};

// BalancedTree conditions at v; outputs indexed by handle.
template <Nav N>
Failure btl_node(N& n, const OutputLabeling& out, typename N::Handle v) {
  const NodeClass c = nav::classify(n, v);
  if (c == NodeClass::Inconsistent) return {};
  const NodeLabel l = n.label(v);
  const Output o = out[v];
  if (std::uint8_t m = compat_mask(n, v))
    return o == Output::pair(false, kNoPort) ? Failure{} : Failure{"1", "incompatible (" + compat_failures(m) + ")"};
  const Output mine = Output::pair(true, effective(n, v, l.parent));
  if (c == NodeClass::Leaf) return o == mine ? Failure{} : Failure{"2", "compatible leaf must output (B, P(v))"};
  auto lc = nav::follow(n, v, l.left_child), rc = nav::follow(n, v, l.right_child);
  const Output ol = out[lc], orr = out[rc];
  if (ol == Output::pair(true, effective(n, lc, NodeLabel(n.label(lc)).parent)) &&
      orr == Output::pair(true, effective(n, rc, NodeLabel(n.label(rc)).parent)) && o != mine)
    return {"3a", "both children balanced"};
  const bool lu = ol.sym == Sym::Unb, ru = orr.sym == Sym::Unb;
  if ((lu || ru) && !((lu && o == Output::pair(false, l.left_child)) || (ru && o == Output::pair(false, l.right_child))))
    return {"3b", "must point (U, ·) at an unbalanced child"};
  return {};
}

// Hierarchical-THC conditions. In hybrid mode level 2 uses conditions 2 and 4
// with the exemption allowed only above a solved BalancedTree output.
template <Nav N>
Failure hthc_node(Hier<N>& h, const OutputLabeling& out, typename N::Handle v, bool hybrid = false) {
  constexpr auto none = N::none;
  const int k = h.k();
  const int lvl = h.level(v);
  const Output o = out[v];
  if (lvl > k) return o.sym == Sym::X ? Failure{} : Failure{"1", "level above k must output X"};
  const bool leaf = h.is_leaf(v);
  const auto lc = h.lc(v), rc = h.rc(v);
  const Output in = input_color(NodeLabel(h.nav().label(v)));
  const Output ol = lc == none ? Output{} : out[lc];
  const Output orr = rc == none ? Output{} : out[rc];
  if (leaf && !(o == in || o.sym == Sym::D || o.sym == Sym::X)) return {"2", "leaf must output its input color, D or X"};
  if (lvl == 1) {
    if (!in_rbd(o)) return {"3a", "level 1 must output R, B or D"};
    if (!leaf && o != ol) return {"3b", "level 1 must copy LC"};
    if (k != 1) return {};
  }
  const bool four = hybrid ? lvl == 2 : (lvl > 1 && lvl < k);
  if (four) {
    if (leaf) return {};
    bool a = o == ol && in_rbd(ol);
    bool b = o.sym == Sym::X && rc != none && (hybrid ? orr.is_pair() : in_rbx(orr));
    bool cc = (o == in || o.sym == Sym::D) && ol.sym == Sym::X;
    return (a || b || cc) ? Failure{} : Failure{"4", "none of 4a, 4b, 4c holds"};
  }
  if (lvl == k) {
    if (!in_rbx(o)) return {"5", "level k must output R, B or X"};
    if (o.sym == Sym::X && !(rc != none && in_rbx(orr))) return {"5a", "X needs RC in R, B, X"};
    if (!leaf && o.sym != Sym::X) {
      bool ok = ol.sym != Sym::X ? o == ol : o == in;
      if (!ok) return {"5b", "must copy LC, or input color after an X"};
    }
  }
  return {};
}

template <Nav N>
Failure leafcolor_node(N& n, const OutputLabeling& out, typename N::Handle v) {
  const NodeLabel l = n.label(v);
  const Output o = out[v];
  if (nav::classify(n, v) != NodeClass::Internal)
    return o == input_color(l) ? Failure{} : Failure{"1", "leaf or inconsistent node must echo its input color"};
  const Output a = out[nav::follow(n, v, l.left_child)], b = out[nav::follow(n, v, l.right_child)];
  return (o == a || o == b) ? Failure{} : Failure{"2", "internal node must copy a child"};
}

// Hybrid-THC at v, levels from input.
template <Nav N>
Failure hybrid_node(N& n, const OutputLabeling& out, typename N::Handle v, int k) {
  using H = typename N::Handle;
  const int lvl = nav::input_level(NodeLabel(n.label(v)), k);
  if (lvl != 1) {
    Hier<N> h(n, k, LevelSource::Input);
    return hthc_node(h, out, v, true);
  }
  Level1Nav<N> sub{n, k};
  const Output o = out[v];
  if (o.sym == Sym::D) {
    bool all_d = true;
    if (nav::is_consistent(sub, v)) {
      const NodeLabel l = n.label(v);
      H p = nav::follow(sub, v, l.parent);
      if (p != N::none && nav::is_internal(sub, p)) {
        const NodeLabel pl = sub.label(p);
        if (nav::follow(sub, p, pl.left_child) == v || nav::follow(sub, p, pl.right_child) == v)
          all_d &= out[p].sym == Sym::D;
      }
      if (nav::is_internal(sub, v))
        for (Port q : {l.left_child, l.right_child}) {
          H c = nav::follow(sub, v, q);
          if (nav::is_consistent(sub, c)) all_d &= out[c].sym == Sym::D;
        }
    }
    if (all_d) return {};
    return {"h1", "declining level 1 node has a G_T neighbor not declining"};
  }
  if (!o.is_pair()) return {"h1", "level 1 must decline or solve BalancedTree"};
  if (Failure f = btl_node(sub, out, v)) return {"h1", std::string("BalancedTree ") + f.cond + ": " + f.reason};
  return {};
}

template <Nav N>
Failure hh_node(N& n, const OutputLabeling& out, typename N::Handle v, int k, int l) {
  BitNav<N> bn{n};
  if (BitNav<N>::bit_of(NodeLabel(n.label(v))) == 0) {
    Hier<BitNav<N>> h(bn, l, LevelSource::Computed);
    return hthc_node(h, out, v);
  }
  return hybrid_node(bn, out, v, k);
}

}  // namespace lclvol::rules
