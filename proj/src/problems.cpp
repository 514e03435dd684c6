#include "lclvol/problems.hpp"

#include <algorithm>

#include "lclvol/local_rules.hpp"
#include "lclvol/structure.hpp"

namespace lclvol {

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::LeafColoring: return "leafcolor";
    case Problem::BalancedTree: return "btl";
    case Problem::Hthc: return "hthc";
    case Problem::Hybrid: return "hybrid";
    case Problem::Hh: return "hh";
  }
  return "?";
}

std::optional<Problem> parse_problem(const std::string& s) {
  if (s == "leafcolor" || s == "leaf-coloring") return Problem::LeafColoring;
  if (s == "btl" || s == "balanced-tree") return Problem::BalancedTree;
  if (s == "hthc") return Problem::Hthc;
  if (s == "hybrid") return Problem::Hybrid;
  if (s == "hh") return Problem::Hh;
  return std::nullopt;
}

std::string serialize_verdict(const PortedGraph& g, const Verdict& v) {
  std::string s;
  for (const Violation& x : v.violations)
    s += std::to_string(g.id(x.v)) + ' ' + x.condition + ' ' + x.reason + '\n';
  return s;
}

namespace rules {

std::string compat_failures(std::uint8_t mask) {
  static const char* names[] = {"type-preserving", "agreement", "siblings", "persistence", "leaves"};
  std::string s;
  for (int i = 0; i < 5; ++i)
    if (mask & (1u << i)) {
      if (!s.empty()) s += ',';
      s += names[i];
    }
  return s;
}

}  // namespace rules

CompatReport check_compatible(const PortedGraph& g, const Labeling& lab, Vertex v) {
  Labeling n = normalize_labeling(g, lab);
  GraphNav nav{g, n};
  std::uint8_t m = rules::compat_mask(nav, v);
  CompatReport r;
  r.compatible = m == 0;
  std::string names = rules::compat_failures(m);
  for (std::size_t i = 0; i < names.size();) {
    std::size_t j = names.find(',', i);
    if (j == std::string::npos) j = names.size();
    r.failed.push_back(names.substr(i, j - i));
    i = j + 1;
  }
  return r;
}

namespace {

Vertex nb(const PortedGraph& g, Vertex v, Port p) { return p == kNoPort ? kNoVertex : g.neighbor(v, p); }

Output in_color(const NodeLabel& l) { return rules::input_color(l); }

// Filter: nodes whose verdict we report (empty = all).
bool wanted(const std::vector<char>& filter, Vertex v) { return filter.empty() || filter[v]; }

std::vector<std::uint8_t> masks_from(const PortedGraph& g, const Labeling& lab, const DerivedForest& f) {
  const std::size_t n = g.n();
  std::vector<std::uint8_t> mask(n, 0);
  auto rn = [&](Vertex x) { return nb(g, x, lab[x].right_neighbor); };
  auto ln = [&](Vertex x) { return nb(g, x, lab[x].left_neighbor); };
  for (Vertex v = 0; v < n; ++v) {
    const NodeClass c = f.cls[v];
    if (c == NodeClass::Inconsistent) continue;
    std::uint8_t m = 0;
    const Vertex r = rn(v), l = ln(v);
    if ((r != kNoVertex && f.cls[r] != c) || (l != kNoVertex && f.cls[l] != c)) m |= rules::kTypePreserving;
    if ((l != kNoVertex && rn(l) != v) || (r != kNoVertex && ln(r) != v)) m |= rules::kAgreement;
    if (c == NodeClass::Internal) {
      const Vertex a = nb(g, v, lab[v].left_child), b = nb(g, v, lab[v].right_child);
      if (rn(a) != b || ln(b) != a) m |= rules::kSiblings;
      if (r != kNoVertex && (f.cls[r] != NodeClass::Internal || rn(b) != nb(g, r, lab[r].left_child)))
        m |= rules::kPersistence;
      if (l != kNoVertex && (f.cls[l] != NodeClass::Internal || ln(a) != nb(g, l, lab[l].right_child)))
        m |= rules::kPersistence;
    } else {
      if ((r != kNoVertex && f.cls[r] != NodeClass::Leaf) || (l != kNoVertex && f.cls[l] != NodeClass::Leaf))
        m |= rules::kLeavesCond;
    }
    mask[v] = m;
  }
  return mask;
}

void btl_sweep(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out,
               const std::vector<char>& filter, const char* prefix, Verdict& verdict,
               std::vector<char>* failed = nullptr) {
  DerivedForest f = derive_tree_forest(g, lab);
  std::vector<std::uint8_t> mask = masks_from(g, lab, f);
  auto fail = [&](Vertex v, const char* cond, std::string why) {
    if (failed) {
      (*failed)[v] = 1;
      return;
    }
    verdict.add(v, std::string(prefix) + cond, std::move(why));
  };
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!wanted(filter, v) || f.cls[v] == NodeClass::Inconsistent) continue;
    const Output o = out[v];
    if (mask[v]) {
      if (o != Output::pair(false, kNoPort)) fail(v, "1", "incompatible (" + rules::compat_failures(mask[v]) + ")");
      continue;
    }
    const Output mine = Output::pair(true, lab[v].parent);
    if (f.cls[v] == NodeClass::Leaf) {
      if (o != mine) fail(v, "2", "compatible leaf must output (B, P(v))");
      continue;
    }
    const Vertex a = nb(g, v, lab[v].left_child), b = nb(g, v, lab[v].right_child);
    const bool a_bal = out[a] == Output::pair(true, lab[a].parent);
    const bool b_bal = out[b] == Output::pair(true, lab[b].parent);
    if (a_bal && b_bal && o != mine) {
      fail(v, "3a", "both children balanced");
      continue;
    }
    const bool au = out[a].sym == Sym::Unb, bu = out[b].sym == Sym::Unb;
    if (!au && !bu) continue;
    bool ok = (au && o == Output::pair(false, lab[v].left_child)) || (bu && o == Output::pair(false, lab[v].right_child));
    if (!ok) fail(v, "3b", "must point (U, ·) at an unbalanced child");
  }
}

bool in_rbd(const Output& o) { return o.sym == Sym::R || o.sym == Sym::B || o.sym == Sym::D; }
bool in_rbx(const Output& o) { return o.sym == Sym::R || o.sym == Sym::B || o.sym == Sym::X; }

void hthc_sweep(const Labeling& lab, const DerivedForest& f, const OutputLabeling& out, int k, bool hybrid,
                const std::vector<char>& filter, Verdict& verdict) {
  for (Vertex v = 0; v < lab.size(); ++v) {
    if (!wanted(filter, v)) continue;
    const int lvl = f.level[v];
    const Output o = out[v];
    if (hybrid && lvl == 1) continue;
    if (lvl > k) {
      if (o.sym != Sym::X) verdict.add(v, "1", "level above k must output X");
      continue;
    }
    const Vertex a = f.children[v][0], b = f.children[v][1];
    const bool leaf = a == kNoVertex;
    const Output in = in_color(lab[v]);
    const Output oa = a == kNoVertex ? Output{} : out[a];
    const Output ob = b == kNoVertex ? Output{} : out[b];
    if (leaf && o != in && o.sym != Sym::D && o.sym != Sym::X) {
      verdict.add(v, "2", "leaf must output its input color, D or X");
      continue;
    }
    if (lvl == 1) {
      if (!in_rbd(o)) {
        verdict.add(v, "3a", "level 1 must output R, B or D");
        continue;
      }
      if (!leaf && o != oa) {
        verdict.add(v, "3b", "level 1 must copy LC");
        continue;
      }
    }
    if (hybrid ? lvl == 2 : (lvl > 1 && lvl < k)) {
      if (leaf) continue;
      const bool c4a = o == oa && in_rbd(oa);
      const bool c4b = o.sym == Sym::X && b != kNoVertex && (hybrid ? ob.is_pair() : in_rbx(ob));
      const bool c4c = (o == in || o.sym == Sym::D) && oa.sym == Sym::X;
      if (!c4a && !c4b && !c4c) verdict.add(v, "4", "none of 4a, 4b, 4c holds");
      continue;
    }
    if (lvl != k) continue;
    if (!in_rbx(o)) {
      verdict.add(v, "5", "level k must output R, B or X");
    } else if (o.sym == Sym::X) {
      if (b == kNoVertex || !in_rbx(ob)) verdict.add(v, "5a", "X needs RC in R, B, X");
    } else if (!leaf) {
      const Output want = oa.sym == Sym::X ? in : oa;
      if (o != want) verdict.add(v, "5b", "must copy LC, or input color after an X");
    }
  }
}

void decode_sweep(const OutputLabeling& out, bool (*alphabet)(const Output&), const std::vector<char>& filter,
                  Verdict& verdict, std::vector<char>& bad) {
  for (Vertex v = 0; v < out.size(); ++v)
    if (wanted(filter, v) && !alphabet(out[v])) {
      verdict.add(v, "decode", "output " + to_string(out[v]) + " outside the alphabet");
      bad[v] = 1;
    }
}

void require_sizes(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out) {
  if (lab.size() != g.n() || out.size() != g.n()) throw std::invalid_argument("labeling size does not match graph");
}

void hybrid_core(const PortedGraph& g, const Labeling& n, const OutputLabeling& out, int k,
                 const std::vector<char>& filter, Verdict& verdict) {
  DerivedForest hf = derive_hier_forest(g, n, k, LevelSource::Input);
  hthc_sweep(n, hf, out, k, true, filter, verdict);
  // Level-1 part: the induced subgraph, cross-level pointers cut.
  std::vector<char> one(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) one[v] = hf.level[v] == 1 && wanted(filter, v);
  Labeling m = n;
  for (Vertex v = 0; v < g.n(); ++v) {
    NodeLabel& l = m[v];
    for (Port* p : {&l.parent, &l.left_child, &l.right_child, &l.left_neighbor, &l.right_neighbor}) {
      if (*p == kNoPort) continue;
      if (hf.level[v] != 1 || hf.level[g.neighbor(v, *p)] != 1) *p = kNoPort;
    }
  }
  std::vector<char> btl_failed(g.n(), 0);
  Verdict scratch;
  btl_sweep(g, m, out, one, "", scratch, &btl_failed);
  DerivedForest f1 = derive_tree_forest(g, m);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!one[v]) continue;
    const Output o = out[v];
    if (o.sym == Sym::D) {
      bool all_d = true;
      if (f1.parent[v] != kNoVertex) all_d &= out[f1.parent[v]].sym == Sym::D;
      for (Vertex c : f1.children[v])
        if (c != kNoVertex) all_d &= out[c].sym == Sym::D;
      if (!all_d) verdict.add(v, "h1", "declining level 1 node has a G_T neighbor not declining");
    } else if (!o.is_pair()) {
      verdict.add(v, "h1", "level 1 must decline or solve BalancedTree");
    } else if (btl_failed[v]) {
      verdict.add(v, "h1", "BalancedTree conditions fail on the level 1 subgraph");
    }
  }
}

std::vector<char> complement_of_bad(const std::vector<char>& bad, const std::vector<char>& filter) {
  std::vector<char> f(bad.size());
  for (std::size_t i = 0; i < bad.size(); ++i) f[i] = !bad[i] && (filter.empty() || filter[i]);
  return f;
}

}  // namespace

std::vector<std::uint8_t> compatibility_masks(const PortedGraph& g, const Labeling& lab) {
  return masks_from(g, lab, derive_tree_forest(g, lab));
}

Verdict validate_leaf_coloring(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out) {
  require_sizes(g, lab, out);
  Labeling n = normalize_labeling(g, lab);
  DerivedForest f = derive_tree_forest(g, n);
  Verdict verdict;
  std::vector<char> bad(g.n(), 0);
  decode_sweep(out, rules::leafcolor_alphabet, {}, verdict, bad);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (bad[v]) continue;
    if (f.cls[v] != NodeClass::Internal) {
      if (out[v] != in_color(n[v])) verdict.add(v, "1", "leaf or inconsistent node must echo its input color");
      continue;
    }
    const Output a = out[g.neighbor(v, n[v].left_child)], b = out[g.neighbor(v, n[v].right_child)];
    if (out[v] != a && out[v] != b) verdict.add(v, "2", "internal node must copy a child");
  }
  return verdict;
}

Verdict validate_balanced_tree(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out) {
  require_sizes(g, lab, out);
  Labeling n = normalize_labeling(g, lab);
  Verdict verdict;
  std::vector<char> bad(g.n(), 0);
  decode_sweep(out, rules::btl_alphabet, {}, verdict, bad);
  btl_sweep(g, n, out, complement_of_bad(bad, {}), "", verdict);
  return verdict;
}

Verdict validate_hthc(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out, int k) {
  require_sizes(g, lab, out);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Labeling n = normalize_labeling(g, lab);
  DerivedForest f = derive_hier_forest(g, n, k);
  Verdict verdict;
  std::vector<char> bad(g.n(), 0);
  decode_sweep(out, rules::hthc_alphabet, {}, verdict, bad);
  hthc_sweep(n, f, out, k, false, complement_of_bad(bad, {}), verdict);
  return verdict;
}

Verdict validate_hybrid(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out, int k) {
  require_sizes(g, lab, out);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Labeling n = normalize_labeling(g, lab);
  Verdict verdict;
  std::vector<char> bad(g.n(), 0);
  decode_sweep(out, rules::hybrid_alphabet, {}, verdict, bad);
  hybrid_core(g, n, out, k, complement_of_bad(bad, {}), verdict);
  return verdict;
}

Verdict validate_hh(const PortedGraph& g, const Labeling& lab, const OutputLabeling& out, int k, int l) {
  require_sizes(g, lab, out);
  if (k < 1 || l < k) throw std::invalid_argument("HH needs 1 <= k <= l");
  Labeling n = normalize_labeling(g, lab);
  auto bit = [&](Vertex v) { return n[v].bit > 0 ? 1 : 0; };
  for (Vertex v = 0; v < g.n(); ++v) {
    NodeLabel& x = n[v];
    for (Port* p : {&x.parent, &x.left_child, &x.right_child, &x.left_neighbor, &x.right_neighbor})
      if (*p != kNoPort && bit(g.neighbor(v, *p)) != bit(v)) *p = kNoPort;
  }
  Verdict verdict;
  std::vector<char> bad(g.n(), 0);
  std::vector<char> zero(g.n()), one(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    zero[v] = bit(v) == 0;
    one[v] = bit(v) == 1;
  }
  decode_sweep(out, rules::hthc_alphabet, zero, verdict, bad);
  decode_sweep(out, rules::hybrid_alphabet, one, verdict, bad);
  DerivedForest f = derive_hier_forest(g, n, l);
  hthc_sweep(n, f, out, l, false, complement_of_bad(bad, zero), verdict);
  hybrid_core(g, n, out, k, complement_of_bad(bad, one), verdict);
  std::stable_sort(verdict.violations.begin(), verdict.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.v < b.v; });
  return verdict;
}

Verdict validate(Problem p, const PortedGraph& g, const Labeling& lab, const OutputLabeling& out,
                 const ProblemParams& params) {
  switch (p) {
    case Problem::LeafColoring: return validate_leaf_coloring(g, lab, out);
    case Problem::BalancedTree: return validate_balanced_tree(g, lab, out);
    case Problem::Hthc: return validate_hthc(g, lab, out, params.k);
    case Problem::Hybrid: return validate_hybrid(g, lab, out, params.k);
    case Problem::Hh: return validate_hh(g, lab, out, params.k, params.l);
  }
  return {};
}

int check_radius(Problem p, const ProblemParams& params) {
  switch (p) {
    case Problem::LeafColoring: return 2;
    case Problem::BalancedTree: return 3;
    case Problem::Hthc:
    case Problem::Hybrid: return 2 * (params.k + 1);
    case Problem::Hh: return 2 * (std::max(params.k, params.l) + 1);
  }
  return 0;
}

bool local_check(Problem p, const PortedGraph& g, const Labeling& normalized, const OutputLabeling& out, Vertex v,
                 const ProblemParams& params) {
  BallNav ball(g, normalized, v, check_radius(p, params));
  const Output o = out[v];
  switch (p) {
    case Problem::LeafColoring:
      return rules::leafcolor_alphabet(o) && !rules::leafcolor_node(ball, out, v);
    case Problem::BalancedTree:
      return rules::btl_alphabet(o) && !rules::btl_node(ball, out, v);
    case Problem::Hthc: {
      Hier<BallNav> h(ball, params.k);
      return rules::hthc_alphabet(o) && !rules::hthc_node(h, out, v);
    }
    case Problem::Hybrid:
      return rules::hybrid_alphabet(o) && !rules::hybrid_node(ball, out, v, params.k);
    case Problem::Hh: {
      bool zero = normalized[v].bit <= 0;
      bool alpha = zero ? rules::hthc_alphabet(o) : rules::hybrid_alphabet(o);
      return alpha && !rules::hh_node(ball, out, v, params.k, params.l);
    }
  }
  return false;
}

}  // namespace lclvol
