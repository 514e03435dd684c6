#include "lclvol/solvers.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "lclvol/local_rules.hpp"
#include "lclvol/mathutil.hpp"

namespace lclvol {

namespace {

Output in_color(const NodeLabel& l) { return Output::color(l.color == Color::B ? Color::B : Color::R); }

// Grows on demand; handles are dense execution-local indices.
template <class T>
struct LocalMemo {
  std::vector<std::optional<T>> slots;
  std::optional<T>& operator[](Local h) {
    if (h >= slots.size()) slots.resize(h + 1);
    return slots[h];
  }
};

// Nearest non-internal descendant by BFS, LC before RC.
template <Nav N>
Output leafcolor_at(N& n, typename N::Handle v, int max_depth) {
  using H = typename N::Handle;
  if (!nav::is_internal(n, v)) return in_color(n.label(v));
  std::deque<std::pair<H, int>> q{{v, 0}};
  while (!q.empty()) {
    auto [x, d] = q.front();
    q.pop_front();
    if (!nav::is_internal(n, x)) return in_color(n.label(x));
    if (d == max_depth) continue;
    const NodeLabel l = n.label(x);
    q.push_back({nav::follow(n, x, l.left_child), d + 1});
    q.push_back({nav::follow(n, x, l.right_child), d + 1});
  }
  return Output::color(Color::R);
}

template <Nav N>
Output btl_at(N& n, typename N::Handle v, int depth) {
  using H = typename N::Handle;
  const NodeClass c = nav::classify(n, v);
  if (c == NodeClass::Inconsistent) return Output::pair(true, kNoPort);
  if (rules::compat_mask(n, v)) return Output::pair(false, kNoPort);
  const NodeLabel l = n.label(v);
  const Output mine = Output::pair(true, rules::effective(n, v, l.parent));
  if (c == NodeClass::Leaf) return mine;
  struct Item {
    H x;
    Port first;
    int d;
  };
  std::deque<Item> q{{nav::follow(n, v, l.left_child), l.left_child, 1},
                     {nav::follow(n, v, l.right_child), l.right_child, 1}};
  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    if (rules::compat_mask(n, it.x)) return Output::pair(false, it.first);
    if (it.d >= depth || !nav::is_internal(n, it.x)) continue;
    const NodeLabel xl = n.label(it.x);
    q.push_back({nav::follow(n, it.x, xl.left_child), it.first, it.d + 1});
    q.push_back({nav::follow(n, it.x, xl.right_child), it.first, it.d + 1});
  }
  return mine;
}

// G_T neighbors of x: mutual children, and the parent if it counts x as a child.
template <Nav N>
void gt_neighbors(N& n, typename N::Handle x, std::vector<typename N::Handle>& out) {
  out.clear();
  const NodeLabel l = n.label(x);
  if (nav::is_internal(n, x)) {
    out.push_back(nav::follow(n, x, l.left_child));
    out.push_back(nav::follow(n, x, l.right_child));
  }
  auto p = nav::follow(n, x, l.parent);
  if (p != N::none && nav::is_internal(n, p)) {
    const NodeLabel pl = n.label(p);
    if (nav::follow(n, p, pl.left_child) == x || nav::follow(n, p, pl.right_child) == x) out.push_back(p);
  }
}

// Size of v's G_T component, counting stops past `cap`.
template <Nav N>
std::size_t gt_component(N& n, typename N::Handle v, std::size_t cap) {
  using H = typename N::Handle;
  std::vector<H> q{v}, nb;
  std::unordered_map<H, char> seen{{v, 1}};
  for (std::size_t h = 0; h < q.size() && q.size() <= cap; ++h) {
    gt_neighbors(n, q[h], nb);
    for (H y : nb)
      if (seen.emplace(y, 1).second) q.push_back(y);
  }
  return q.size();
}

// RecursiveHTHC over any nav. In hybrid mode levels come from the input,
// level 1 is delegated to `level_one`, and "solved" means not D.
template <Nav N>
class Thc {
 public:
  using H = typename N::Handle;
  using Pred = std::function<bool(H)>;
  using LevelOne = std::function<Output(H)>;

  Thc(N& n, int k, std::uint64_t n_total, LevelSource src, Pred waypoint, LevelOne level_one)
      : n_(n), h_(n, k, src), k_(k), waypoint_(std::move(waypoint)), level_one_(std::move(level_one)) {
    two_n_ = 2 * static_cast<long>(ceil_root(std::max<std::uint64_t>(n_total, 1), k));
  }

  Output rec(H v) {
    if (v == N::none) return sym_out(Sym::D);
    if (auto m = memo_[v]) return *m;
    const Output o = compute(v);
    memo_[v] = o;
    return o;
  }

 private:
  static bool solved(const Output& o) { return o.sym != Sym::D && o.sym != Sym::None; }
  bool wp(H v) { return !waypoint_ || waypoint_(v); }
  Output rc_of(H v) { return rec(h_.rc(v)); }

  Output compute(H v) {
    const int lvl = h_.level(v);
    if (lvl > k_) return sym_out(Sym::X);
    if (level_one_ && lvl == 1) return level_one_(v);

    // Backbone discovery, at most 2N+1 steps each way.
    bool cycle = false, deep = false;
    long down = 0, up = 0;
    H x = v, u0 = v;
    std::uint64_t min_id = n_.id(v);
    for (;;) {
      H c = h_.lc(x);
      if (c == N::none) break;
      if (c == v) {
        cycle = true;
        break;
      }
      if (++down > two_n_) {
        deep = true;
        break;
      }
      x = c;
      if (n_.id(x) < min_id) {
        min_id = n_.id(x);
        u0 = x;
      }
    }
    if (!cycle && !deep) {
      u0 = x;
      for (H y = v; (y = h_.up(y)) != N::none;)
        if (++up > two_n_) {
          deep = true;
          break;
        }
    }
    if (!deep && down + up + 1 <= two_n_) return in_color(n_.label(u0));
    if (lvl == 1) return sym_out(Sym::D);
    if (wp(v) && solved(rc_of(v))) return sym_out(Sym::X);

    H u = v, w = v, above_u = N::none;
    long su = 0, sw = 0;
    for (long i = 0; i <= two_n_; ++i) {
      if (!h_.is_leaf(u) && (!wp(u) || !solved(rc_of(u)))) {
        above_u = u;
        u = h_.lc(u);
        ++su;
      }
      if (!h_.is_root(w) && (!wp(w) || !solved(rc_of(w)))) {
        w = h_.up(w);
        ++sw;
      }
    }
    if (su == 0 && !h_.is_leaf(v)) return sym_out(Sym::X);
    if (su + sw <= two_n_) {
      if (su > 0 && wp(u) && solved(rc_of(u))) return in_color(n_.label(above_u));
      return in_color(n_.label(u));
    }
    return sym_out(Sym::D);
  }

  N& n_;
  Hier<N> h_;
  int k_;
  long two_n_ = 0;
  Pred waypoint_;
  LevelOne level_one_;
  LocalMemo<Output> memo_;
};

std::uint64_t waypoint_threshold(double p) {
  if (p >= 1) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(p), 64));
}

// Waypoint flag from block 0 of a vertex's stream, read once per execution.
struct Waypoints {
  Probe& probe;
  bool always;
  std::uint64_t threshold;
  LocalMemo<bool> memo;

  bool operator()(Local h) {
    if (always) return true;
    auto& m = memo[h];
    if (!m) m = probe.random(h).next_block() < threshold;
    return *m;
  }
};

template <Nav N>
Output hybrid_dist_at(N& n, Local v, int k, std::uint64_t n_total) {
  const int lvl = nav::input_level(NodeLabel(n.label(v)), k);
  if (lvl == 1) {
    rules::Level1Nav<N> sub{n, k};
    return btl_at(sub, v, ceil_log2(n_total));
  }
  Hier<N> h(n, k, LevelSource::Input);
  if (lvl > k || h.rc(v) != N::none || h.is_leaf(v)) return sym_out(Sym::X);
  // No RC to rest an X on: copy the bottom of the RC-less run below v.
  Local x = v, best = v;
  std::uint64_t min_id = n.id(v);
  for (std::uint64_t steps = 0; steps <= n_total; ++steps) {
    Local c = h.lc(x);
    if (c == N::none || h.rc(c) != N::none) return in_color(n.label(x));
    if (c == v) return in_color(n.label(best));
    x = c;
    if (n.id(x) < min_id) min_id = n.id(x), best = x;
  }
  return in_color(n.label(x));
}

template <Nav N>
Output hybrid_vol_at(N& n, Probe& probe, Local v, int k, int c_const) {
  const std::uint64_t nt = probe.n();
  const std::size_t cap = 2 * ceil_root(std::max<std::uint64_t>(nt, 1), k);
  rules::Level1Nav<N> sub{n, k};
  auto level_one = [&](Local x) -> Output {
    if (!nav::is_consistent(sub, x)) return Output::pair(true, kNoPort);
    if (gt_component(sub, x, cap) > cap) return sym_out(Sym::D);
    return btl_at(sub, x, ceil_log2(nt));
  };
  const double p = waypoint_probability(nt, k, c_const);
  Waypoints wp{probe, p >= 1, waypoint_threshold(p), {}};
  Thc<N> t(n, k, nt, LevelSource::Input, std::ref(wp), level_one);
  return t.rec(v);
}

template <Nav N>
Output hthc_at(N& n, Probe& probe, Local v, int k, bool sampled, int c_const) {
  const std::uint64_t nt = probe.n();
  if (!sampled) {
    Thc<N> t(n, k, nt, LevelSource::Computed, nullptr, nullptr);
    return t.rec(v);
  }
  const double p = waypoint_probability(nt, k, c_const);
  Waypoints wp{probe, p >= 1, waypoint_threshold(p), {}};
  Thc<N> t(n, k, nt, LevelSource::Computed, std::ref(wp), nullptr);
  return t.rec(v);
}

class LeafColorDist final : public ProbeAlgorithm {
 public:
  Output run(Probe& probe) const override {
    Explorer ex(probe);
    return leafcolor_at(ex, ex.start(), ceil_log2(probe.n()) + 1);
  }
  std::string name() const override { return "leafcolor-dist"; }
};

class RwToLeaf final : public ProbeAlgorithm {
 public:
  explicit RwToLeaf(SolverConfig c) : cfg_(c) {}
  Output run(Probe& probe) const override {
    Explorer ex(probe);
    const Local v0 = ex.start();
    const std::uint64_t cap = static_cast<std::uint64_t>(cfg_.tau) * std::max(1, ceil_log2(probe.n()));
    LocalMemo<bool> bits;
    Local x = v0;
    for (std::uint64_t steps = 0;; ++steps) {
      if (!nav::is_internal(ex, x)) return in_color(ex.label(x));
      if (steps >= cap) {
        probe.flag_truncated();
        return Output::color(Color::R);
      }
      auto& b = bits[x];
      if (!b) {
        RandomStream rs = probe.random(x);
        rs.skip_to_block(1);
        b = rs.next_bit();
      }
      bool right = *b;
      if (x == v0 && steps > 0) right = !right;
      const NodeLabel l = ex.label(x);
      x = ex.nbr(x, right ? l.right_child : l.left_child);
    }
  }
  std::string name() const override { return "rw-to-leaf"; }

 private:
  SolverConfig cfg_;
};

class BtlDist final : public ProbeAlgorithm {
 public:
  Output run(Probe& probe) const override {
    Explorer ex(probe);
    return btl_at(ex, ex.start(), ceil_log2(probe.n()));
  }
  std::string name() const override { return "btl-dist"; }
};

class HthcSolver final : public ProbeAlgorithm {
 public:
  HthcSolver(SolverConfig c, bool sampled) : cfg_(c), sampled_(sampled) {}
  Output run(Probe& probe) const override {
    Explorer ex(probe);
    return hthc_at(ex, probe, ex.start(), cfg_.k, sampled_, cfg_.c_const);
  }
  std::string name() const override { return sampled_ ? "sampled-hthc" : "recursive-hthc"; }

 private:
  SolverConfig cfg_;
  bool sampled_;
};

class HybridSolver final : public ProbeAlgorithm {
 public:
  HybridSolver(SolverConfig c, bool vol) : cfg_(c), vol_(vol) {}
  Output run(Probe& probe) const override {
    Explorer ex(probe);
    if (vol_) return hybrid_vol_at(ex, probe, ex.start(), cfg_.k, cfg_.c_const);
    return hybrid_dist_at(ex, ex.start(), cfg_.k, probe.n());
  }
  std::string name() const override { return vol_ ? "hybrid-vol" : "hybrid-dist"; }

 private:
  SolverConfig cfg_;
  bool vol_;
};

class HhSolver final : public ProbeAlgorithm {
 public:
  HhSolver(SolverConfig c, bool sampled) : cfg_(c), sampled_(sampled) {}
  Output run(Probe& probe) const override {
    Explorer ex(probe);
    BitNav<Explorer> bn{ex};
    const Local v = ex.start();
    if (BitNav<Explorer>::bit_of(ex.label(v)) == 0) return hthc_at(bn, probe, v, cfg_.l, sampled_, cfg_.c_const);
    if (sampled_) return hybrid_vol_at(bn, probe, v, cfg_.k, cfg_.c_const);
    return hybrid_dist_at(bn, v, cfg_.k, probe.n());
  }
  std::string name() const override { return sampled_ ? "hh-vol" : "hh-dist"; }

 private:
  SolverConfig cfg_;
  bool sampled_;
};

}  // namespace

double waypoint_probability(std::uint64_t n, int k, int c_const) {
  const double base = static_cast<double>(ceil_root(std::max<std::uint64_t>(n, 1), k));
  return std::min(1.0, c_const * std::max(1, ceil_log2(n)) / base);
}

void check_config(const SolverConfig& cfg, bool hh) {
  if (cfg.tau < 1) throw std::invalid_argument("tau must be at least 1");
  if (cfg.c_const < 3) throw std::invalid_argument("waypoint constant c must be at least 3");
  if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
  if (hh && cfg.l < cfg.k) throw std::invalid_argument("HH needs k <= l");
}

std::unique_ptr<ProbeAlgorithm> leafcolor_dist_solver() { return std::make_unique<LeafColorDist>(); }
std::unique_ptr<ProbeAlgorithm> rw_to_leaf_solver(const SolverConfig& cfg) {
  check_config(cfg);
  return std::make_unique<RwToLeaf>(cfg);
}
std::unique_ptr<ProbeAlgorithm> btl_dist_solver() { return std::make_unique<BtlDist>(); }
std::unique_ptr<ProbeAlgorithm> recursive_hthc_solver(const SolverConfig& cfg) {
  check_config(cfg);
  return std::make_unique<HthcSolver>(cfg, false);
}
std::unique_ptr<ProbeAlgorithm> sampled_hthc_solver(const SolverConfig& cfg) {
  check_config(cfg);
  return std::make_unique<HthcSolver>(cfg, true);
}
std::unique_ptr<ProbeAlgorithm> hybrid_dist_solver(const SolverConfig& cfg) {
  check_config(cfg);
  return std::make_unique<HybridSolver>(cfg, false);
}
std::unique_ptr<ProbeAlgorithm> hybrid_vol_solver(const SolverConfig& cfg) {
  check_config(cfg);
  return std::make_unique<HybridSolver>(cfg, true);
}
std::unique_ptr<ProbeAlgorithm> hh_solver(const SolverConfig& cfg, bool sampled) {
  check_config(cfg, true);
  return std::make_unique<HhSolver>(cfg, sampled);
}

const std::vector<SolverInfo>& solver_catalog() {
  static const std::vector<SolverInfo> c = {
      {"leafcolor-dist", Problem::LeafColoring, false}, {"rw-to-leaf", Problem::LeafColoring, true},
      {"btl-dist", Problem::BalancedTree, false},       {"recursive-hthc", Problem::Hthc, false},
      {"sampled-hthc", Problem::Hthc, true},            {"hybrid-dist", Problem::Hybrid, false},
      {"hybrid-vol", Problem::Hybrid, true},            {"hh-dist", Problem::Hh, false},
      {"hh-vol", Problem::Hh, true},
  };
  return c;
}

std::optional<SolverInfo> find_solver(const std::string& name) {
  for (const auto& s : solver_catalog())
    if (s.name == name) return s;
  return std::nullopt;
}

std::unique_ptr<ProbeAlgorithm> make_solver(const std::string& name, const SolverConfig& cfg) {
  if (name == "leafcolor-dist") return leafcolor_dist_solver();
  if (name == "rw-to-leaf") return rw_to_leaf_solver(cfg);
  if (name == "btl-dist") return btl_dist_solver();
  if (name == "recursive-hthc") return recursive_hthc_solver(cfg);
  if (name == "sampled-hthc") return sampled_hthc_solver(cfg);
  if (name == "hybrid-dist") return hybrid_dist_solver(cfg);
  if (name == "hybrid-vol") return hybrid_vol_solver(cfg);
  if (name == "hh-dist") return hh_solver(cfg, false);
  if (name == "hh-vol") return hh_solver(cfg, true);
  throw std::invalid_argument("unknown solver '" + name + "'");
}

SolveReport solve_and_validate(const Instance& inst, const std::string& solver, const SolverConfig& cfg,
                               const EngineOptions& opts) {
  auto info = find_solver(solver);
  if (!info) throw std::invalid_argument("unknown solver '" + solver + "'");
  auto alg = make_solver(solver, cfg);
  Labeling lab = normalize_labeling(inst.g, inst.lab);
  EngineOptions o = opts;
  o.deny_random = o.deny_random || !info->randomized;
  SolveReport r;
  r.run = run_all(inst.g, lab, *alg, cfg.seed, o);
  r.verdict = validate(info->problem, inst.g, lab, r.run.out, {cfg.k, cfg.l});
  return r;
}

}  // namespace lclvol
