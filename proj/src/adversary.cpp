#include "lclvol/adversary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "lclvol/solvers.hpp"
#include "lclvol/structure.hpp"

namespace lclvol {

const char* to_string(AdversaryStatus s) {
  switch (s) {
    case AdversaryStatus::Counterexample: return "counterexample";
    case AdversaryStatus::Resisted: return "resisted";
    case AdversaryStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

constexpr int kDelta = 3;

struct BudgetExhausted {
  std::size_t queries;
};
struct SizeExceeded {};

struct LNode {
  std::uint64_t id = 0;
  NodeLabel lab;
  int level = 1;
  int degree = 0;
  std::uint8_t mask = 0;
  std::array<int, kDelta> to{-1, -1, -1};
  std::array<Port, kDelta> back{};

  bool has(Port p) const { return p >= 1 && p <= kDelta && ((mask >> (p - 1)) & 1u); }
  bool pending(Port p) const { return has(p) && to[p - 1] < 0; }
};

class LazyForest {
 public:
  std::vector<LNode> nodes;
  std::function<int(int, Port)> grow;

  int add(NodeLabel lab, int level, std::initializer_list<Port> ports) {
    LNode n;
    n.id = nodes.size() + 1;
    n.lab = lab;
    n.level = level;
    for (Port p : ports) {
      n.mask |= static_cast<std::uint8_t>(1u << (p - 1));
      ++n.degree;
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size() - 1);
  }
  void link(int u, Port pu, int v, Port pv) {
    if (!nodes[u].pending(pu) || !nodes[v].pending(pv)) throw std::logic_error("link over an assigned port");
    nodes[u].to[pu - 1] = v;
    nodes[u].back[pu - 1] = pv;
    nodes[v].to[pv - 1] = u;
    nodes[v].back[pv - 1] = pu;
  }
  int resolve(int u, Port p, bool& created) {
    created = nodes[u].to[p - 1] < 0;
    if (created) grow(u, p);
    return nodes[u].to[p - 1];
  }
  std::size_t size() const { return nodes.size(); }
};

struct Session {
  LazyForest F;
  std::shared_ptr<const ProbeAlgorithm> alg;
  AdversaryOptions opts;
  AdversaryTranscript& t;
  std::unordered_map<int, Output> cache;

  Session(std::shared_ptr<const ProbeAlgorithm> a, const AdversaryOptions& o, AdversaryTranscript& tr)
      : alg(std::move(a)), opts(o), t(tr) {}

  void check_size() const {
    if (t.read_n && F.size() > t.declared_n) throw SizeExceeded{};
  }
  Output simulate(int v);
  void note_created(int from, Port p, int w) {
    t.log.push_back({-1, F.nodes[from].id, p, F.nodes[w].id, true});
    check_size();
  }
};

class LazyProbe final : public Probe {
 public:
  LazyProbe(Session& s, int start, int exec) : s_(s), exec_(exec) { add(start); }

  std::uint64_t n() const override {
    s_.t.read_n = true;
    s_.check_size();
    return s_.t.declared_n;
  }
  int max_degree() const override { return kDelta; }
  VertexView start() override { return views_[0]; }

  VertexView query(Local w, Port p) override {
    if (w >= views_.size()) throw ContractViolation("query of unvisited vertex (local " + std::to_string(w) + ")");
    if (!views_[w].has_port(p))
      throw ContractViolation("query of invalid port " + std::to_string(p) + " at vertex id " +
                              std::to_string(views_[w].id));
    if (++queries_ > s_.opts.budget) throw BudgetExhausted{queries_};
    bool created = false;
    int u = s_.F.resolve(node_[w], p, created);
    auto it = local_.find(u);
    Local lu = it == local_.end() ? add(u) : it->second;
    s_.t.log.push_back({exec_, views_[w].id, p, views_[lu].id, created});
    if (created) s_.check_size();
    return views_[lu];
  }

  const VertexView& view(Local w) const override {
    if (w >= views_.size()) throw ContractViolation("view of unvisited vertex");
    return views_[w];
  }

  RandomStream random(Local w) override {
    if (w >= views_.size()) throw ContractViolation("random stream of unvisited vertex");
    return RandomStream(0, views_[w].id, &cursor_, true);
  }

  std::size_t queries() const { return queries_; }
  std::size_t vol() const { return views_.size(); }

 private:
  Local add(int u) {
    Local l = static_cast<Local>(views_.size());
    local_[u] = l;
    node_.push_back(u);
    const LNode& n = s_.F.nodes[u];
    views_.push_back({l, n.id, n.degree, n.mask, n.lab});
    return l;
  }

  Session& s_;
  int exec_;
  std::size_t queries_ = 0;
  std::uint64_t cursor_ = 0;
  std::vector<int> node_;
  std::deque<VertexView> views_;
  std::unordered_map<int, Local> local_;
};

Output Session::simulate(int v) {
  if (auto it = cache.find(v); it != cache.end()) return it->second;
  int exec = static_cast<int>(t.executions.size());
  LazyProbe probe(*this, v, exec);
  Output o;
  try {
    o = alg->run(probe);
  } catch (const BudgetExhausted&) {
    t.queries_used += probe.queries() - 1;
    t.max_queries = std::max(t.max_queries, probe.queries() - 1);
    throw;
  } catch (const SizeExceeded&) {
    t.queries_used += probe.queries();
    t.max_queries = std::max(t.max_queries, probe.queries());
    throw;
  }
  t.executions.push_back({F.nodes[v].id, o, probe.queries(), probe.vol()});
  t.queries_used += probe.queries();
  t.max_queries = std::max(t.max_queries, probe.queries());
  cache[v] = o;
  return o;
}

// Builds the static instance: materialized nodes, gadgets already added to F, then padding.
void finish(Session& s, Problem problem, int k, Color pad_color) {
  AdversaryTranscript& t = s.t;
  t.constructed = s.F.size();
  std::size_t n = t.constructed;
  if (t.read_n) {
    if (n > t.declared_n) {
      t.status = AdversaryStatus::Resisted;
      t.reason = "completed instance has " + std::to_string(n) + " nodes, more than the declared " +
                 std::to_string(t.declared_n);
      return;
    }
    n = t.declared_n;
  }
  std::vector<EdgeSpec> edges;
  std::vector<std::uint64_t> ids(n);
  Labeling lab(n);
  for (std::size_t u = 0; u < n; ++u) {
    ids[u] = u + 1;
    if (u >= s.F.size()) {
      lab[u].color = pad_color;
      continue;
    }
    const LNode& nd = s.F.nodes[u];
    lab[u] = nd.lab;
    for (Port p = 1; p <= kDelta; ++p) {
      if (!nd.has(p)) continue;
      int v = nd.to[p - 1];
      if (v < 0) throw std::logic_error("dangling port left after completion");
      if (static_cast<std::size_t>(v) > u) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), p, nd.back[p - 1]});
    }
  }
  t.instance = {build_graph(n, edges, ids, kDelta), lab};

  EngineOptions eo;
  eo.deny_random = true;
  eo.step_budget = std::max<std::size_t>(t.max_queries, n * kDelta) + 1;
  RunAllResult all = run_all(t.instance.g, t.instance.lab, *s.alg, 0, eo);
  t.outputs = all.out;
  for (const auto& e : t.executions)
    if (t.outputs[t.instance.g.index_of(e.start_id)] != e.output)
      throw std::logic_error("lazy answers diverge from the completed instance at id " + std::to_string(e.start_id));
  ProblemParams pp;
  pp.k = k;
  t.verdict = validate(problem, t.instance.g, t.instance.lab, t.outputs, pp);
  for (const auto& v : t.verdict.violations) t.failing.push_back(t.instance.g.id(v.v));
  std::sort(t.failing.begin(), t.failing.end());
  t.failing.erase(std::unique(t.failing.begin(), t.failing.end()), t.failing.end());
  if (t.verdict.valid) {
    t.status = AdversaryStatus::Resisted;
    t.reason = "completed instance validates";
  } else {
    t.status = AdversaryStatus::Counterexample;
    t.reason = "condition " + t.verdict.violations.front().condition + " fails at id " +
               std::to_string(t.instance.g.id(t.verdict.violations.front().v));
  }
}

Color other(Color c) { return c == Color::R ? Color::B : Color::R; }
bool is_sym(const Output& o, Sym s) { return o.sym == s; }

// ---- Hierarchical-THC process ----

class HthcProcess {
 public:
  HthcProcess(Session& s, int k) : s_(s), k_(k) {
    s_.F.grow = [this](int u, Port p) { return grow(u, p); };
  }

  // Returns the predicted failing condition.
  std::string run() {
    int x = phase_top();
    if (x < 0) return predicted_;
    for (int lvl = k_ - 1; lvl >= 2; --lvl) {
      x = phase_mid(x, lvl);
      if (x < 0) return predicted_;
    }
    phase_one(x);
    return predicted_;
  }

  void complete() {
    auto& F = s_.F;
    for (std::size_t u = 0; u < F.size(); ++u) {
      for (Port p = 1; p <= kDelta; ++p) {
        LNode& nd = F.nodes[u];
        if (!nd.pending(p)) continue;
        int lvl = nd.level;
        Color c = nd.lab.color;
        int iu = static_cast<int>(u);
        if (p == 1) {
          NodeLabel l;
          l.left_child = 1;
          l.color = c;
          if (lvl > 1) l.right_child = 2;
          int r = lvl > 1 ? F.add(l, lvl, {1, 2}) : F.add(l, lvl, {1});
          F.link(r, 1, iu, 1);
          if (lvl > 1) F.link(r, 2, chain(lvl - 1, c), 1);
        } else {
          F.link(iu, p, chain(p == 2 ? lvl : lvl - 1, c), 1);
        }
      }
    }
  }

 private:
  NodeLabel node_label(int lvl, Color c) const {
    NodeLabel l;
    l.parent = 1;
    l.left_child = 2;
    if (lvl > 1) l.right_child = 3;
    l.color = c;
    return l;
  }
  int make(int lvl, Color c) {
    return lvl > 1 ? s_.F.add(node_label(lvl, c), lvl, {1, 2, 3}) : s_.F.add(node_label(lvl, c), lvl, {1, 2});
  }
  int grow(int u, Port p) {
    const LNode nd = s_.F.nodes[u];
    int w = make(p == 3 ? nd.level - 1 : nd.level, nd.lab.color);
    if (p == 1)
      s_.F.link(w, 2, u, 1);
    else
      s_.F.link(u, p, w, 1);
    return w;
  }
  // Level-lvl leaf whose right children descend to level 1.
  int chain(int lvl, Color c) {
    NodeLabel l;
    l.parent = 1;
    l.color = c;
    if (lvl > 1) l.right_child = 2;
    int a = lvl > 1 ? s_.F.add(l, lvl, {1, 2}) : s_.F.add(l, lvl, {1});
    if (lvl > 1) s_.F.link(a, 2, chain(lvl - 1, c), 1);
    return a;
  }

  int top(int v) const {
    const auto& F = s_.F;
    while (true) {
      int p = F.nodes[v].to[0];
      if (p < 0 || F.nodes[p].to[1] != v) return v;
      v = p;
    }
  }
  int bottom(int v) const {
    while (s_.F.nodes[v].to[1] >= 0) v = s_.F.nodes[v].to[1];
    return v;
  }
  std::vector<int> run_between(int from, int to) const {
    std::vector<int> path{from};
    while (path.back() != to) {
      int nx = s_.F.nodes[path.back()].to[1];
      if (nx < 0) throw std::logic_error("splice did not join the path");
      path.push_back(nx);
    }
    return path;
  }
  int rc_of(int x) {
    LNode& nd = s_.F.nodes[x];
    if (nd.to[2] < 0) {
      int w = grow(x, 3);
      s_.note_created(x, 3, w);
    }
    return s_.F.nodes[x].to[2];
  }
  int fresh(int lvl, Color c) {
    int v = make(lvl, c);
    s_.t.log.push_back({-1, 0, kNoPort, s_.F.nodes[v].id, true});
    s_.check_size();
    return v;
  }
  void splice(int upper_bottom, int lower) {
    int u = top(lower);
    s_.F.link(upper_bottom, 2, u, 1);
    s_.t.log.push_back({-1, s_.F.nodes[upper_bottom].id, 2, s_.F.nodes[u].id, false});
  }
  int stop(const std::string& cond) {
    predicted_ = cond;
    return -1;
  }

  // Ends with a level-k node answering X, or a forced failure.
  int phase_top() {
    auto adm = [](const Output& o) { return o.is_color() || is_sym(o, Sym::X); };
    int vb = fresh(k_, Color::B);
    Output ob = s_.simulate(vb);
    if (is_sym(ob, Sym::X)) return vb;
    if (ob.sym != Sym::B) return stop(ob.sym == Sym::R ? "claim" : "5");
    int vr = fresh(k_, Color::R);
    Output orr = s_.simulate(vr);
    if (is_sym(orr, Sym::X)) return vr;
    if (orr.sym != Sym::R) return stop(orr.sym == Sym::B ? "claim" : "5");
    splice(bottom(vr), vb);
    std::vector<int> path = run_between(vr, vb);
    PathSearch r = search_path(path.size(), [&](std::size_t i) { return s_.simulate(path[i]); }, adm);
    if (r.kind == PathSearch::FoundX) return path[r.index];
    return stop(r.kind == PathSearch::Adjacent ? "5b" : "5");
  }

  int phase_mid(int x, int lvl) {
    const std::string parent_cond = s_.F.nodes[x].level == k_ ? "5a" : "4";
    auto adm = [](const Output& o) { return o.is_color() || is_sym(o, Sym::D) || is_sym(o, Sym::X); };
    int v = rc_of(x);
    Color c = s_.F.nodes[v].lab.color;
    Output o = s_.simulate(v);
    if (is_sym(o, Sym::X)) return v;
    if (is_sym(o, Sym::D)) return stop(parent_cond);
    if (o != Output::color(c)) return stop(o.is_color() ? "claim" : "4");
    int w = fresh(lvl, other(c));
    Output ow = s_.simulate(w);
    if (is_sym(ow, Sym::X)) return w;
    if (ow != Output::color(other(c)) && !is_sym(ow, Sym::D)) return stop(ow.is_color() ? "claim" : "4");
    splice(bottom(v), w);
    std::vector<int> path = run_between(v, w);
    PathSearch r = search_path(path.size(), [&](std::size_t i) { return s_.simulate(path[i]); }, adm);
    if (r.kind == PathSearch::FoundX) return path[r.index];
    return stop("4");
  }

  void phase_one(int x) {
    int v = rc_of(x);
    Color c = s_.F.nodes[v].lab.color;
    Output o = s_.simulate(v);
    if (is_sym(o, Sym::D)) {
      stop(s_.F.nodes[x].level == k_ ? "5a" : "4");
      return;
    }
    if (o != Output::color(c)) {
      stop(o.is_color() ? "claim" : "3a");
      return;
    }
    int w = bottom(v);
    NodeLabel l;
    l.parent = 1;
    l.color = other(c);
    int leaf = s_.F.add(l, 1, {1});
    s_.F.link(w, 2, leaf, 1);
    s_.t.log.push_back({-1, s_.F.nodes[w].id, 2, s_.F.nodes[leaf].id, true});
    stop("3b");
  }

  Session& s_;
  int k_;
  std::string predicted_;
};

std::uint64_t hthc_default_n(int k, std::size_t budget) {
  double m = static_cast<double>(budget) + 2;
  return static_cast<std::uint64_t>(std::ceil(kHthcSizeConstant * k * k * m * std::log2(m)));
}

}  // namespace

PathSearch search_path(std::size_t len, const std::function<Output(std::size_t)>& out_at,
                       const std::function<bool(const Output&)>& admissible) {
  if (len < 2) throw std::invalid_argument("path search needs two ends");
  PathSearch r;
  auto look = [&](std::size_t i, Output& o) {
    ++r.evaluations;
    o = out_at(i);
    r.index = i;
    if (is_sym(o, Sym::X)) {
      r.kind = PathSearch::FoundX;
      return true;
    }
    if (!admissible(o)) {
      r.kind = PathSearch::Inadmissible;
      return true;
    }
    return false;
  };
  std::size_t lo = 0, hi = len - 1;
  Output olo, ohi, om;
  if (look(lo, olo) || look(hi, ohi)) return r;
  if (olo == ohi) throw std::invalid_argument("path ends must answer differently");
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (look(mid, om)) return r;
    if (om == olo)
      lo = mid;
    else
      hi = mid;
  }
  r.kind = PathSearch::Adjacent;
  r.index = lo;
  return r;
}

AdversaryTranscript leafcolor_adversary(std::shared_ptr<const ProbeAlgorithm> alg, const AdversaryOptions& opts) {
  if (!alg) throw std::invalid_argument("no algorithm");
  AdversaryTranscript t;
  t.problem = Problem::LeafColoring;
  t.alg = alg;
  t.declared_n = opts.declared_n ? opts.declared_n : 3 * static_cast<std::uint64_t>(opts.budget) + 3;
  Session s(alg, opts, t);
  s.F.grow = [&s](int u, Port p) {
    NodeLabel l;
    l.parent = 1;
    l.left_child = 2;
    l.right_child = 3;
    l.color = Color::R;
    int w = s.F.add(l, 1, {1, 2, 3});
    s.F.link(u, p, w, 1);
    return w;
  };
  NodeLabel root;
  root.left_child = 1;
  root.right_child = 2;
  root.color = Color::R;
  int v0 = s.F.add(root, 1, {1, 2});
  Output o;
  try {
    o = s.simulate(v0);
  } catch (const BudgetExhausted& b) {
    t.materialized = s.F.size();
    t.status = AdversaryStatus::BudgetExhausted;
    t.reason = "budget exhausted, no counterexample (" + std::to_string(b.queries) + " queries)";
    return t;
  } catch (const SizeExceeded&) {
    t.materialized = s.F.size();
    t.status = AdversaryStatus::Resisted;
    t.reason = "materialized tree outgrew the declared n";
    return t;
  }
  t.materialized = s.F.size();
  Color chi1 = o.sym == Sym::R ? Color::B : Color::R;
  t.predicted_condition = "2";
  for (std::size_t u = 0; u < t.materialized; ++u)
    for (Port p : {Port{1}, Port{2}, Port{3}}) {
      if (!s.F.nodes[u].pending(p)) continue;
      NodeLabel l;
      l.parent = 1;
      l.color = chi1;
      int w = s.F.add(l, 1, {1});
      s.F.link(static_cast<int>(u), p, w, 1);
    }
  finish(s, Problem::LeafColoring, 1, chi1);
  return t;
}

AdversaryTranscript hthc_adversary(std::shared_ptr<const ProbeAlgorithm> alg, int k, const AdversaryOptions& opts) {
  if (!alg) throw std::invalid_argument("no algorithm");
  if (k < 2) throw std::invalid_argument("hthc adversary needs k >= 2");
  AdversaryTranscript t;
  t.problem = Problem::Hthc;
  t.k = k;
  t.alg = alg;
  t.declared_n = opts.declared_n ? opts.declared_n : hthc_default_n(k, opts.budget);
  Session s(alg, opts, t);
  HthcProcess proc(s, k);
  try {
    t.predicted_condition = proc.run();
  } catch (const BudgetExhausted& b) {
    t.materialized = s.F.size();
    t.status = AdversaryStatus::BudgetExhausted;
    t.reason = "budget exhausted, no counterexample (" + std::to_string(b.queries) + " queries)";
    return t;
  } catch (const SizeExceeded&) {
    t.materialized = s.F.size();
    t.status = AdversaryStatus::Resisted;
    t.reason = "materialized instance outgrew the declared n";
    return t;
  }
  t.materialized = s.F.size();
  proc.complete();
  finish(s, Problem::Hthc, k, Color::R);
  return t;
}

Verdict replay_transcript(const AdversaryTranscript& t) {
  if (!t.alg) throw std::invalid_argument("transcript carries no algorithm");
  if (t.instance.g.n() == 0) throw std::invalid_argument("transcript has no completed instance");
  const PortedGraph& g = t.instance.g;
  EngineOptions eo;
  eo.deny_random = true;
  eo.step_budget = std::max<std::size_t>(t.max_queries, g.n() * kDelta) + 1;
  for (std::size_t i = 0; i < t.executions.size(); ++i) {
    const auto& e = t.executions[i];
    RunResult r = run_execution(g, t.instance.lab, *t.alg, g.index_of(e.start_id), 0, eo);
    if (r.output != e.output) throw std::runtime_error("replay output differs at id " + std::to_string(e.start_id));
    std::size_t j = 0;
    for (const auto& ev : t.log) {
      if (ev.execution != static_cast<int>(i)) continue;
      if (j >= r.exec.log.size() || r.exec.log[j].from_id != ev.from_id || r.exec.log[j].port != ev.port ||
          r.exec.log[j].revealed_id != ev.revealed_id)
        throw std::runtime_error("replay query " + std::to_string(j + 1) + " differs in execution from id " +
                                 std::to_string(e.start_id));
      ++j;
    }
    if (j != r.exec.log.size()) throw std::runtime_error("replay made extra queries from id " + std::to_string(e.start_id));
  }
  RunAllResult all = run_all(g, t.instance.lab, *t.alg, 0, eo);
  if (all.out != t.outputs) throw std::runtime_error("replay outputs differ from the transcript");
  ProblemParams pp;
  pp.k = t.k;
  return validate(t.problem, g, t.instance.lab, all.out, pp);
}

std::string format_adversary_transcript(const AdversaryTranscript& t) {
  std::string s = "# adversary " + std::string(problem_name(t.problem)) + " k=" + std::to_string(t.k) + " alg=" +
                  (t.alg ? t.alg->name() : "?") + "\n";
  s += "# status " + std::string(to_string(t.status)) + ": " + t.reason + "\n";
  s += "# predicted " + (t.predicted_condition.empty() ? std::string("-") : t.predicted_condition) + "\n";
  s += "# materialized " + std::to_string(t.materialized) + " constructed " + std::to_string(t.constructed) +
       " n " + std::to_string(t.instance.g.n()) + " declared " + std::to_string(t.declared_n) +
       (t.read_n ? " (read)" : "") + "\n";
  s += "# queries " + std::to_string(t.queries_used) + " max " + std::to_string(t.max_queries) + "\n";
  int cur = -2;
  std::size_t q = 0;
  for (const auto& ev : t.log) {
    if (ev.execution != cur) {
      cur = ev.execution;
      q = 0;
      if (cur >= 0) {
        const auto& e = t.executions[cur];
        s += "exec " + std::to_string(cur) + " start " + std::to_string(e.start_id) + " -> " + to_string(e.output) +
             "\n";
      } else {
        s += "process\n";
      }
    }
    if (cur >= 0)
      s += std::to_string(++q) + " query(" + std::to_string(ev.from_id) + ", " + std::to_string(ev.port) + ") -> " +
           std::to_string(ev.revealed_id) + (ev.materialized ? " +" : "") + "\n";
    else if (ev.port == kNoPort)
      s += "new " + std::to_string(ev.revealed_id) + "\n";
    else
      s += (ev.materialized ? "grow " : "splice ") + std::to_string(ev.from_id) + " " + std::to_string(ev.port) +
           " " + std::to_string(ev.revealed_id) + "\n";
  }
  for (std::size_t i = 0; i < t.executions.size(); ++i) {
    bool seen = false;
    for (const auto& ev : t.log) seen |= ev.execution == static_cast<int>(i);
    if (!seen)
      s += "exec " + std::to_string(i) + " start " + std::to_string(t.executions[i].start_id) + " -> " +
           to_string(t.executions[i].output) + "\n";
  }
  if (t.instance.g.n()) s += serialize_verdict(t.instance.g, t.verdict);
  return s;
}

namespace {

class ConstantSolver final : public ProbeAlgorithm {
 public:
  explicit ConstantSolver(Output o) : o_(o) {}
  Output run(Probe&) const override { return o_; }
  std::string name() const override { return "const-" + to_string(o_); }

 private:
  Output o_;
};

Output color_of(const NodeLabel& l) { return l.color == Color::None ? Output::color(Color::R) : Output::color(l.color); }

class LeftWalk final : public ProbeAlgorithm {
 public:
  explicit LeftWalk(int steps) : steps_(steps) {}
  Output run(Probe& p) const override {
    Explorer ex(p);
    auto v = ex.start();
    for (int i = 0; i <= steps_; ++i) {
      Port lc = ex.label(v).left_child;
      if (lc == kNoPort || !ex.view(v).has_port(lc)) return color_of(ex.label(v));
      if (i == steps_) break;
      v = ex.nbr(v, lc);
      if (v == Explorer::none) break;
    }
    return color_of(ex.label(ex.start()));
  }
  std::string name() const override { return "left-walk-" + std::to_string(steps_); }

 private:
  int steps_;
};

class GreedyIdWalk final : public ProbeAlgorithm {
 public:
  explicit GreedyIdWalk(int steps) : steps_(steps) {}
  Output run(Probe& p) const override {
    Explorer ex(p);
    auto v = ex.start();
    for (int i = 0; i < steps_; ++i) {
      NodeLabel l = ex.label(v);
      auto best = Explorer::none;
      for (Port c : {l.left_child, l.right_child}) {
        if (c == kNoPort || !ex.view(v).has_port(c)) continue;
        auto w = ex.nbr(v, c);
        if (w != Explorer::none && (best == Explorer::none || ex.id(w) < ex.id(best))) best = w;
      }
      if (best == Explorer::none) return color_of(l);
      v = best;
    }
    return color_of(ex.label(ex.start()));
  }
  std::string name() const override { return "greedy-id-" + std::to_string(steps_); }

 private:
  int steps_;
};

class BfsMajority final : public ProbeAlgorithm {
 public:
  explicit BfsMajority(int depth) : depth_(depth) {}
  Output run(Probe& p) const override {
    Explorer ex(p);
    std::vector<std::pair<Explorer::Handle, int>> q{{ex.start(), 0}};
    int r = 0, b = 0;
    for (std::size_t h = 0; h < q.size(); ++h) {
      auto [v, d] = q[h];
      NodeLabel l = ex.label(v);
      if (l.left_child == kNoPort && l.right_child == kNoPort) {
        (l.color == Color::B ? b : r)++;
        continue;
      }
      if (d == depth_) continue;
      for (Port c : {l.left_child, l.right_child}) {
        if (c == kNoPort || !ex.view(v).has_port(c)) continue;
        auto w = ex.nbr(v, c);
        if (w != Explorer::none) q.push_back({w, d + 1});
      }
    }
    return Output::color(b > r ? Color::B : Color::R);
  }
  std::string name() const override { return "bfs-majority-" + std::to_string(depth_); }

 private:
  int depth_;
};

class ThresholdX final : public ProbeAlgorithm {
 public:
  ThresholdX(int k, int t) : k_(k), t_(t) {}
  Output run(Probe& p) const override {
    Explorer ex(p);
    if (nav::level(ex, ex.start(), k_) > t_) return sym_out(Sym::X);
    return color_of(ex.label(ex.start()));
  }
  std::string name() const override { return "threshold-x-" + std::to_string(t_); }

 private:
  int k_, t_;
};

int suffix_int(const std::string& name, const std::string& prefix) {
  std::string rest = name.substr(prefix.size());
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad parameter in solver name '" + name + "'");
  return std::stoi(rest);
}

}  // namespace

std::unique_ptr<ProbeAlgorithm> constant_solver(Output o) { return std::make_unique<ConstantSolver>(o); }
std::unique_ptr<ProbeAlgorithm> left_walk_solver(int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  return std::make_unique<LeftWalk>(steps);
}
std::unique_ptr<ProbeAlgorithm> greedy_id_solver(int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  return std::make_unique<GreedyIdWalk>(steps);
}
std::unique_ptr<ProbeAlgorithm> bfs_majority_solver(int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  return std::make_unique<BfsMajority>(depth);
}
std::unique_ptr<ProbeAlgorithm> threshold_x_solver(int k, int t) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return std::make_unique<ThresholdX>(k, t);
}

std::unique_ptr<ProbeAlgorithm> make_adversary_target(const std::string& name, const SolverConfig& cfg) {
  auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
  if (starts("const-")) {
    Output o = parse_output(name.substr(6));
    if (o.sym == Sym::None) throw std::invalid_argument("bad output in solver name '" + name + "'");
    return constant_solver(o);
  }
  if (starts("left-walk-")) return left_walk_solver(suffix_int(name, "left-walk-"));
  if (starts("greedy-id-")) return greedy_id_solver(suffix_int(name, "greedy-id-"));
  if (starts("bfs-majority-")) return bfs_majority_solver(suffix_int(name, "bfs-majority-"));
  if (starts("threshold-x-")) return threshold_x_solver(cfg.k, suffix_int(name, "threshold-x-"));
  return make_solver(name, cfg);
}

}  // namespace lclvol
