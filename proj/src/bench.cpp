#include "lclvol/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "lclvol/adversary.hpp"
#include "lclvol/generators.hpp"
#include "lclvol/random.hpp"
#include "lclvol/structure.hpp"
#include "lclvol/text_io.hpp"

namespace lclvol {

std::vector<std::uint64_t> default_sweep() {
  std::vector<std::uint64_t> s;
  for (int e = 7; e <= 13; ++e) s.push_back((1ull << e) - 1);
  return s;
}

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw BenchError("config: '" + key + "' wants a non-negative integer, got '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::out_of_range&) {
    throw BenchError("config: '" + key + "' out of range");
  }
}

int to_int(const std::string& key, const std::string& v) {
  std::uint64_t x = to_u64(key, v);
  if (x > 1'000'000) throw BenchError("config: '" + key + "' out of range");
  return static_cast<int>(x);
}

std::vector<std::uint64_t> parse_sweep(const std::string& v) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_u64("sweep", trim(item)));
  return out;
}

bool is_pow2_minus1(std::uint64_t n) { return n >= 1 && ((n + 1) & n) == 0; }

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig c;
  bool sweep_set = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw BenchError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "problem") c.problem = val;
    else if (key == "solver") c.solver = val;
    else if (key == "generator") c.generator = val;
    else if (key == "sweep") { c.sweep = parse_sweep(val); sweep_set = true; }
    else if (key == "seeds") c.seeds = to_u64(key, val);
    else if (key == "master_seed") c.master_seed = to_u64(key, val);
    else if (key == "k") c.solver_cfg.k = to_int(key, val);
    else if (key == "l") c.solver_cfg.l = to_int(key, val);
    else if (key == "tau") c.solver_cfg.tau = to_int(key, val);
    else if (key == "c") c.solver_cfg.c_const = to_int(key, val);
    else if (key == "output") c.output = val;
    else if (key == "threads") c.threads = static_cast<unsigned>(std::max(1, to_int(key, val)));
    else if (key.rfind("gen.", 0) == 0 && key.size() > 4) c.gen_params[key.substr(4)] = val;
    else throw BenchError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (!sweep_set) c.sweep = default_sweep();
  check_experiment_config(c);
  return c;
}

ExperimentConfig read_experiment_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw BenchError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_experiment_config(ss.str());
}

void check_experiment_config(const ExperimentConfig& cfg) {
  auto prob = parse_problem(cfg.problem);
  if (!prob) throw BenchError("unknown problem '" + cfg.problem + "'");
  if (auto info = find_solver(cfg.solver); info && info->problem != *prob)
    throw BenchError("solver '" + cfg.solver + "' solves " + problem_name(info->problem) + ", not " + cfg.problem);
  try {
    make_adversary_target(cfg.solver, cfg.solver_cfg);
  } catch (const std::invalid_argument& e) {
    throw BenchError(std::string("solver: ") + e.what());
  }
  static const std::vector<std::string> families{"complete-binary", "hier", "random-tree", "hybrid", "hh"};
  if (std::find(families.begin(), families.end(), cfg.generator) == families.end())
    throw BenchError("unknown or unsweepable generator '" + cfg.generator + "'");
  if (cfg.sweep.empty()) throw BenchError("empty sweep");
  for (std::size_t i = 1; i < cfg.sweep.size(); ++i)
    if (cfg.sweep[i] <= cfg.sweep[i - 1]) throw BenchError("sweep must be strictly increasing");
  if (cfg.generator == "complete-binary")
    for (auto n : cfg.sweep)
      if (!is_pow2_minus1(n)) throw BenchError("complete-binary sizes are 2^d - 1, got " + std::to_string(n));
  if (cfg.seeds == 0) throw BenchError("seeds must be positive");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  return splitmix64(master ^ splitmix64(counter + 1));
}

namespace {

Instance make_cell_instance(const ExperimentConfig& cfg, std::uint64_t n, std::uint64_t seed) {
  auto p = cfg.gen_params;
  p["seed"] = std::to_string(seed);
  if (cfg.generator == "complete-binary") {
    int d = 0;
    while ((2ull << d) - 1 < n) ++d;
    p["depth"] = std::to_string(d);
  } else {
    p["n"] = std::to_string(n);
  }
  p.try_emplace("k", std::to_string(cfg.solver_cfg.k));
  p.try_emplace("l", std::to_string(cfg.solver_cfg.l));
  return generate(cfg.generator, p);
}

BenchRow run_cell(const ExperimentConfig& cfg, Problem prob, bool randomized, std::uint64_t n, std::uint64_t seed) {
  Instance inst;
  try {
    inst = make_cell_instance(cfg, n, seed);
  } catch (const std::exception& e) {
    throw BenchError("generator " + cfg.generator + " n=" + std::to_string(n) + ": " + e.what());
  }
  SolverConfig sc = cfg.solver_cfg;
  sc.seed = seed;
  auto alg = make_adversary_target(cfg.solver, sc);
  Labeling lab = normalize_labeling(inst.g, inst.lab);
  EngineOptions o;
  o.deny_random = !randomized;
  RunAllResult run;
  try {
    run = run_all(inst.g, lab, *alg, seed, o);
  } catch (const std::exception& e) {
    throw BenchError("solver " + cfg.solver + " on " + cfg.generator + " n=" + std::to_string(inst.g.n()) +
                     " seed=" + std::to_string(seed) + ": " + e.what());
  }
  ProblemParams pp{sc.k, sc.l};
  BenchRow row;
  row.n = inst.g.n();
  row.seed = seed;
  row.relation_violations = run.summary.relation_violations;
  row.valid = validate(prob, inst.g, lab, run.out, pp).valid;
  if (row.valid) {
    row.valid_fraction = 1.0;
    row.cost = run.summary;
  } else {
    std::size_t ok = 0;
    for (Vertex v = 0; v < inst.g.n(); ++v) ok += local_check(prob, inst.g, lab, run.out, v, pp);
    row.valid_fraction = inst.g.n() ? static_cast<double>(ok) / static_cast<double>(inst.g.n()) : 1.0;
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_experiment(const ExperimentConfig& cfg) {
  check_experiment_config(cfg);
  Problem prob = *parse_problem(cfg.problem);
  auto info = find_solver(cfg.solver);
  bool randomized = info ? info->randomized : false;

  const std::size_t cells = cfg.sweep.size() * cfg.seeds;
  std::vector<BenchRow> rows(cells);
  auto job = [&](std::size_t i) {
    rows[i] = run_cell(cfg, prob, randomized, cfg.sweep[i / cfg.seeds], derive_seed(cfg.master_seed, i));
  };
  unsigned t = std::min<std::size_t>(cfg.threads, cells);
  if (t <= 1) {
    for (std::size_t i = 0; i < cells; ++i) job(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::string> errors(t);
    for (unsigned w = 0; w < t; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < cells; i += t) job(i);
        } catch (const std::exception& e) {
          errors[w] = e.what();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (!e.empty()) throw BenchError(e);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& a, const BenchRow& b) { return a.n != b.n ? a.n < b.n : a.seed < b.seed; });
  return rows;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

std::string bench_csv(const ExperimentConfig& cfg, const std::vector<BenchRow>& rows) {
  std::string s = "# lclvol bench v1 problem=" + cfg.problem + " solver=" + cfg.solver +
                  " generator=" + cfg.generator + " master_seed=" + std::to_string(cfg.master_seed) +
                  " k=" + std::to_string(cfg.solver_cfg.k) + " tau=" + std::to_string(cfg.solver_cfg.tau) + "\n";
  s += kBenchCsvColumns;
  s += '\n';
  for (const auto& r : rows) {
    s += std::to_string(r.n) + ',' + std::to_string(r.seed) + ',';
    if (r.cost)
      s += std::to_string(r.cost->max_dist) + ',' + fmt(r.cost->mean_dist) + ',' + std::to_string(r.cost->max_vol) +
           ',' + fmt(r.cost->mean_vol) + ',';
    else
      s += ",,,,";
    s += fmt(r.valid_fraction) + ',';
    if (r.cost) s += std::to_string(r.cost->truncations);
    s += ',' + std::to_string(r.relation_violations);
    s += '\n';
  }
  return s;
}

ScalingFit fit_loglog(const std::vector<std::pair<double, double>>& xy) {
  std::vector<double> xs;
  for (auto [x, y] : xy) {
    if (!(x > 0) || !(y > 0)) throw BenchError("fit needs positive values");
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  if (std::unique(xs.begin(), xs.end()) - xs.begin() < 4) throw BenchError("fit needs at least 4 distinct sizes");
  const double m = static_cast<double>(xy.size());
  double sx = 0, sy = 0;
  for (auto [x, y] : xy) sx += std::log2(x), sy += std::log2(y);
  double mx = sx / m, my = sy / m, sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    double dx = std::log2(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log2(y) - my);
  }
  ScalingFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0;
  for (auto [x, y] : xy) {
    double e = std::log2(y) - (f.intercept + f.slope * std::log2(x));
    rss += e * e;
  }
  f.residual = std::sqrt(rss / m);
  f.points = xy.size();
  return f;
}

ScalingFit fit_exponent(const std::string& csv, const std::string& column) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> head;
  std::map<double, double> best;
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!l.empty() && l.back() == ',') out.emplace_back();
    return out;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (head.empty()) {
      head = cells;
      continue;
    }
    auto at = [&](const std::string& name) -> std::string {
      auto it = std::find(head.begin(), head.end(), name);
      if (it == head.end()) throw BenchError("csv has no column '" + name + "'");
      auto i = static_cast<std::size_t>(it - head.begin());
      return i < cells.size() ? cells[i] : "";
    };
    std::string nv = at("n"), cv = at(column);
    if (cv.empty()) continue;
    double n = std::stod(nv), c = std::stod(cv);
    auto [it, fresh] = best.try_emplace(n, c);
    if (!fresh) it->second = std::max(it->second, c);
  }
  if (head.empty()) throw BenchError("csv has no header");
  std::vector<std::pair<double, double>> xy(best.begin(), best.end());
  return fit_loglog(xy);
}

}  // namespace lclvol
