// lclvol command line: gen, solve, validate, bench, adversary, mpc, fit.
// Exit codes: 0 ok, 1 invalid output, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lclvol/adversary.hpp"
#include "lclvol/bench.hpp"
#include "lclvol/generators.hpp"
#include "lclvol/mpc.hpp"
#include "lclvol/problems.hpp"
#include "lclvol/solvers.hpp"
#include "lclvol/structure.hpp"
#include "lclvol/text_io.hpp"

using namespace lclvol;

namespace {

constexpr int kOk = 0, kInvalid = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, std::string> m;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param wants key=value, got '" + s + "'");
    m[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return m;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

struct InstanceArgs {
  std::string path;
  std::string family;
  std::vector<std::string> params;

  void add(CLI::App* app, const std::string& default_family = "") {
    family = default_family;
    app->add_option("-i,--instance", path, "instance file");
    app->add_option("--family", family, "generator family when no instance file is given");
    app->add_option("-p,--param", params, "generator key=value");
  }
  Instance load() const {
    if (!path.empty()) return read_instance_file(path);
    if (family.empty()) throw UsageError("need --instance or --family");
    return generate(family, parse_params(params));
  }
};

struct SolverArgs {
  std::string name;
  SolverConfig cfg;
  void add(CLI::App* app, bool required = true) {
    auto* o = app->add_option("-s,--solver", name, "solver name");
    if (required) o->required();
    app->add_option("-k", cfg.k, "k (hierarchy depth)");
    app->add_option("-l", cfg.l, "l (hh hierarchical depth)");
    app->add_option("--tau", cfg.tau, "walk truncation constant");
    app->add_option("--cconst", cfg.c_const, "waypoint constant");
    app->add_option("--seed", cfg.seed, "seed");
  }
};

Problem solver_problem(const std::string& name) {
  auto info = find_solver(name);
  if (!info) throw UsageError("unknown solver '" + name + "'");
  return info->problem;
}

void report(const Verdict& v, const PortedGraph& g) {
  if (v.valid)
    std::cerr << "valid\n";
  else
    std::cerr << "invalid: " << v.violations.size() << " violation(s)\n" << serialize_verdict(g, v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lclvol: probe-model LCL experiments"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string gen_family, gen_out;
  std::vector<std::string> gen_params;
  gen->add_option("family", gen_family, "complete-binary|disjointness|hier|random-tree|hybrid|hh")->required();
  gen->add_option("-p,--param", gen_params, "key=value");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "run a solver from every vertex and validate");
  InstanceArgs solve_in;
  SolverArgs solve_s;
  std::string solve_out;
  bool solve_costs = false;
  solve_in.add(solve);
  solve_s.add(solve);
  solve->add_option("-o,--out", solve_out, "outputs file (default stdout)");
  solve->add_flag("--costs", solve_costs, "print the cost summary to stderr");

  auto* val = app.add_subcommand("validate", "check an output labeling");
  InstanceArgs val_in;
  std::string val_outputs, val_problem;
  ProblemParams val_pp;
  val_in.add(val);
  val->add_option("-O,--outputs", val_outputs, "outputs file")->required();
  val->add_option("--problem", val_problem, "leafcolor|btl|hthc|hybrid|hh")->required();
  val->add_option("-k", val_pp.k, "k");
  val->add_option("-l", val_pp.l, "l");

  auto* bench = app.add_subcommand("bench", "run an experiment sweep");
  std::string bench_cfg, bench_out;
  bench->add_option("config", bench_cfg, "key=value config file")->required();
  bench->add_option("-o,--out", bench_out, "CSV file (overrides the config)");

  auto* adv = app.add_subcommand("adversary", "play the lower-bound adversary against a deterministic solver");
  std::string adv_problem;
  SolverArgs adv_s;
  std::size_t adv_budget = 1000;
  std::uint64_t adv_n = 0;
  bool adv_full = false;
  adv->add_option("--problem", adv_problem, "leafcolor|hthc")->required()->check(CLI::IsMember({"leafcolor", "hthc"}));
  adv_s.add(adv);
  adv->add_option("--budget", adv_budget, "queries per execution");
  adv->add_option("--declared-n", adv_n, "n reported to the solver");
  adv->add_flag("--transcript", adv_full, "print the full transcript");

  auto* mpc = app.add_subcommand("mpc", "simulate a solver in the MPC model");
  InstanceArgs mpc_in;
  SolverArgs mpc_s;
  MpcConfig mpc_cfg;
  std::string mpc_trace;
  mpc_in.add(mpc, "complete-binary");
  mpc_s.add(mpc);
  mpc->add_option("--c", mpc_cfg.c, "local memory exponent");
  mpc->add_option("--space", mpc_cfg.space, "items per machine (0 = unbounded)");
  mpc->add_option("--S", mpc_cfg.S, "messages per machine per round (0 = default)");
  mpc->add_option("--trace", mpc_trace, "trace CSV file (default stdout)");

  auto* fit = app.add_subcommand("fit", "fit a log-log scaling exponent");
  std::string fit_csv, fit_col = "max_vol";
  fit->add_option("csv", fit_csv, "bench CSV")->required();
  fit->add_option("--column", fit_col, "cost column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      emit(gen_out, serialize_instance(generate(gen_family, parse_params(gen_params))));
      return kOk;
    }
    if (*solve) {
      Instance inst = solve_in.load();
      solver_problem(solve_s.name);
      auto r = solve_and_validate(inst, solve_s.name, solve_s.cfg);
      emit(solve_out, serialize_outputs(inst.g, r.run.out));
      if (solve_costs) {
        const auto& s = r.run.summary;
        std::cerr << "max_dist=" << s.max_dist << " mean_dist=" << s.mean_dist << " max_vol=" << s.max_vol
                  << " mean_vol=" << s.mean_vol << " truncations=" << s.truncations << "\n";
      }
      report(r.verdict, inst.g);
      return r.verdict.valid ? kOk : kInvalid;
    }
    if (*val) {
      auto prob = parse_problem(val_problem);
      if (!prob) throw UsageError("unknown problem '" + val_problem + "'");
      Instance inst = val_in.load();
      OutputLabeling out = parse_outputs(inst.g, read_file(val_outputs));
      Verdict v = validate(*prob, inst.g, inst.lab, out, val_pp);
      std::cout << serialize_verdict(inst.g, v);
      report(v, inst.g);
      return v.valid ? kOk : kInvalid;
    }
    if (*bench) {
      ExperimentConfig cfg;
      try {
        cfg = read_experiment_config(bench_cfg);
      } catch (const BenchError& e) {
        throw UsageError(e.what());
      }
      if (!bench_out.empty()) cfg.output = bench_out;
      auto rows = run_experiment(cfg);
      emit(cfg.output, bench_csv(cfg, rows));
      for (const auto& r : rows)
        if (!r.valid) return kInvalid;
      return kOk;
    }
    if (*adv) {
      AdversaryOptions o;
      o.budget = adv_budget;
      o.declared_n = adv_n;
      std::shared_ptr<ProbeAlgorithm> alg = make_adversary_target(adv_s.name, adv_s.cfg);
      AdversaryTranscript t = adv_problem == "leafcolor" ? leafcolor_adversary(alg, o)
                                                         : hthc_adversary(alg, adv_s.cfg.k, o);
      if (adv_full) std::cout << format_adversary_transcript(t);
      std::cout << "status " << to_string(t.status) << "\n"
                << "reason " << t.reason << "\n"
                << "n " << t.instance.g.n() << "\n"
                << "queries " << t.queries_used << "\n";
      if (t.status == AdversaryStatus::Counterexample) {
        Verdict v = replay_transcript(t);
        std::cout << "replay " << (v.valid ? "valid" : "invalid") << "\n";
      }
      return kOk;
    }
    if (*mpc) {
      if (mpc_in.path.empty() && mpc_in.family == "complete-binary" && mpc_in.params.empty())
        mpc_in.params = {"depth=10"};
      Instance inst = mpc_in.load();
      Problem prob = solver_problem(mpc_s.name);
      auto alg = make_solver(mpc_s.name, mpc_s.cfg);
      Labeling lab = normalize_labeling(inst.g, inst.lab);
      MpcResult r = mpc_simulate(inst.g, lab, *alg, mpc_cfg, mpc_s.cfg.seed);
      emit(mpc_trace, trace_csv(r.trace));
      std::cerr << "rounds=" << r.trace.rounds << " supersteps=" << r.trace.supersteps << " S=" << r.trace.S
                << " max_sent=" << r.trace.max_sent << " max_received=" << r.trace.max_received
                << " peak_stored=" << r.trace.peak_stored << " max_vol=" << r.trace.max_vol << "\n";
      if (r.trace.violated) {
        std::cerr << "aborted: " << r.trace.violation << "\n";
        return kInvalid;
      }
      Verdict v = validate(prob, inst.g, lab, r.out, {mpc_s.cfg.k, mpc_s.cfg.l});
      report(v, inst.g);
      return v.valid ? kOk : kInvalid;
    }
    if (*fit) {
      ScalingFit f = fit_exponent(read_file(fit_csv), fit_col);
      std::cout << "slope " << f.slope << "\nintercept " << f.intercept << "\nresidual " << f.residual
                << "\npoints " << f.points << "\n";
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
