// raft-res: rare-event simulation for repairable dynamic fault trees.
//
// Subcommands:
//   gen       emit a benchmark case study as extended Galileo
//   validate  parse + lower a tree, report its shape
//   ifun      print the compositional importance function
//   run       estimate unreliability/unavailability under a budget
//   bench     run a benchmark row the way the experiment tables do
#include <atomic>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "raftres/casestudies.hpp"
#include "raftres/engine.hpp"
#include "raftres/errors.hpp"
#include "raftres/estimators.hpp"
#include "raftres/report.hpp"
#include "raftres/thresholds.hpp"

using namespace raftres;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitBadCombination = 2;
constexpr int kExitNoAscent = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
}

struct ThresholdChoice {
  enum class Kind { kExpectedSuccess, kSequential, kManual } kind =
      Kind::kExpectedSuccess;
  int pilots = 32;
  ThresholdScheme manual;
};

// "es:32", "seq:8", or "manual:2@4,5@4" (level@effort pairs).
ThresholdChoice parse_thresholds(const std::string& text) {
  ThresholdChoice choice;
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "es" || head == "seq") {
    choice.kind = head == "es" ? ThresholdChoice::Kind::kExpectedSuccess
                               : ThresholdChoice::Kind::kSequential;
    if (!tail.empty()) choice.pilots = std::stoi(tail);
    if (choice.pilots < 2)
      throw CLI::ValidationError("--thresholds", "pilot count must be >= 2");
    return choice;
  }
  if (head == "manual") {
    choice.kind = ThresholdChoice::Kind::kManual;
    std::stringstream ss(tail);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto at = item.find('@');
      long long level = std::stoll(item.substr(0, at));
      int effort = at == std::string::npos ? 2 : std::stoi(item.substr(at + 1));
      if (level < 1 || effort < 1)
        throw CLI::ValidationError("--thresholds", "bad manual level spec");
      choice.manual.levels.push_back(level);
      choice.manual.efforts.push_back(effort);
    }
    if (choice.manual.empty())
      throw CLI::ValidationError("--thresholds", "manual list is empty");
    for (std::size_t i = 1; i < choice.manual.levels.size(); ++i)
      if (choice.manual.levels[i] <= choice.manual.levels[i - 1])
        throw CLI::ValidationError("--thresholds",
                                   "levels must be strictly increasing");
    return choice;
  }
  throw CLI::ValidationError("--thresholds",
                             "expected es:N, seq:N or manual:...");
}

struct RunOptions {
  std::string tree_path;
  std::string metric = "unrel";
  double time_bound = 1000.0;
  std::string algo = "smc";
  std::string thresholds = "es:32";
  int effort_override = 0;
  double budget_seconds = 0;
  long long budget_samples = 0;
  int replications = 1;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  int threads = 0;
  std::string output;
  std::string csv;
  std::string trace_log;
  bool fallback_smc = false;
  bool dump_ifun = false;
  // steady-state knobs
  double warmup = 1000.0;
  double batch_duration = 1000.0;
};

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RAFT_RES_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void write_trace_log(const FaultTree& tree, const ImportanceModel* imp,
                     std::uint64_t seed, double horizon,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << "time,event,element,importance,top\n";
  TraceController tc(tree, imp, RngStream(seed).derive(0xdeb));
  tc.set_observer([&](const Event& e, Imp importance, bool top) {
    const char* kind = e.kind == EventKind::kFail        ? "fail"
                       : e.kind == EventKind::kRepair    ? "repair"
                       : e.kind == EventKind::kActivate  ? "activate"
                                                         : "dormant-fail";
    out << e.time << ',' << kind << ',' << tree.nodes[e.element].name << ','
        << imp_to_string(importance) << ',' << (top ? 1 : 0) << '\n';
  });
  while (tc.elapsed() < horizon)
    if (!tc.step()) break;
}

int cmd_run(const RunOptions& opt) {
  Metric metric;
  if (opt.metric == "unrel") metric = Metric::kUnreliability;
  else if (opt.metric == "unavail") metric = Metric::kUnavailability;
  else throw CLI::ValidationError("--metric", "expected unrel or unavail");

  Algorithm algo;
  if (opt.algo == "smc") algo = Algorithm::kSmc;
  else if (opt.algo == "restart") algo = Algorithm::kRestart;
  else if (opt.algo == "fe") algo = Algorithm::kFixedEffort;
  else throw CLI::ValidationError("--algo", "expected smc, restart or fe");

  if (algo == Algorithm::kFixedEffort && metric == Metric::kUnavailability) {
    std::cerr << "error: fixed effort cannot estimate steady-state metrics\n";
    return kExitBadCombination;
  }

  Budget budget;
  if (opt.budget_samples > 0 && opt.budget_seconds > 0)
    throw CLI::ValidationError("--budget", "give exactly one budget kind");
  if (opt.budget_samples > 0) budget.samples = opt.budget_samples;
  else budget.seconds = opt.budget_seconds > 0 ? opt.budget_seconds : 10.0;

  FaultTree tree = lower(slurp(opt.tree_path));
  RngStream root(opt.seed);

  ImportanceModel importance;
  bool need_importance = algo != Algorithm::kSmc || opt.dump_ifun;
  if (need_importance) importance = build_importance(tree);
  if (opt.dump_ifun) std::cout << describe(importance);

  if (!opt.trace_log.empty())
    write_trace_log(tree, need_importance ? &importance : nullptr, opt.seed,
                    metric == Metric::kUnreliability ? opt.time_bound
                                                     : 10 * opt.batch_duration,
                    opt.trace_log);

  ThresholdChoice choice = parse_thresholds(opt.thresholds);
  ThresholdScheme scheme;
  bool degraded_to_smc = false;
  if (algo != Algorithm::kSmc) {
    if (choice.kind == ThresholdChoice::Kind::kManual) {
      scheme = choice.manual;
      for (Imp level : scheme.levels)
        if (level > importance.max_top())
          throw ValidationError("manual level exceeds the maximum importance");
    } else {
      EnginePilotSource pilots(tree, importance, opt.time_bound,
                               root.derive(0x9901));
      try {
        scheme = choice.kind == ThresholdChoice::Kind::kExpectedSuccess
                     ? select_thresholds_es(importance.max_top(), pilots,
                                            choice.pilots)
                     : select_thresholds_seq(importance.max_top(), pilots,
                                             choice.pilots);
      } catch (const NoAscentError& e) {
        if (!opt.fallback_smc) {
          std::cerr << "error: " << e.what()
                    << " (rerun with --fallback-smc to degrade)\n";
          return kExitNoAscent;
        }
        std::cerr << "warning: " << e.what() << "; falling back to smc\n";
        degraded_to_smc = true;
      }
      if (scheme.empty() && !degraded_to_smc) {
        std::cerr << "warning: no usable thresholds (max importance "
                  << imp_to_string(importance.max_top())
                  << "); estimating with plain monte carlo\n";
        degraded_to_smc = true;
      }
    }
  }
  Algorithm effective = degraded_to_smc ? Algorithm::kSmc : algo;

  RunReport report;
  report.tree = opt.tree_path;
  report.metric = metric;
  report.time_bound = opt.time_bound;
  report.algorithm = effective;
  report.thresholds = opt.thresholds;
  report.scheme = scheme;
  report.seed = opt.seed;
  report.include_timing = budget.samples == 0;
  report.records.resize(opt.replications);

  int workers = std::min(thread_count(opt.threads), opt.replications);
  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      int r = next.fetch_add(1);
      if (r >= opt.replications) break;
      RngStream rep_rng = root.derive(0x7e9, static_cast<std::uint64_t>(r));
      Estimate est;
      switch (effective) {
        case Algorithm::kSmc:
          est = metric == Metric::kUnreliability
                    ? smc_unreliability(tree, opt.time_bound, budget, rep_rng,
                                        1, opt.confidence)
                    : (budget.samples > 0
                           ? smc_unavailability(
                                 tree,
                                 opt.warmup +
                                     budget.samples * opt.batch_duration,
                                 opt.warmup, static_cast<int>(budget.samples),
                                 rep_rng, opt.confidence)
                           : smc_unavailability_budget(
                                 tree, budget.seconds, opt.warmup,
                                 opt.batch_duration, rep_rng, opt.confidence));
          break;
        case Algorithm::kFixedEffort:
          est = fixed_effort_unreliability(tree, importance, opt.time_bound,
                                           scheme, opt.effort_override, budget,
                                           rep_rng, 1, opt.confidence);
          break;
        case Algorithm::kRestart:
          est = metric == Metric::kUnreliability
                    ? restart_unreliability(tree, importance, opt.time_bound,
                                            scheme, budget, rep_rng, 1,
                                            opt.confidence)
                    : (budget.samples > 0
                           ? restart_unavailability(
                                 tree, importance, scheme,
                                 opt.warmup +
                                     budget.samples * opt.batch_duration,
                                 opt.warmup, static_cast<int>(budget.samples),
                                 rep_rng, opt.confidence)
                           : restart_unavailability_budget(
                                 tree, importance, scheme, budget.seconds,
                                 opt.warmup, opt.batch_duration, rep_rng,
                                 opt.confidence));
          break;
      }
      report.records[r] = {r, opt.seed, effective, est};
    }
  };
  std::vector<std::future<void>> futs;
  for (int w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();

  write_file(opt.output, to_json(report));
  if (!opt.csv.empty()) write_file(opt.csv, to_csv(report));
  return 0;
}

struct BenchRow {
  CaseFamily family;
  int param;
  Metric metric;
  double timeout_seconds;
};

// Metric and per-configuration simulation time of the benchmark table.
const std::vector<BenchRow>& bench_rows() {
  static const std::vector<BenchRow> kRows = {
      {CaseFamily::kVot, 2, Metric::kUnavailability, 300},
      {CaseFamily::kVot, 3, Metric::kUnavailability, 1800},
      {CaseFamily::kVot, 4, Metric::kUnavailability, 10800},
      {CaseFamily::kHecs, 1, Metric::kUnavailability, 5},
      {CaseFamily::kHecs, 2, Metric::kUnavailability, 20},
      {CaseFamily::kHecs, 3, Metric::kUnavailability, 120},
      {CaseFamily::kHecs, 4, Metric::kUnavailability, 600},
      {CaseFamily::kHecs, 5, Metric::kUnavailability, 3600},
      {CaseFamily::kRc, 3, Metric::kUnavailability, 30},
      {CaseFamily::kRc, 4, Metric::kUnavailability, 300},
      {CaseFamily::kRc, 5, Metric::kUnavailability, 1800},
      {CaseFamily::kRc, 6, Metric::kUnavailability, 7200},
      {CaseFamily::kRwc, 1, Metric::kUnavailability, 30},
      {CaseFamily::kRwc, 2, Metric::kUnavailability, 300},
      {CaseFamily::kRwc, 3, Metric::kUnavailability, 1800},
      {CaseFamily::kRwc, 4, Metric::kUnavailability, 7200},
      {CaseFamily::kDspare, 3, Metric::kUnreliability, 300},
      {CaseFamily::kDspare, 4, Metric::kUnreliability, 1800},
      {CaseFamily::kDspare, 5, Metric::kUnreliability, 10800},
      {CaseFamily::kHecs, 2, Metric::kUnreliability, 20},
      {CaseFamily::kHecs, 3, Metric::kUnreliability, 300},
      {CaseFamily::kHecs, 4, Metric::kUnreliability, 1800},
      {CaseFamily::kHecs, 5, Metric::kUnreliability, 10800},
      {CaseFamily::kFtpp, 4, Metric::kUnreliability, 30},
      {CaseFamily::kFtpp, 5, Metric::kUnreliability, 240},
      {CaseFamily::kFtpp, 6, Metric::kUnreliability, 2400},
      {CaseFamily::kHvc, 4, Metric::kUnreliability, 90},
      {CaseFamily::kHvc, 5, Metric::kUnreliability, 300},
      {CaseFamily::kHvc, 6, Metric::kUnreliability, 1800},
      {CaseFamily::kHvc, 7, Metric::kUnreliability, 7200},
      {CaseFamily::kRwc, 2, Metric::kUnreliability, 300},
      {CaseFamily::kRwc, 3, Metric::kUnreliability, 1800},
      {CaseFamily::kRwc, 4, Metric::kUnreliability, 7200},
  };
  return kRows;
}

int cmd_bench(const std::string& row_name, const std::string& metric_override,
              double budget_override, int replications,
              const std::vector<std::string>& algos, std::uint64_t seed,
              int threads, const std::string& outdir) {
  auto dash = row_name.find('-');
  if (dash == std::string::npos)
    throw CLI::ValidationError("--row", "expected FAMILY-PARAM, e.g. RC-3");
  CaseFamily family = family_from_string(row_name.substr(0, dash));
  int param = std::stoi(row_name.substr(dash + 1));

  const BenchRow* row = nullptr;
  for (const auto& r : bench_rows()) {
    if (r.family != family || r.param != param) continue;
    if (!metric_override.empty()) {
      Metric want = metric_override == "unrel" ? Metric::kUnreliability
                                               : Metric::kUnavailability;
      if (r.metric != want) continue;
    }
    row = &r;
    break;
  }
  if (!row) throw ValidationError("no benchmark row named " + row_name);

  GeneratedCase gen = generate({family, param});
  if (!gen.warning.empty()) std::cerr << "warning: " << gen.warning << "\n";
  std::string tree_file =
      (outdir.empty() ? "." : outdir) + "/" + row_name + ".dft";
  write_file(tree_file, gen.text);

  for (const std::string& algo : algos) {
    if (algo == "fe" && row->metric == Metric::kUnavailability) {
      std::cerr << "bench " << row_name
                << ": skipping fe for the steady-state metric\n";
      continue;
    }
    RunOptions opt;
    opt.tree_path = tree_file;
    opt.metric = row->metric == Metric::kUnreliability ? "unrel" : "unavail";
    opt.algo = algo;
    opt.thresholds = algo == "fe" ? "es:32" : "seq:5";
    opt.budget_seconds =
        budget_override > 0 ? budget_override : row->timeout_seconds;
    opt.replications = replications;
    opt.seed = seed;
    opt.threads = threads;
    opt.output = (outdir.empty() ? "." : outdir) + "/" + row_name + "_" +
                 algo + ".json";
    std::cerr << "bench " << row_name << " " << algo << " ("
              << opt.budget_seconds << " s x " << replications << ")\n";
    int rc = cmd_run(opt);
    if (rc != 0) return rc;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rare-event simulation for repairable dynamic fault trees"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a benchmark case study");
  std::string family_name_arg = "RC";
  int param = 3;
  std::string gen_out;
  gen->add_option("--family", family_name_arg,
                  "VOT, DSPARE, HECS, FTPP, RC, HVC or RWC");
  gen->add_option("--param", param, "difficulty parameter");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  auto* validate = app.add_subcommand("validate", "parse and check a tree");
  std::string tree_path;
  validate->add_option("tree", tree_path, "extended Galileo file")->required();

  auto* ifun = app.add_subcommand("ifun", "print the importance function");
  std::string ifun_path;
  ifun->add_option("tree", ifun_path, "extended Galileo file")->required();

  auto* run = app.add_subcommand("run", "estimate a dependability metric");
  RunOptions opt;
  run->add_option("--tree", opt.tree_path, "extended Galileo file")
      ->required();
  run->add_option("--metric", opt.metric, "unrel or unavail");
  run->add_option("--T", opt.time_bound, "mission time for unrel");
  run->add_option("--algo", opt.algo, "smc, restart or fe");
  run->add_option("--thresholds", opt.thresholds,
                  "es:N, seq:N or manual:l@e,...");
  run->add_option("--effort", opt.effort_override, "uniform effort override");
  run->add_option("--budget-seconds", opt.budget_seconds, "wall-clock budget");
  run->add_option("--budget-samples", opt.budget_samples,
                  "deterministic unit budget");
  run->add_option("--replications", opt.replications, "independent estimates");
  run->add_option("--seed", opt.seed, "master seed");
  run->add_option("--confidence", opt.confidence, "CI confidence level");
  run->add_option("--threads", opt.threads,
                  "worker threads (or RAFT_RES_THREADS)");
  run->add_option("--output", opt.output, "JSON report file (default stdout)");
  run->add_option("--csv", opt.csv, "also write per-replication CSV");
  run->add_option("--trace-log", opt.trace_log, "debug CSV of one trace");
  run->add_option("--warmup", opt.warmup, "steady-state warmup time");
  run->add_option("--batch-duration", opt.batch_duration,
                  "steady-state batch length");
  run->add_flag("--fallback-smc", opt.fallback_smc,
                "degrade to smc when no thresholds emerge");
  run->add_flag("--dump-ifun", opt.dump_ifun, "print the importance function");

  auto* bench = app.add_subcommand("bench", "run a benchmark row");
  std::string row, suite = "table2", bench_metric, outdir;
  double bench_budget = 0;
  int bench_reps = 10;
  std::vector<std::string> bench_algos = {"smc", "restart"};
  std::uint64_t bench_seed = 1;
  int bench_threads = 0;
  bench->add_option("--suite", suite, "benchmark suite (table2)");
  bench->add_option("--row", row, "row name, e.g. RC-3")->required();
  bench->add_option("--metric", bench_metric, "unrel or unavail");
  bench->add_option("--budget-seconds", bench_budget, "override row budget");
  bench->add_option("--replications", bench_reps, "CIs per instance");
  bench->add_option("--algos", bench_algos, "algorithms to compare");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--threads", bench_threads, "worker threads");
  bench->add_option("--outdir", outdir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      GeneratedCase result =
          generate({family_from_string(family_name_arg), param});
      if (!result.warning.empty())
        std::cerr << "warning: " << result.warning << "\n";
      write_file(gen_out, result.text);
      return 0;
    }
    if (validate->parsed()) {
      FaultTree tree = lower(slurp(tree_path));
      std::cout << "ok: " << tree.size() << " nodes, " << tree.basics.size()
                << " basic elements, " << tree.spares.size() << " spares, "
                << tree.rboxes.size() << " repair boxes, top '"
                << tree.nodes[tree.top].name << "'\n";
      return 0;
    }
    if (ifun->parsed()) {
      FaultTree tree = lower(slurp(ifun_path));
      std::cout << describe(build_importance(tree));
      return 0;
    }
    if (run->parsed()) return cmd_run(opt);
    if (bench->parsed()) {
      if (suite != "table2")
        throw ValidationError("unknown suite '" + suite + "'");
      return cmd_bench(row, bench_metric, bench_budget, bench_reps,
                       bench_algos, bench_seed, bench_threads, outdir);
    }
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
