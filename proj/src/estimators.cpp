#include "raftres/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <mutex>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "raftres/errors.hpp"

namespace raftres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

int resolve_threads(int threads, long long units) {
  if (threads < 1) threads = 1;
  return static_cast<int>(std::min<long long>(threads, std::max(1ll, units)));
}

}  // namespace

Interval wilson_interval(long long hits, long long trials, double confidence) {
  if (hits == 0) return {0, 0, true};
  boost::math::normal_distribution<> normal;
  double z = boost::math::quantile(normal, 0.5 + confidence / 2);
  double n = static_cast<double>(trials);
  double p = static_cast<double>(hits) / n;
  double z2 = z * z;
  double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  double half = z / (1 + z2 / n) *
                std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {clamp01(center - half), clamp01(center + half), false};
}

Interval student_t_interval(const std::vector<double>& samples,
                            double confidence) {
  bool all_zero = std::all_of(samples.begin(), samples.end(),
                              [](double x) { return x == 0; });
  if (samples.empty() || all_zero) return {0, 0, true};
  double n = static_cast<double>(samples.size());
  double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() == 1) return {clamp01(mean), clamp01(mean), false};
  double ss = 0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / (n - 1));
  if (sd == 0) return {clamp01(mean), clamp01(mean), false};
  boost::math::students_t_distribution<> dist(n - 1);
  double t = boost::math::quantile(dist, 0.5 + confidence / 2);
  double half = t * sd / std::sqrt(n);
  return {clamp01(mean - half), clamp01(mean + half), false};
}

Interval build_ci(const std::vector<double>& samples, double confidence,
                  bool bernoulli) {
  if (!bernoulli) return student_t_interval(samples, confidence);
  long long hits = 0;
  for (double x : samples) hits += x != 0;
  return wilson_interval(hits, static_cast<long long>(samples.size()),
                         confidence);
}

// ---------------------------------------------------------------------------
// Standard Monte Carlo

Estimate smc_unreliability(const FaultTree& tree, double time_bound,
                           Budget budget, RngStream rng, int threads,
                           double confidence) {
  double started = now_seconds();
  long long hits = 0;
  long long trials = 0;

  auto run_block = [&](long long begin, long long end) {
    TraceController tc(tree, nullptr, rng.derive(1, 0));
    long long block_hits = 0;
    for (long long i = begin; i < end; ++i) {
      tc.reseed(rng.derive(1, static_cast<std::uint64_t>(i)));
      tc.init();
      block_hits += tc.run_transient(time_bound).hit;
    }
    return block_hits;
  };

  if (budget.samples > 0) {
    trials = budget.samples;
    int workers = resolve_threads(threads, trials);
    std::vector<std::future<long long>> futs;
    long long chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      long long begin = w * chunk;
      long long end = std::min(trials, begin + chunk);
      if (begin >= end) break;
      futs.push_back(std::async(std::launch::async, run_block, begin, end));
    }
    for (auto& f : futs) hits += f.get();
  } else {
    double deadline = started + budget.seconds;
    int workers = resolve_threads(threads, 1ll << 40);
    std::atomic<long long> next{0};
    std::atomic<long long> total_hits{0}, total_trials{0};
    const long long kChunk = 256;
    auto worker = [&] {
      while (now_seconds() < deadline) {
        long long begin = next.fetch_add(kChunk);
        long long h = run_block(begin, begin + kChunk);
        total_hits += h;
        total_trials += kChunk;
      }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
    hits = total_hits;
    trials = total_trials;
  }

  Interval ci = wilson_interval(hits, trials, confidence);
  Estimate est;
  est.metric = Metric::kUnreliability;
  est.time_bound = time_bound;
  est.point = trials ? static_cast<double>(hits) / trials : 0;
  est.ci_low = ci.lo;
  est.ci_high = ci.hi;
  est.confidence = confidence;
  est.samples = trials;
  est.null_estimate = ci.null_estimate;
  est.wall_seconds = now_seconds() - started;
  return est;
}

namespace {

// Accumulates weighted (failed, total) time per fixed-duration batch.
class BatchAccumulator {
 public:
  BatchAccumulator(double warmup, double batch_duration)
      : warmup_(warmup), duration_(batch_duration) {}

  void add(double t0, double t1, bool failed, double weight = 1.0) {
    t0 = std::max(t0, warmup_);
    if (t1 <= t0) return;
    int first = static_cast<int>((t0 - warmup_) / duration_);
    int last = static_cast<int>((t1 - warmup_) / duration_);
    for (int b = first; b <= last; ++b) {
      double lo = warmup_ + b * duration_;
      double hi = lo + duration_;
      double seg = std::min(t1, hi) - std::max(t0, lo);
      if (seg <= 0) continue;
      ensure(b);
      total_[b] += weight * seg;
      if (failed) failed_[b] += weight * seg;
    }
  }

  // Ratio per completed batch (those fully inside the horizon).
  std::vector<double> ratios(double horizon) const {
    int complete =
        static_cast<int>(std::floor((horizon - warmup_) / duration_ + 1e-9));
    complete = std::min<int>(complete, static_cast<int>(total_.size()));
    std::vector<double> out;
    for (int b = 0; b < complete; ++b)
      out.push_back(total_[b] > 0 ? failed_[b] / total_[b] : 0.0);
    return out;
  }

  bool any_events() const { return saw_event_; }
  void mark_event() { saw_event_ = true; }

 private:
  void ensure(int b) {
    if (b >= static_cast<int>(total_.size())) {
      total_.resize(b + 1, 0.0);
      failed_.resize(b + 1, 0.0);
    }
  }

  double warmup_, duration_;
  std::vector<double> failed_, total_;
  bool saw_event_ = false;
};

Estimate unavail_estimate(const std::vector<double>& ratios, double confidence,
                          double wall, long long batches) {
  Interval ci = student_t_interval(ratios, confidence);
  Estimate est;
  est.metric = Metric::kUnavailability;
  est.point = ratios.empty() ? 0.0
              : std::accumulate(ratios.begin(), ratios.end(), 0.0) /
                    static_cast<double>(ratios.size());
  est.ci_low = ci.lo;
  est.ci_high = ci.hi;
  est.confidence = confidence;
  est.samples = batches;
  est.null_estimate = ci.null_estimate;
  est.wall_seconds = wall;
  return est;
}

// Walks one plain trace, accumulating top-state segments until `horizon`
// (or forever under a wall-clock stop). Returns false when the trace
// deadlocks with the top state frozen (the rest of the horizon is filled
// with the frozen state).
void walk_unavailability(TraceController& tc, BatchAccumulator& acc,
                         double horizon) {
  while (tc.elapsed() < horizon) {
    double at = tc.elapsed();
    bool failed = tc.top_failed();
    double dt = tc.next_event_in();
    if (dt == kInf) {
      acc.add(at, horizon, failed);
      return;
    }
    double next = std::min(at + dt, horizon);
    acc.add(at, next, failed);
    if (at + dt > horizon) return;
    tc.step();
    acc.mark_event();
  }
}

}  // namespace

Estimate smc_unavailability(const FaultTree& tree, double horizon,
                            double warmup, int batches, RngStream rng,
                            double confidence) {
  if (batches < 2 || horizon <= warmup || warmup < 0)
    throw DegenerateBatchesError("need horizon > warmup >= 0 and >= 2 batches");
  double started = now_seconds();
  double duration = (horizon - warmup) / batches;
  BatchAccumulator acc(warmup, duration);
  TraceController tc(tree, nullptr, rng.derive(2, 0));
  walk_unavailability(tc, acc, horizon);
  auto ratios = acc.ratios(horizon);
  return unavail_estimate(ratios, confidence, now_seconds() - started,
                          static_cast<long long>(ratios.size()));
}

Estimate smc_unavailability_budget(const FaultTree& tree, double seconds,
                                   double warmup, double batch_duration,
                                   RngStream rng, double confidence) {
  if (batch_duration <= 0 || warmup < 0)
    throw DegenerateBatchesError("need batch duration > 0 and warmup >= 0");
  double started = now_seconds();
  double deadline = started + seconds;
  BatchAccumulator acc(warmup, batch_duration);
  TraceController tc(tree, nullptr, rng.derive(2, 0));
  double horizon = warmup;
  while (now_seconds() < deadline) {
    horizon += batch_duration;
    walk_unavailability(tc, acc, horizon);
    if (tc.next_event_in() == kInf) break;  // frozen forever
  }
  auto ratios = acc.ratios(horizon);
  return unavail_estimate(ratios, confidence, now_seconds() - started,
                          static_cast<long long>(ratios.size()));
}

// ---------------------------------------------------------------------------
// Fixed Effort

double fixed_effort_pass(const std::vector<int>& efforts,
                         const FeStageRunner& run_stage,
                         std::vector<SimState> initial_pool) {
  std::vector<SimState> pool = std::move(initial_pool);
  double estimate = 1.0;
  for (std::size_t k = 0; k < efforts.size(); ++k) {
    FeStageOutcome out = run_stage(static_cast<int>(k), pool, efforts[k]);
    estimate *= static_cast<double>(out.successes) / efforts[k];
    if (out.successes == 0) return 0.0;
    pool = std::move(out.entries);
  }
  return estimate;
}

namespace {

// Stage targets: every scheme level, plus the top event itself when the
// scheme stops below the maximum importance.
std::vector<Imp> fe_targets(const ThresholdScheme& scheme, Imp max_top) {
  std::vector<Imp> targets = scheme.levels;
  if (targets.empty() || targets.back() < max_top) targets.push_back(max_top);
  return targets;
}

std::vector<int> fe_efforts(const ThresholdScheme& scheme, int stages,
                            int effort_override) {
  std::vector<int> efforts;
  for (int k = 0; k < stages; ++k) {
    int e;
    if (effort_override > 0) {
      e = effort_override;
    } else if (k < scheme.size()) {
      e = scheme.efforts[k];
    } else {
      e = scheme.efforts.empty() ? 8 : scheme.efforts.back();
    }
    efforts.push_back(std::max(1, e));
  }
  return efforts;
}

}  // namespace

Estimate fixed_effort_unreliability(const FaultTree& tree,
                                    const ImportanceModel& importance,
                                    double time_bound,
                                    const ThresholdScheme& scheme,
                                    int effort_override, Budget budget,
                                    RngStream rng, int threads,
                                    double confidence) {
  double started = now_seconds();
  std::vector<Imp> targets = fe_targets(scheme, importance.max_top());
  std::vector<int> efforts =
      fe_efforts(scheme, static_cast<int>(targets.size()), effort_override);

  auto one_pass = [&](long long pass_id) {
    TraceController tc(tree, &importance, rng.derive(3, 0));
    auto runner = [&](int stage, const std::vector<SimState>& pool,
                      int effort) {
      FeStageOutcome out;
      for (int i = 0; i < effort; ++i) {
        tc.reseed(rng.derive(3, static_cast<std::uint64_t>(pass_id),
                             (static_cast<std::uint64_t>(stage) << 32) |
                                 static_cast<std::uint64_t>(i)));
        // The initial region draws fresh traces; initial clock
        // valuations are part of the trace, not shared state.
        if (stage == 0)
          tc.init();
        else
          tc.restore(pool[i % pool.size()]);
        ThresholdStop stop =
            tc.run_until_threshold(-1, targets[stage], time_bound);
        if (stop.outcome == ThresholdOutcome::kUp ||
            stop.outcome == ThresholdOutcome::kTopEvent) {
          ++out.successes;
          out.entries.push_back(tc.state());
        }
      }
      return out;
    };
    return fixed_effort_pass(efforts, runner, {SimState{}});
  };

  std::vector<double> passes;
  if (budget.samples > 0) {
    passes.resize(budget.samples);
    int workers = resolve_threads(threads, budget.samples);
    std::atomic<long long> next{0};
    auto worker = [&] {
      while (true) {
        long long i = next.fetch_add(1);
        if (i >= budget.samples) break;
        passes[i] = one_pass(i);
      }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  } else {
    double deadline = started + budget.seconds;
    std::atomic<long long> next{0};
    std::mutex mu;
    int workers = resolve_threads(threads, 1ll << 40);
    auto worker = [&] {
      while (now_seconds() < deadline) {
        long long i = next.fetch_add(1);
        double p = one_pass(i);
        std::lock_guard<std::mutex> lock(mu);
        passes.push_back(p);
      }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }

  Interval ci = student_t_interval(passes, confidence);
  Estimate est;
  est.metric = Metric::kUnreliability;
  est.time_bound = time_bound;
  est.point = passes.empty() ? 0
              : std::accumulate(passes.begin(), passes.end(), 0.0) /
                    static_cast<double>(passes.size());
  est.ci_low = ci.lo;
  est.ci_high = ci.hi;
  est.confidence = confidence;
  est.samples = static_cast<long long>(passes.size());
  est.null_estimate = ci.null_estimate;
  est.wall_seconds = now_seconds() - started;
  return est;
}

// ---------------------------------------------------------------------------
// RESTART

namespace {

struct RestartContext {
  const FaultTree& tree;
  const ImportanceModel& importance;
  const ThresholdScheme& scheme;
  std::vector<double> level_weight;  // level_weight[k] = prod_{j<=k} 1/e_j
  RngStream rng;
  long long clone_counter = 0;
  RestartDiagnostics* diagnostics = nullptr;

  RestartContext(const FaultTree& t, const ImportanceModel& imp,
                 const ThresholdScheme& s, RngStream r)
      : tree(t), importance(imp), scheme(s), rng(r) {
    level_weight.assign(scheme.size() + 1, 1.0);
    for (int k = 0; k < scheme.size(); ++k)
      level_weight[k + 1] = level_weight[k] / scheme.efforts[k];
  }

  int level_of(Imp value) const {
    int lvl = 0;
    while (lvl < scheme.size() && value >= scheme.levels[lvl]) ++lvl;
    return lvl;
  }

  RngStream next_clone_stream() {
    return rng.derive(4, static_cast<std::uint64_t>(clone_counter++));
  }
};

// One RESTART trace for the transient metric. Splits on every threshold
// up-crossing, is truncated below its creation level, and ends at the top
// event (contributing its weight), the time bound, or a deadlock.
double restart_transient_trace(RestartContext& ctx, TraceController& tc,
                               int creation_level, double time_bound,
                               int depth) {
  double contribution = 0;
  int lvl = creation_level;
  while (true) {
    if (tc.top_failed()) {
      contribution += ctx.level_weight[lvl];
      if (ctx.diagnostics)
        ctx.diagnostics->hit_weights.push_back(ctx.level_weight[lvl]);
      return contribution;
    }
    while (lvl < ctx.scheme.size() && tc.importance() >= ctx.scheme.levels[lvl]) {
      ++lvl;
      if (ctx.diagnostics) {
        auto& sums = ctx.diagnostics->launched_weight_sum;
        if (sums.size() < static_cast<std::size_t>(lvl)) sums.resize(lvl, 0.0);
        sums[lvl - 1] += ctx.level_weight[lvl] * ctx.scheme.efforts[lvl - 1];
      }
      for (int j = 0; j < ctx.scheme.efforts[lvl - 1] - 1; ++j) {
        TraceController clone = tc.clone(ctx.next_clone_stream());
        contribution +=
            restart_transient_trace(ctx, clone, lvl, time_bound, depth + 1);
      }
    }
    if (creation_level > 0 &&
        tc.importance() < ctx.scheme.levels[creation_level - 1])
      return contribution;  // truncated
    while (lvl > creation_level &&
           tc.importance() < ctx.scheme.levels[lvl - 1])
      --lvl;  // dropped below a split level; re-split on the way back up
    double dt = tc.next_event_in();
    if (dt == kInf) return contribution;
    if (tc.elapsed() + dt > time_bound) return contribution;
    tc.step();
  }
}

double restart_run_transient(const FaultTree& tree,
                             const ImportanceModel& importance,
                             const ThresholdScheme& scheme, double time_bound,
                             RngStream run_rng,
                             RestartDiagnostics* diagnostics) {
  RestartContext ctx(tree, importance, scheme, run_rng);
  ctx.diagnostics = diagnostics;
  TraceController main(tree, &importance, run_rng.derive(5, 0));
  return restart_transient_trace(ctx, main, 0, time_bound, 0);
}

// One RESTART trace for the steady-state metric: weighted top-state
// segments go into the batch accumulator; kills and splits as above.
void restart_steady_trace(RestartContext& ctx, TraceController& tc,
                          int creation_level, double horizon,
                          BatchAccumulator& acc) {
  int lvl = creation_level;
  while (tc.elapsed() < horizon) {
    while (lvl < ctx.scheme.size() && tc.importance() >= ctx.scheme.levels[lvl]) {
      ++lvl;
      for (int j = 0; j < ctx.scheme.efforts[lvl - 1] - 1; ++j) {
        TraceController clone = tc.clone(ctx.next_clone_stream());
        restart_steady_trace(ctx, clone, lvl, horizon, acc);
      }
    }
    if (creation_level > 0 &&
        tc.importance() < ctx.scheme.levels[creation_level - 1])
      return;  // truncated
    while (lvl > creation_level &&
           tc.importance() < ctx.scheme.levels[lvl - 1])
      --lvl;
    double at = tc.elapsed();
    bool failed = tc.top_failed();
    double weight = ctx.level_weight[lvl];
    double dt = tc.next_event_in();
    if (dt == kInf) {
      acc.add(at, horizon, failed, weight);
      return;
    }
    double next = std::min(at + dt, horizon);
    acc.add(at, next, failed, weight);
    if (at + dt > horizon) return;
    tc.step();
    acc.mark_event();
  }
}

}  // namespace

Estimate restart_unreliability(const FaultTree& tree,
                               const ImportanceModel& importance,
                               double time_bound,
                               const ThresholdScheme& scheme, Budget budget,
                               RngStream rng, int threads, double confidence,
                               RestartDiagnostics* diagnostics) {
  double started = now_seconds();
  auto one_run = [&](long long run_id) {
    return restart_run_transient(tree, importance, scheme, time_bound,
                                 rng.derive(6, static_cast<std::uint64_t>(run_id)),
                                 diagnostics);
  };

  std::vector<double> runs;
  if (budget.samples > 0) {
    runs.resize(budget.samples);
    int workers =
        diagnostics ? 1 : resolve_threads(threads, budget.samples);
    std::atomic<long long> next{0};
    auto worker = [&] {
      while (true) {
        long long i = next.fetch_add(1);
        if (i >= budget.samples) break;
        runs[i] = one_run(i);
      }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  } else {
    double deadline = started + budget.seconds;
    std::atomic<long long> next{0};
    std::mutex mu;
    int workers = diagnostics ? 1 : resolve_threads(threads, 1ll << 40);
    auto worker = [&] {
      while (now_seconds() < deadline) {
        long long i = next.fetch_add(1);
        double r = one_run(i);
        std::lock_guard<std::mutex> lock(mu);
        runs.push_back(r);
      }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }

  Interval ci = student_t_interval(runs, confidence);
  Estimate est;
  est.metric = Metric::kUnreliability;
  est.time_bound = time_bound;
  est.point = runs.empty() ? 0
              : std::accumulate(runs.begin(), runs.end(), 0.0) /
                    static_cast<double>(runs.size());
  est.ci_low = ci.lo;
  est.ci_high = ci.hi;
  est.confidence = confidence;
  est.samples = static_cast<long long>(runs.size());
  est.null_estimate = ci.null_estimate;
  est.wall_seconds = now_seconds() - started;
  return est;
}

Estimate restart_unavailability(const FaultTree& tree,
                                const ImportanceModel& importance,
                                const ThresholdScheme& scheme, double horizon,
                                double warmup, int batches, RngStream rng,
                                double confidence) {
  if (batches < 2 || horizon <= warmup || warmup < 0)
    throw DegenerateBatchesError("need horizon > warmup >= 0 and >= 2 batches");
  double started = now_seconds();
  double duration = (horizon - warmup) / batches;
  BatchAccumulator acc(warmup, duration);
  RestartContext ctx(tree, importance, scheme, rng.derive(7, 0));
  TraceController main(tree, &importance, rng.derive(7, 1));
  restart_steady_trace(ctx, main, 0, horizon, acc);
  auto ratios = acc.ratios(horizon);
  return unavail_estimate(ratios, confidence, now_seconds() - started,
                          static_cast<long long>(ratios.size()));
}

Estimate restart_unavailability_budget(const FaultTree& tree,
                                       const ImportanceModel& importance,
                                       const ThresholdScheme& scheme,
                                       double seconds, double warmup,
                                       double batch_duration, RngStream rng,
                                       double confidence) {
  if (batch_duration <= 0 || warmup < 0)
    throw DegenerateBatchesError("need batch duration > 0 and warmup >= 0");
  // Splitting interacts with a moving horizon (clones would be cut short
  // at every extension), so the budget is spent on independent
  // fixed-horizon chunks whose batches are pooled.
  constexpr int kBatchesPerChunk = 16;
  double started = now_seconds();
  double deadline = started + seconds;
  double chunk_horizon = warmup + kBatchesPerChunk * batch_duration;
  std::vector<double> ratios;
  long long chunk = 0;
  while (now_seconds() < deadline) {
    BatchAccumulator acc(warmup, batch_duration);
    RestartContext ctx(tree, importance, scheme,
                       rng.derive(7, static_cast<std::uint64_t>(chunk), 0));
    TraceController main(tree, &importance,
                         rng.derive(7, static_cast<std::uint64_t>(chunk), 1));
    restart_steady_trace(ctx, main, 0, chunk_horizon, acc);
    auto part = acc.ratios(chunk_horizon);
    ratios.insert(ratios.end(), part.begin(), part.end());
    ++chunk;
  }
  return unavail_estimate(ratios, confidence, now_seconds() - started,
                          static_cast<long long>(ratios.size()));
}

}  // namespace raftres
