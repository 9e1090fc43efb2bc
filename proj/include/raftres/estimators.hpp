#ifndef RAFTRES_ESTIMATORS_HPP_
#define RAFTRES_ESTIMATORS_HPP_

#include <functional>
#include <vector>

#include "raftres/thresholds.hpp"

namespace raftres {

enum class Metric { kUnreliability, kUnavailability };
enum class Algorithm { kSmc, kRestart, kFixedEffort };

struct Estimate {
  Metric metric = Metric::kUnreliability;
  double time_bound = 0;  // UNREL(T) only
  double point = 0;
  double ci_low = 0;
  double ci_high = 0;
  double confidence = 0.95;
  long long samples = 0;  // traces, passes, runs, or batches
  bool null_estimate = true;
  double wall_seconds = 0;
};

// Exactly one of the two is positive. `samples` counts the algorithm's
// replication unit (traces for SMC, passes for FE, runs for RESTART,
// batches for steady-state estimation).
struct Budget {
  double seconds = 0;
  long long samples = 0;
};

struct Interval {
  double lo = 0;
  double hi = 0;
  bool null_estimate = false;
};

// Wilson score interval; hits == 0 yields the null interval [0,0].
Interval wilson_interval(long long hits, long long trials, double confidence);

// Student-t interval over replication or batch means, clamped to [0,1].
Interval student_t_interval(const std::vector<double>& samples,
                            double confidence);

// Bernoulli mode uses Wilson on the 0/1 samples, otherwise Student-t.
Interval build_ci(const std::vector<double>& samples, double confidence,
                  bool bernoulli);

Estimate smc_unreliability(const FaultTree& tree, double time_bound,
                           Budget budget, RngStream rng, int threads = 1,
                           double confidence = 0.95);

Estimate smc_unavailability(const FaultTree& tree, double horizon,
                            double warmup, int batches, RngStream rng,
                            double confidence = 0.95);

// Wall-clock driven variant: keeps extending one trace, one batch at a
// time, until the budget is spent.
Estimate smc_unavailability_budget(const FaultTree& tree, double seconds,
                                   double warmup, double batch_duration,
                                   RngStream rng, double confidence = 0.95);

// One Fixed Effort pass over the stage structure: stage k launches
// `efforts[k]` traces from the entry pool of region k (round-robin) and
// counts how many reach the next target; the pass estimate is the product
// of the per-stage fractions, zero as soon as a stage has no successes.
// Exposed so deterministic stage runners can replay known scenarios.
struct FeStageOutcome {
  int successes = 0;
  std::vector<SimState> entries;
};
using FeStageRunner = std::function<FeStageOutcome(
    int stage, const std::vector<SimState>& pool, int effort)>;
double fixed_effort_pass(const std::vector<int>& efforts,
                         const FeStageRunner& run_stage,
                         std::vector<SimState> initial_pool);

// Transient metric only; steady-state Fixed Effort is not offered.
Estimate fixed_effort_unreliability(const FaultTree& tree,
                                    const ImportanceModel& importance,
                                    double time_bound,
                                    const ThresholdScheme& scheme,
                                    int effort_override, Budget budget,
                                    RngStream rng, int threads = 1,
                                    double confidence = 0.95);

// Optional instrumentation for RESTART runs (weight bookkeeping tests).
struct RestartDiagnostics {
  std::vector<double> hit_weights;          // weight of each rare observation
  std::vector<double> launched_weight_sum;  // per level: sum of spawn weights
};

Estimate restart_unreliability(const FaultTree& tree,
                               const ImportanceModel& importance,
                               double time_bound,
                               const ThresholdScheme& scheme, Budget budget,
                               RngStream rng, int threads = 1,
                               double confidence = 0.95,
                               RestartDiagnostics* diagnostics = nullptr);

Estimate restart_unavailability(const FaultTree& tree,
                                const ImportanceModel& importance,
                                const ThresholdScheme& scheme, double horizon,
                                double warmup, int batches, RngStream rng,
                                double confidence = 0.95);

Estimate restart_unavailability_budget(const FaultTree& tree,
                                       const ImportanceModel& importance,
                                       const ThresholdScheme& scheme,
                                       double seconds, double warmup,
                                       double batch_duration, RngStream rng,
                                       double confidence = 0.95);

}  // namespace raftres

#endif  // RAFTRES_ESTIMATORS_HPP_
