#ifndef RAFTRES_THRESHOLDS_HPP_
#define RAFTRES_THRESHOLDS_HPP_

#include <vector>

#include "raftres/engine.hpp"

namespace raftres {

// Importance levels l_1 < ... < l_M with the effort attached to each
// level: the number of traces launched toward l_k (Fixed Effort) or the
// total split count when up-crossing l_k (RESTART).
struct ThresholdScheme {
  std::vector<Imp> levels;
  std::vector<int> efforts;

  bool empty() const { return levels.empty(); }
  int size() const { return static_cast<int>(levels.size()); }
};

struct PilotAscent {
  Imp value = 0;
  SimState state;  // first state seen at this running-max value
};

// Running-max records of one pilot simulation, strictly increasing and laying
// strictly above the level the pilot started from.
struct PilotTrace {
  std::vector<PilotAscent> ascents;

  Imp max_value(Imp base) const {
    return ascents.empty() ? base : ascents.back().value;
  }
};

// Pilot backend; the engine-backed source is below, tests may script one.
// Pilots from importance 0 start fresh traces (initial clock valuations
// are drawn per pilot); pilots from saved entry states resume them.
class PilotSource {
 public:
  virtual ~PilotSource() = default;
  virtual PilotTrace run_initial(Imp base) = 0;
  virtual PilotTrace run(const SimState& from, Imp base) = 0;
};

class EnginePilotSource : public PilotSource {
 public:
  EnginePilotSource(const FaultTree& tree, const ImportanceModel& importance,
                    double time_bound, RngStream rng)
      : controller_(tree, &importance, rng),
        max_top_(importance.max_top()),
        time_bound_(time_bound),
        rng_(rng) {}

  PilotTrace run_initial(Imp base) override;
  PilotTrace run(const SimState& from, Imp base) override;

 private:
  PilotTrace walk(Imp base);

  TraceController controller_;
  Imp max_top_;
  double time_bound_;
  RngStream rng_;
  long long counter_ = 0;
};

// Expected Success: per round, N pilots run from states at the current
// level; the smallest observed importance value that fewer than N/2
// pilots reached becomes the next threshold, with effort ceil(N/K).
// Values all pilots reach easily just move the current level up. Rounds
// with no ascent at all are retried up to three times, then the scheme
// ends. Throws NoAscentError if no pilot ever leaves importance 0.
ThresholdScheme select_thresholds_es(Imp max_top, PilotSource& pilots,
                                     int pilot_count);

// Sequential Monte Carlo style selection: per round the next threshold is
// the ceil(n/2)-th order statistic of the pilots' maximum importances
// (strictly above the current level); uniform effort n per level.
ThresholdScheme select_thresholds_seq(Imp max_top, PilotSource& pilots,
                                      int global_effort);

}  // namespace raftres

#endif  // RAFTRES_THRESHOLDS_HPP_
