#include "raftres/thresholds.hpp"

#include <algorithm>
#include <set>

#include "raftres/errors.hpp"

namespace raftres {

PilotTrace EnginePilotSource::run_initial(Imp base) {
  controller_.reseed(
      rng_.derive(0x9047, static_cast<std::uint64_t>(counter_++)));
  controller_.init();
  return walk(base);
}

PilotTrace EnginePilotSource::run(const SimState& from, Imp base) {
  controller_.reseed(
      rng_.derive(0x9047, static_cast<std::uint64_t>(counter_++)));
  controller_.restore(from);
  return walk(base);
}

PilotTrace EnginePilotSource::walk(Imp base) {
  PilotTrace trace;
  Imp current = base;
  while (current < max_top_) {
    ThresholdStop stop =
        controller_.run_until_threshold(-1, current + 1, time_bound_);
    if (stop.outcome == ThresholdOutcome::kUp ||
        stop.outcome == ThresholdOutcome::kTopEvent) {
      trace.ascents.push_back({stop.importance, controller_.state()});
      current = stop.importance;
    } else {
      break;  // time bound or deadlock
    }
  }
  return trace;
}

namespace {

struct Round {
  std::vector<PilotTrace> traces;

  std::vector<Imp> candidates(Imp above, Imp below_or_equal) const {
    std::set<Imp> values;
    for (const auto& t : traces)
      for (const auto& a : t.ascents)
        if (a.value > above && a.value <= below_or_equal) values.insert(a.value);
    return {values.begin(), values.end()};
  }

  int reached(Imp value, Imp base) const {
    int count = 0;
    for (const auto& t : traces) count += t.max_value(base) >= value;
    return count;
  }

  std::vector<SimState> entry_states(Imp value) const {
    std::vector<SimState> states;
    for (const auto& t : traces)
      for (const auto& a : t.ascents)
        if (a.value >= value) {
          states.push_back(a.state);
          break;
        }
    return states;
  }
};

Round run_round(PilotSource& pilots, const std::vector<SimState>& pool,
                Imp level, int count) {
  Round round;
  for (int i = 0; i < count; ++i) {
    // an empty pool stands for the initial state: fresh pilot traces
    round.traces.push_back(pool.empty()
                               ? pilots.run_initial(level)
                               : pilots.run(pool[i % pool.size()], level));
  }
  return round;
}

}  // namespace

ThresholdScheme select_thresholds_es(Imp max_top, PilotSource& pilots,
                                     int pilot_count) {
  ThresholdScheme scheme;
  std::vector<SimState> pool;
  Imp level = 0;
  bool ever_ascended = false;
  int dead_rounds = 0;
  while (level < max_top) {
    Round round = run_round(pilots, pool, level, pilot_count);
    for (const auto& t : round.traces)
      if (!t.ascents.empty()) ever_ascended = true;
    // The rare set itself (importance == max) is never made a threshold.
    std::vector<Imp> cands = round.candidates(level, max_top - 1);
    if (cands.empty()) {
      if (++dead_rounds >= 3) break;
      continue;
    }
    dead_rounds = 0;
    bool chose = false;
    for (Imp cand : cands) {
      int k = round.reached(cand, level);
      if (2 * k < pilot_count) {
        scheme.levels.push_back(cand);
        scheme.efforts.push_back((pilot_count + k - 1) / k);
        pool = round.entry_states(cand);
        level = cand;
        chose = true;
        break;
      }
    }
    if (!chose) {
      // Everything observed is easy to reach; move up and try from there.
      level = cands.back();
      pool = round.entry_states(level);
    }
  }
  if (!ever_ascended && scheme.empty())
    throw NoAscentError("no pilot simulation ever left importance 0");
  return scheme;
}

ThresholdScheme select_thresholds_seq(Imp max_top, PilotSource& pilots,
                                      int global_effort) {
  ThresholdScheme scheme;
  std::vector<SimState> pool;
  Imp level = 0;
  bool ever_ascended = false;
  while (level < max_top) {
    Round round = run_round(pilots, pool, level, global_effort);
    std::vector<Imp> maxima;
    for (const auto& t : round.traces) {
      maxima.push_back(t.max_value(level));
      if (t.max_value(level) > 0) ever_ascended = true;
    }
    std::sort(maxima.begin(), maxima.end());
    Imp cand = maxima[(global_effort + 1) / 2 - 1];
    if (cand <= level) break;  // maxima stopped increasing
    scheme.levels.push_back(cand);
    scheme.efforts.push_back(global_effort);
    pool = round.entry_states(cand);
    level = cand;
  }
  if (!ever_ascended && scheme.empty())
    throw NoAscentError("no pilot simulation ever left importance 0");
  return scheme;
}

}  // namespace raftres
