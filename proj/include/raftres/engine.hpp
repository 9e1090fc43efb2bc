#ifndef RAFTRES_ENGINE_HPP_
#define RAFTRES_ENGINE_HPP_

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "raftres/importance.hpp"
#include "raftres/rng.hpp"
#include "raftres/semantics.hpp"

namespace raftres {

enum class EventKind { kFail, kDormantFail, kRepair, kActivate };

struct Event {
  EventKind kind;
  int element;
  double time;
};

enum class ClockKind : std::uint8_t { kNone, kFail, kDormancy, kRepair };

// Full cloneable snapshot of a running trace. Clocks store remaining time
// (countdown), so copying the struct is all a clone needs.
struct SimState {
  ModelState model;
  std::vector<ClockKind> clock_kind;  // per node; basics only
  std::vector<double> remaining;
  std::vector<int> rbox_busy;         // per repair box: element under repair
  std::vector<std::uint8_t> z;        // settled outputs
  double elapsed = 0;
};

struct TransientResult {
  bool hit = false;
  double at = 0;
  bool deadlock = false;
};

enum class ThresholdOutcome { kUp, kDown, kTopEvent, kTimeOut, kDeadlock };

struct ThresholdStop {
  ThresholdOutcome outcome;
  Imp importance = 0;
  double time = 0;
};

// Owns one trace: advances clocks, fires fail/repair/dormant-fail events,
// propagates through spare claiming, repair boxes and pand order tracking,
// and reports the settled importance after every event. Single-threaded;
// run many controllers concurrently, each with its own RngStream.
class TraceController {
 public:
  using Observer = std::function<void(const Event&, Imp, bool top_failed)>;

  TraceController(const FaultTree& tree, const ImportanceModel* importance,
                  RngStream rng);

  // All elements operational, fail clocks for BEs, dormancy for SBEs.
  void init();

  const FaultTree& tree() const { return *tree_; }
  const SimState& state() const { return state_; }
  double elapsed() const { return state_.elapsed; }
  bool top_failed() const { return state_.z[tree_->top] != 0; }
  Imp importance() const { return importance_; }

  // Smallest remaining clock, +inf when none (deadlock).
  double next_event_in() const;

  // Fires the next event and settles propagation; nullopt on deadlock.
  std::optional<Event> step();

  // Steps until the top event fires or the time bound is exceeded.
  TransientResult run_transient(double time_bound);

  // Steps until the importance reaches up_value, falls below down_value,
  // the top event fires, or the time bound passes. down_value < 0
  // disables the lower bound.
  ThresholdStop run_until_threshold(Imp down_value, Imp up_value,
                                    double time_bound);

  // Same state, fresh independent stream; the observer is not copied.
  TraceController clone(RngStream fresh) const;

  void set_observer(Observer obs) { observer_ = std::move(obs); }

  // Restores a snapshot taken from another controller over the same tree.
  void restore(const SimState& snapshot);

  // Replaces the random stream (the state is untouched).
  void reseed(RngStream rng) { rng_ = rng; }

 private:
  void sample_clock(int element, ClockKind kind);
  void settle(const Event& event);

  const FaultTree* tree_;
  const ImportanceModel* imp_;
  RngStream rng_;
  SimState state_;
  std::vector<std::uint8_t> prev_z_;
  std::vector<int> rbox_slot_;  // node -> index into tree.rboxes
  ImportanceModel::Work work_;
  Imp importance_ = 0;
  Observer observer_;
};

}  // namespace raftres

#endif  // RAFTRES_ENGINE_HPP_
