#include "raftres/engine.hpp"

#include <algorithm>
#include <cassert>

namespace raftres {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TraceController::TraceController(const FaultTree& tree,
                                 const ImportanceModel* importance,
                                 RngStream rng)
    : tree_(&tree), imp_(importance), rng_(rng) {
  rbox_slot_.assign(tree.size(), -1);
  for (std::size_t i = 0; i < tree.rboxes.size(); ++i)
    rbox_slot_[tree.rboxes[i]] = static_cast<int>(i);
  init();
}

void TraceController::init() {
  state_.model = ModelState::initial(*tree_);
  state_.clock_kind.assign(tree_->size(), ClockKind::kNone);
  state_.remaining.assign(tree_->size(), kInf);
  state_.rbox_busy.assign(tree_->rboxes.size(), -1);
  state_.elapsed = 0;
  for (int v : tree_->basics)
    sample_clock(v, tree_->is_sbe(v) ? ClockKind::kDormancy : ClockKind::kFail);
  outputs(*tree_, state_.model, state_.z);
  prev_z_ = state_.z;
  if (imp_) importance_ = imp_->evaluate(state_.model, work_);
}

void TraceController::sample_clock(int element, ClockKind kind) {
  const TreeNode& node = tree_->nodes[element];
  const Pdf* pdf = nullptr;
  switch (kind) {
    case ClockKind::kFail: pdf = &node.fail; break;
    case ClockKind::kDormancy: pdf = &node.dormancy; break;
    case ClockKind::kRepair: pdf = &node.repair; break;
    case ClockKind::kNone:
      state_.clock_kind[element] = ClockKind::kNone;
      state_.remaining[element] = kInf;
      return;
  }
  state_.clock_kind[element] = kind;
  state_.remaining[element] = sample(*pdf, rng_);
}

double TraceController::next_event_in() const {
  double best = kInf;
  for (int v : tree_->basics) {
    if (state_.clock_kind[v] == ClockKind::kNone) continue;
    best = std::min(best, state_.remaining[v]);
  }
  return best;
}

std::optional<Event> TraceController::step() {
  int fired = -1;
  double dt = kInf;
  for (int v : tree_->basics) {
    if (state_.clock_kind[v] == ClockKind::kNone) continue;
    if (state_.remaining[v] < dt) {
      dt = state_.remaining[v];
      fired = v;
    }
  }
  if (fired < 0) return std::nullopt;

  state_.elapsed += dt;
  for (int v : tree_->basics)
    if (state_.clock_kind[v] != ClockKind::kNone) state_.remaining[v] -= dt;

  ClockKind kind = state_.clock_kind[fired];
  state_.clock_kind[fired] = ClockKind::kNone;
  state_.remaining[fired] = kInf;
  const TreeNode& node = tree_->nodes[fired];

  Event event{EventKind::kFail, fired, state_.elapsed};
  switch (kind) {
    case ClockKind::kFail:
      event.kind = EventKind::kFail;
      state_.model.basic_x[fired] += 1;  // 0->1
      break;
    case ClockKind::kDormancy:
      event.kind = EventKind::kDormantFail;
      state_.model.basic_x[fired] = 3;  // dormant failed
      break;
    case ClockKind::kRepair: {
      event.kind = EventKind::kRepair;
      if (tree_->is_sbe(fired)) {
        state_.model.basic_x[fired] = 2;  // dormant pool
        sample_clock(fired, ClockKind::kDormancy);
      } else {
        state_.model.basic_x[fired] = 0;
        sample_clock(fired, ClockKind::kFail);
      }
      state_.rbox_busy[rbox_slot_[node.rbox]] = -1;
      break;
    }
    case ClockKind::kNone:
      assert(false && "fired an inactive clock");
      break;
  }

  settle(event);
  return event;
}

void TraceController::settle(const Event& event) {
  // Spare reassignment, then repair-box dispatch, then output propagation.
  ClaimResult moves = resolve_claims(*tree_, state_.model);
  for (int s : moves.releases) sample_clock(s, ClockKind::kDormancy);
  for (auto [spare, sbe] : moves.claims) sample_clock(sbe, ClockKind::kFail);

  for (std::size_t i = 0; i < tree_->rboxes.size(); ++i) {
    if (state_.rbox_busy[i] != -1) continue;
    const TreeNode& box = tree_->nodes[tree_->rboxes[i]];
    for (int e : box.children) {  // children are in priority order
      if (!state_.model.failed(e)) continue;
      if (state_.clock_kind[e] != ClockKind::kNone) continue;
      state_.rbox_busy[i] = e;
      sample_clock(e, ClockKind::kRepair);
      break;
    }
  }

  // One bottom-up pass: pand internal states advance on their children's
  // output edges, everything else is derived.
  for (int v : tree_->topo) {
    const TreeNode& node = tree_->nodes[v];
    if (node.kind == NodeKind::kPand) {
      int l = node.children[0], r = node.children[1];
      state_.model.pand_x[v] =
          pand_step(state_.model.pand_x[v], prev_z_[l], state_.z[l],
                    prev_z_[r], state_.z[r]);
      state_.z[v] = state_.model.pand_x[v] == pand::kFailed;
      continue;
    }
    switch (node.kind) {
      case NodeKind::kBasicElement:
      case NodeKind::kSpareBasic:
        state_.z[v] = state_.model.basic_x[v] % 2;
        break;
      case NodeKind::kAnd: {
        std::uint8_t out = 1;
        for (int c : node.children) out = std::min(out, state_.z[c]);
        state_.z[v] = out;
        break;
      }
      case NodeKind::kOr: {
        std::uint8_t out = 0;
        for (int c : node.children) out = std::max(out, state_.z[c]);
        state_.z[v] = out;
        break;
      }
      case NodeKind::kVot: {
        int failed = 0;
        for (int c : node.children) failed += state_.z[c];
        state_.z[v] = failed >= node.vot_k;
        break;
      }
      case NodeKind::kSpare: {
        int primary = node.children[0];
        state_.z[v] =
            state_.z[primary] && state_.model.serving[v] == -1 ? 1 : 0;
        break;
      }
      default:
        break;
    }
  }
  prev_z_ = state_.z;

  if (imp_) importance_ = imp_->evaluate(state_.model, work_);
  if (observer_) {
    observer_(event, importance_, top_failed());
    for (auto [spare, sbe] : moves.claims)
      observer_({EventKind::kActivate, sbe, state_.elapsed}, importance_,
                top_failed());
  }
}

TransientResult TraceController::run_transient(double time_bound) {
  if (top_failed()) return {true, state_.elapsed, false};
  while (true) {
    double dt = next_event_in();
    if (dt == kInf) return {false, state_.elapsed, true};
    if (state_.elapsed + dt > time_bound) return {false, time_bound, false};
    step();
    if (top_failed()) return {true, state_.elapsed, false};
  }
}

ThresholdStop TraceController::run_until_threshold(Imp down_value,
                                                   Imp up_value,
                                                   double time_bound) {
  while (true) {
    if (top_failed()) return {ThresholdOutcome::kTopEvent, importance_, state_.elapsed};
    if (importance_ >= up_value)
      return {ThresholdOutcome::kUp, importance_, state_.elapsed};
    if (down_value >= 0 && importance_ < down_value)
      return {ThresholdOutcome::kDown, importance_, state_.elapsed};
    double dt = next_event_in();
    if (dt == kInf)
      return {ThresholdOutcome::kDeadlock, importance_, state_.elapsed};
    if (state_.elapsed + dt > time_bound)
      return {ThresholdOutcome::kTimeOut, importance_, time_bound};
    step();
  }
}

TraceController TraceController::clone(RngStream fresh) const {
  TraceController copy(*this);
  copy.rng_ = fresh;
  copy.observer_ = nullptr;
  return copy;
}

void TraceController::restore(const SimState& snapshot) {
  state_ = snapshot;
  prev_z_ = state_.z;
  if (imp_) importance_ = imp_->evaluate(state_.model, work_);
}

}  // namespace raftres
