#ifndef RAFTRES_IMPORTANCE_HPP_
#define RAFTRES_IMPORTANCE_HPP_

#include <string>
#include <vector>

#include "raftres/semantics.hpp"

namespace raftres {

// Importance values are exact integers; lcm cascades grow fast, so they
// are carried in 128 bits with overflow checked at build time.
using Imp = __int128;

std::string imp_to_string(Imp value);

// Compositional importance function over a fault tree. Per node kind:
//   be/sbe  z
//   and     lcm * sum_w I_w/max_w
//   or      lcm * max_w I_w/max_w
//   vot_k   lcm * (sum of the k largest I_w/max_w)
//   spare   lcm * max(sum_w I_w/max_w, z*m)
//   pand    lcm * max(I_l/max_l + ord*I_r/max_r, z*2),
//           ord = +1 if x in {1,4}, -1 otherwise
// where max_v is the node's highest attainable value and lcm_v the least
// common multiple of the children's maxima, making every quotient exact.
class ImportanceModel {
 public:
  struct Work {  // caller-owned scratch for allocation-free evaluation
    std::vector<std::uint8_t> z;
    std::vector<Imp> imp;
  };

  const FaultTree& tree() const { return *tree_; }
  Imp max_of(int v) const { return max_imp_[v]; }
  Imp lcm_of(int v) const { return lcm_[v]; }
  Imp max_top() const { return max_imp_[tree_->top]; }

  Imp evaluate(const ModelState& state) const;
  Imp evaluate(const ModelState& state, Work& work) const;

  // Importance of every node (for invariant checks and --dump-ifun).
  void evaluate_all(const ModelState& state, Work& work) const;

 private:
  friend ImportanceModel build_importance(const FaultTree& tree);

  const FaultTree* tree_ = nullptr;
  std::vector<Imp> max_imp_;
  std::vector<Imp> lcm_;
  std::vector<std::vector<Imp>> factor_;  // per gate: lcm_v / max_w per child
};

// Throws OverflowError if the lcm cascade exceeds the 128-bit budget.
ImportanceModel build_importance(const FaultTree& tree);

// Human-readable table of per-node max/lcm plus the evaluator expressions.
std::string describe(const ImportanceModel& model);

}  // namespace raftres

#endif  // RAFTRES_IMPORTANCE_HPP_
