#ifndef RAFTRES_SEMANTICS_HPP_
#define RAFTRES_SEMANTICS_HPP_

#include <cstdint>
#include <vector>

#include "raftres/fault_tree.hpp"

namespace raftres {

// Per-basic-element state x:
//   BE:  0 operational, 1 failed
//   SBE: 0 active operational, 1 active failed,
//        2 dormant operational, 3 dormant failed
// Pand gates track failure order:
//   0 both operational, 1 left failed, 2 right failed,
//   3 both failed right first, 4 both failed otherwise
namespace pand {
inline constexpr std::uint8_t kOperational = 0;
inline constexpr std::uint8_t kLeftFailed = 1;
inline constexpr std::uint8_t kRightFailed = 2;
inline constexpr std::uint8_t kBothRightFirst = 3;
inline constexpr std::uint8_t kFailed = 4;
}  // namespace pand

// The irreducible state of a tree: basic-element states, pand internal
// states, and the spare assignment. Gate states are derived on demand.
struct ModelState {
  std::vector<std::uint8_t> basic_x;  // indexed by node, used for basics
  std::vector<std::uint8_t> pand_x;   // indexed by node, used for pands
  std::vector<int> serving;           // per spare node: claimed SBE or -1

  static ModelState initial(const FaultTree& tree);

  bool failed(int v) const { return basic_x[v] % 2 == 1; }
  bool dormant(int v) const { return basic_x[v] >= 2; }
};

// z_v of the given node under the given state.
int output(const FaultTree& tree, int v, const ModelState& state);

// Outputs for every node in one bottom-up pass (repair boxes get 0).
void outputs(const FaultTree& tree, const ModelState& state,
             std::vector<std::uint8_t>& z);

int top_failed(const FaultTree& tree, const ModelState& state);

// The tuple (x_0,...,x_{n-1}) over non-rbox nodes in index order; gate
// entries are derived from their children.
std::vector<int> state_vector(const FaultTree& tree, const ModelState& state);

// An SBE is available to spare v if it is operational and not replacing
// the primary of a different spare.
bool sbe_available(const FaultTree& tree, const ModelState& state, int sbe,
                   int spare);

struct ClaimResult {
  std::vector<std::pair<int, int>> claims;  // (spare, activated sbe)
  std::vector<int> releases;                // sbes returned to dormancy
};

// Reassigns spares to available SBEs: releases SBEs whose primary is back
// (or drops ones that failed), then lets spares with failed primaries
// claim the leftmost available SBE, in ascending spare index. The caller
// resamples clocks for activated and released elements.
ClaimResult resolve_claims(const FaultTree& tree, ModelState& state);

// Advances a pand's state machine from the old to the new child outputs.
// Edges are applied left child first, so simultaneous failures count as
// left-then-right (the gate fails). A failed pand (state 4) stays failed
// until its right child is repaired.
std::uint8_t pand_step(std::uint8_t x, int old_left_z, int new_left_z,
                       int old_right_z, int new_right_z);

}  // namespace raftres

#endif  // RAFTRES_SEMANTICS_HPP_
