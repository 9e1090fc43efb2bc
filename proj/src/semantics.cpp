#include "raftres/semantics.hpp"

#include <algorithm>

namespace raftres {

ModelState ModelState::initial(const FaultTree& tree) {
  ModelState s;
  s.basic_x.assign(tree.size(), 0);
  s.pand_x.assign(tree.size(), 0);
  s.serving.assign(tree.size(), -1);
  for (int v : tree.basics)
    if (tree.is_sbe(v)) s.basic_x[v] = 2;  // dormant operational
  return s;
}

bool sbe_available(const FaultTree& tree, const ModelState& state, int sbe,
                   int spare) {
  if (state.failed(sbe)) return false;
  for (int w : tree.spares)
    if (w != spare && state.serving[w] == sbe) return false;
  return true;
}

void outputs(const FaultTree& tree, const ModelState& state,
             std::vector<std::uint8_t>& z) {
  z.assign(tree.size(), 0);
  for (int v : tree.topo) {
    const TreeNode& node = tree.nodes[v];
    switch (node.kind) {
      case NodeKind::kBasicElement:
      case NodeKind::kSpareBasic:
        z[v] = state.basic_x[v] % 2;
        break;
      case NodeKind::kAnd: {
        std::uint8_t out = 1;
        for (int c : node.children) out = std::min(out, z[c]);
        z[v] = out;
        break;
      }
      case NodeKind::kOr: {
        std::uint8_t out = 0;
        for (int c : node.children) out = std::max(out, z[c]);
        z[v] = out;
        break;
      }
      case NodeKind::kVot: {
        int failed = 0;
        for (int c : node.children) failed += z[c];
        z[v] = failed >= node.vot_k;
        break;
      }
      case NodeKind::kPand:
        z[v] = state.pand_x[v] == pand::kFailed;
        break;
      case NodeKind::kSpare: {
        int primary = node.children[0];
        if (!z[primary]) {
          z[v] = 0;
          break;
        }
        bool available = false;
        for (std::size_t i = 1; i < node.children.size() && !available; ++i)
          available = sbe_available(tree, state, node.children[i], v);
        z[v] = available ? 0 : 1;
        break;
      }
      case NodeKind::kRepairBox:
        break;
    }
  }
}

int output(const FaultTree& tree, int v, const ModelState& state) {
  std::vector<std::uint8_t> z;
  outputs(tree, state, z);
  return z[v];
}

int top_failed(const FaultTree& tree, const ModelState& state) {
  return output(tree, tree.top, state);
}

std::vector<int> state_vector(const FaultTree& tree, const ModelState& state) {
  std::vector<std::uint8_t> z;
  outputs(tree, state, z);
  std::vector<int> x;
  x.reserve(tree.size());
  for (int v = 0; v < tree.size(); ++v) {
    const TreeNode& node = tree.nodes[v];
    switch (node.kind) {
      case NodeKind::kBasicElement:
      case NodeKind::kSpareBasic:
        x.push_back(state.basic_x[v]);
        break;
      case NodeKind::kPand:
        x.push_back(state.pand_x[v]);
        break;
      case NodeKind::kRepairBox:
        break;  // repair boxes carry no state component
      default:
        x.push_back(z[v]);
        break;
    }
  }
  return x;
}

ClaimResult resolve_claims(const FaultTree& tree, ModelState& state) {
  ClaimResult result;
  // Releases first: a spare lets go of its SBE when the primary is back,
  // and loses it when the SBE fails.
  for (int v : tree.spares) {
    int s = state.serving[v];
    if (s == -1) continue;
    if (state.failed(s)) {
      state.serving[v] = -1;
    } else if (!state.failed(tree.nodes[v].children[0])) {
      state.serving[v] = -1;
      state.basic_x[s] = 2;  // back to dormancy
      result.releases.push_back(s);
    }
  }
  // Claims in ascending spare index, leftmost declared SBE first.
  for (int v : tree.spares) {
    if (state.serving[v] != -1) continue;
    if (!state.failed(tree.nodes[v].children[0])) continue;
    const auto& kids = tree.nodes[v].children;
    for (std::size_t i = 1; i < kids.size(); ++i) {
      int s = kids[i];
      if (!sbe_available(tree, state, s, v)) continue;
      state.serving[v] = s;
      state.basic_x[s] = 0;  // activated
      result.claims.emplace_back(v, s);
      break;
    }
  }
  return result;
}

std::uint8_t pand_step(std::uint8_t x, int old_left_z, int new_left_z,
                       int old_right_z, int new_right_z) {
  if (new_left_z > old_left_z) {
    if (x == pand::kOperational) x = pand::kLeftFailed;
    else if (x == pand::kRightFailed) x = pand::kBothRightFirst;
  } else if (new_left_z < old_left_z) {
    if (x == pand::kLeftFailed) x = pand::kOperational;
    else if (x == pand::kBothRightFirst) x = pand::kRightFailed;
  }
  if (new_right_z > old_right_z) {
    if (x == pand::kOperational) x = pand::kRightFailed;
    else if (x == pand::kLeftFailed) x = pand::kFailed;
  } else if (new_right_z < old_right_z) {
    if (x == pand::kRightFailed) x = pand::kOperational;
    else if (x == pand::kBothRightFirst) x = pand::kLeftFailed;
    else if (x == pand::kFailed) {
      x = new_left_z ? pand::kLeftFailed : pand::kOperational;
    }
  }
  return x;
}

}  // namespace raftres
