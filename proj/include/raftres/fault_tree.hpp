#ifndef RAFTRES_FAULT_TREE_HPP_
#define RAFTRES_FAULT_TREE_HPP_

#include <string>
#include <vector>

#include "raftres/ast.hpp"
#include "raftres/pdf.hpp"

namespace raftres {

enum class NodeKind {
  kBasicElement,
  kSpareBasic,
  kAnd,
  kOr,
  kVot,
  kPand,
  kSpare,
  kRepairBox,
};

struct TreeNode {
  NodeKind kind = NodeKind::kBasicElement;
  std::string name;
  std::vector<int> children;  // ordered (child function)
  int vot_k = 0;

  // Basic elements only.
  Pdf fail;
  Pdf repair;
  Pdf dormancy;         // SBE only
  bool repairable = false;
  int rbox = -1;        // managing repair box node, -1 if none
  int rbox_rank = 0;    // priority position within that box (0 = first)

  bool is_basic() const {
    return kind == NodeKind::kBasicElement || kind == NodeKind::kSpareBasic;
  }
  bool is_gate() const { return !is_basic() && kind != NodeKind::kRepairBox; }
};

// Validated, FDEP-free fault tree. Node indices follow declaration order,
// with nodes synthesized during lowering appended at the end.
struct FaultTree {
  std::vector<TreeNode> nodes;
  int top = -1;
  std::vector<int> rboxes;       // repair box node indices
  std::vector<int> topo;         // parents after children, rboxes excluded
  std::vector<int> spares;       // spare gate indices, ascending
  std::vector<int> pands;        // pand gate indices, ascending
  std::vector<int> basics;       // basic element indices, ascending

  int size() const { return static_cast<int>(nodes.size()); }
  const TreeNode& operator[](int v) const { return nodes[v]; }
  bool is_sbe(int v) const { return nodes[v].kind == NodeKind::kSpareBasic; }
  int find(const std::string& name) const {
    for (int v = 0; v < size(); ++v)
      if (nodes[v].name == name) return v;
    return -1;
  }
};

// Lowers a parsed AST: resolves names, desugars lambda/dorm and spare-kind
// dormancy defaults, rewrites FDEPs into OR insertions over the dependent
// elements' outputs, chains n-ary PANDs into binary ones, and checks all
// structural invariants (DAG, arities, repair boxes over basic elements,
// weak-determinism conditions). Throws ValidationError.
FaultTree lower(const GalileoAst& ast);

FaultTree lower(const std::string& galileo_text);

std::string kind_name(NodeKind kind);

}  // namespace raftres

#endif  // RAFTRES_FAULT_TREE_HPP_
