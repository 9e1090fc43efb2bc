#include "raftres/importance.hpp"

#include <algorithm>
#include <stdexcept>

#include "raftres/errors.hpp"

namespace raftres {

namespace {

// Leaves ample headroom below the signed 128-bit limit.
const Imp kBudget = Imp(1) << 120;

Imp checked_mul(Imp a, Imp b) {
  if (a != 0 && b > kBudget / a)
    throw OverflowError("importance exceeds the 128-bit budget; "
                        "the tree's lcm cascade is too deep");
  return a * b;
}

Imp gcd(Imp a, Imp b) {
  while (b != 0) {
    Imp t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Imp checked_lcm(Imp a, Imp b) { return checked_mul(a / gcd(a, b), b); }

}  // namespace

std::string imp_to_string(Imp value) {
  if (value == 0) return "0";
  bool neg = value < 0;
  unsigned __int128 v = neg ? -(unsigned __int128)value : (unsigned __int128)value;
  std::string out;
  while (v != 0) {
    out += char('0' + int(v % 10));
    v /= 10;
  }
  if (neg) out += '-';
  std::reverse(out.begin(), out.end());
  return out;
}

ImportanceModel build_importance(const FaultTree& tree) {
  ImportanceModel model;
  model.tree_ = &tree;
  model.max_imp_.assign(tree.size(), 0);
  model.lcm_.assign(tree.size(), 0);
  model.factor_.assign(tree.size(), {});
  for (int v : tree.topo) {
    const TreeNode& node = tree.nodes[v];
    if (node.is_basic()) {
      model.max_imp_[v] = 1;
      continue;
    }
    Imp lcm = 1;
    for (int c : node.children) lcm = checked_lcm(lcm, model.max_imp_[c]);
    model.lcm_[v] = lcm;
    auto& factors = model.factor_[v];
    for (int c : node.children) {
      if (lcm % model.max_imp_[c] != 0)
        throw std::logic_error("non-exact importance normalization");
      factors.push_back(lcm / model.max_imp_[c]);
    }
    Imp m = static_cast<Imp>(node.children.size());
    switch (node.kind) {
      case NodeKind::kAnd: model.max_imp_[v] = checked_mul(lcm, m); break;
      case NodeKind::kOr: model.max_imp_[v] = lcm; break;
      case NodeKind::kVot:
        model.max_imp_[v] = checked_mul(lcm, Imp(node.vot_k));
        break;
      case NodeKind::kSpare: model.max_imp_[v] = checked_mul(lcm, m); break;
      case NodeKind::kPand: model.max_imp_[v] = checked_mul(lcm, 2); break;
      default:
        throw std::logic_error("importance over a non-gate node");
    }
  }
  return model;
}

void ImportanceModel::evaluate_all(const ModelState& state, Work& work) const {
  const FaultTree& tree = *tree_;
  outputs(tree, state, work.z);
  work.imp.assign(tree.size(), 0);
  std::vector<Imp> scaled;
  for (int v : tree.topo) {
    const TreeNode& node = tree.nodes[v];
    if (node.is_basic()) {
      work.imp[v] = work.z[v];
      continue;
    }
    const auto& factors = factor_[v];
    Imp value = 0;
    switch (node.kind) {
      case NodeKind::kAnd: {
        for (std::size_t i = 0; i < node.children.size(); ++i)
          value += work.imp[node.children[i]] * factors[i];
        break;
      }
      case NodeKind::kOr: {
        for (std::size_t i = 0; i < node.children.size(); ++i)
          value = std::max(value, work.imp[node.children[i]] * factors[i]);
        break;
      }
      case NodeKind::kVot: {
        scaled.clear();
        for (std::size_t i = 0; i < node.children.size(); ++i)
          scaled.push_back(work.imp[node.children[i]] * factors[i]);
        std::nth_element(scaled.begin(), scaled.begin() + (node.vot_k - 1),
                         scaled.end(), std::greater<Imp>());
        for (int i = 0; i < node.vot_k; ++i) value += scaled[i];
        break;
      }
      case NodeKind::kSpare: {
        for (std::size_t i = 0; i < node.children.size(); ++i)
          value += work.imp[node.children[i]] * factors[i];
        Imp failed_term =
            work.z[v] * checked_mul(lcm_[v], Imp(node.children.size()));
        value = std::max(value, failed_term);
        break;
      }
      case NodeKind::kPand: {
        Imp left = work.imp[node.children[0]] * factors[0];
        Imp right = work.imp[node.children[1]] * factors[1];
        std::uint8_t x = state.pand_x[v];
        Imp ord = (x == pand::kLeftFailed || x == pand::kFailed) ? 1 : -1;
        Imp term = left + ord * right;
        Imp failed_term = work.z[v] * lcm_[v] * 2;
        value = std::max(term, failed_term);
        if (value < 0) value = 0;
        break;
      }
      default:
        break;
    }
    if (value < 0 || value > max_imp_[v])
      throw std::logic_error("importance out of range at node " + node.name);
    work.imp[v] = value;
  }
}

Imp ImportanceModel::evaluate(const ModelState& state, Work& work) const {
  evaluate_all(state, work);
  return work.imp[tree_->top];
}

Imp ImportanceModel::evaluate(const ModelState& state) const {
  Work work;
  return evaluate(state, work);
}

namespace {

std::string expression(const ImportanceModel& model, int v) {
  const FaultTree& tree = model.tree();
  const TreeNode& node = tree.nodes[v];
  auto term = [&](std::size_t i) {
    int c = node.children[i];
    std::string t = "I(" + tree.nodes[c].name + ")";
    Imp f = model.lcm_of(v) / model.max_of(c);
    if (f != 1) t += "*" + imp_to_string(f);
    return t;
  };
  std::string e;
  switch (node.kind) {
    case NodeKind::kBasicElement:
    case NodeKind::kSpareBasic:
      return "z(" + node.name + ")";
    case NodeKind::kAnd:
      for (std::size_t i = 0; i < node.children.size(); ++i)
        e += (i ? " + " : "") + term(i);
      return e;
    case NodeKind::kOr:
      e = "max(";
      for (std::size_t i = 0; i < node.children.size(); ++i)
        e += (i ? ", " : "") + term(i);
      return e + ")";
    case NodeKind::kVot:
      e = "sum" + std::to_string(node.vot_k) + "max(";
      for (std::size_t i = 0; i < node.children.size(); ++i)
        e += (i ? ", " : "") + term(i);
      return e + ")";
    case NodeKind::kSpare: {
      e = "max(";
      for (std::size_t i = 0; i < node.children.size(); ++i)
        e += (i ? " + " : "") + term(i);
      return e + ", z(" + node.name + ")*" +
             imp_to_string(checked_mul(model.lcm_of(v),
                                       Imp(node.children.size()))) + ")";
    }
    case NodeKind::kPand:
      return "max(" + term(0) + " + ord*" + term(1) + ", z(" + node.name +
             ")*" + imp_to_string(model.lcm_of(v) * 2) + ")";
    default:
      return "";
  }
}

}  // namespace

std::string describe(const ImportanceModel& model) {
  const FaultTree& tree = model.tree();
  std::string out;
  out += "node\tkind\tmaxI\tlcm\texpression\n";
  for (int v : tree.topo) {
    const TreeNode& node = tree.nodes[v];
    out += node.name + "\t" + kind_name(node.kind) + "\t" +
           imp_to_string(model.max_of(v)) + "\t";
    out += node.is_gate() ? imp_to_string(model.lcm_of(v)) : std::string("-");
    out += "\t" + expression(model, v) + "\n";
  }
  out += "I = I(" + tree.nodes[tree.top].name + "), max " +
         imp_to_string(model.max_top()) + "\n";
  return out;
}

}  // namespace raftres
