#include "raftres/fault_tree.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace raftres {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw ValidationError(message);
}

bool is_spare_decl(DeclKind k) {
  return k == DeclKind::kWarmSpare || k == DeclKind::kColdSpare ||
         k == DeclKind::kHotSpare;
}

NodeKind gate_kind(DeclKind k) {
  switch (k) {
    case DeclKind::kAnd: return NodeKind::kAnd;
    case DeclKind::kOr: return NodeKind::kOr;
    case DeclKind::kVot: return NodeKind::kVot;
    case DeclKind::kPand: return NodeKind::kPand;
    case DeclKind::kWarmSpare:
    case DeclKind::kColdSpare:
    case DeclKind::kHotSpare: return NodeKind::kSpare;
    case DeclKind::kRepairBox: return NodeKind::kRepairBox;
    case DeclKind::kFdep: break;
  }
  invalid("fdep is not a tree node");
}

struct Lowering {
  const GalileoAst& ast;
  FaultTree tree;
  std::map<std::string, const GalileoDecl*> decl_of;
  std::map<std::string, int> index_of;
  std::set<std::string> sbe_names;
  std::vector<const GalileoDecl*> fdeps;

  explicit Lowering(const GalileoAst& a) : ast(a) {}

  FaultTree run() {
    index_decls();
    classify_spares();
    create_nodes();
    check_source_shape();
    rewrite_fdeps();
    binarize_pands();
    wire_rboxes();
    resolve_basic_pdfs();
    check_structure();
    return std::move(tree);
  }

  void index_decls() {
    for (const auto& d : ast.decls) {
      if (!decl_of.emplace(d.name, &d).second)
        invalid("node '" + d.name + "' declared twice");
    }
    for (const auto& d : ast.decls)
      for (const auto& c : d.children)
        if (!decl_of.count(c))
          invalid("'" + d.name + "' references undeclared '" + c + "'");
    if (!decl_of.count(ast.toplevel))
      invalid("toplevel '" + ast.toplevel + "' is not declared");
  }

  // A spare basic element is any non-leftmost child of a spare gate.
  void classify_spares() {
    std::set<std::string> primaries;
    for (const auto& d : ast.decls) {
      if (!is_spare_decl(d.kind)) continue;
      if (d.children.size() < 2)
        invalid(d.name + ": spare gate needs a primary and at least one spare");
      for (std::size_t i = 0; i < d.children.size(); ++i) {
        const GalileoDecl* child = decl_of.at(d.children[i]);
        if (child->kind != DeclKind::kBasicElement)
          invalid(d.name + ": spare child '" + child->name +
                  "' is not a basic element");
        if (i == 0) {
          if (!primaries.insert(child->name).second)
            invalid("'" + child->name +
                    "' is primary of more than one spare gate");
        } else {
          sbe_names.insert(child->name);
        }
      }
    }
    for (const auto& p : primaries)
      if (sbe_names.count(p))
        invalid("'" + p + "' is used both as a primary and as a spare");
  }

  void create_nodes() {
    for (const auto& d : ast.decls) {
      if (d.kind == DeclKind::kFdep) {
        fdeps.push_back(&d);
        continue;
      }
      TreeNode node;
      node.name = d.name;
      if (d.kind == DeclKind::kBasicElement) {
        node.kind = sbe_names.count(d.name) ? NodeKind::kSpareBasic
                                            : NodeKind::kBasicElement;
      } else {
        node.kind = gate_kind(d.kind);
        node.vot_k = d.vot_k;
      }
      index_of[d.name] = tree.size();
      tree.nodes.push_back(std::move(node));
    }
    for (const auto& d : ast.decls) {
      if (d.kind == DeclKind::kFdep || d.kind == DeclKind::kBasicElement)
        continue;
      TreeNode& node = tree.nodes[index_of.at(d.name)];
      for (const auto& c : d.children) node.children.push_back(index_of.at(c));
    }
    tree.top = index_of.at(ast.toplevel);
    if (tree.nodes[tree.top].kind == NodeKind::kRepairBox)
      invalid("toplevel cannot be a repair box");
  }

  void check_source_shape() {
    for (const auto& d : ast.decls) {
      if (d.kind == DeclKind::kBasicElement) continue;
      std::set<std::string> seen;
      for (const auto& c : d.children)
        if (!seen.insert(c).second)
          invalid(d.name + ": child '" + c + "' listed twice");
      if (d.kind != DeclKind::kBasicElement && d.kind != DeclKind::kFdep &&
          d.kind != DeclKind::kRepairBox) {
        for (const auto& c : d.children)
          if (decl_of.at(c)->kind == DeclKind::kRepairBox)
            invalid(d.name + ": repair box '" + c + "' used as gate input");
      }
      if (d.kind == DeclKind::kPand && d.children.size() < 2)
        invalid(d.name + ": pand needs at least two children");
      if (d.kind == DeclKind::kVot &&
          (d.vot_k < 1 || d.vot_k > static_cast<int>(d.children.size())))
        invalid(d.name + ": voting threshold out of range");
    }
    // Weak-determinism condition: elements connected to spare gates must
    // not be connected to fdeps.
    std::set<std::string> spare_connected;
    for (const auto& d : ast.decls)
      if (is_spare_decl(d.kind))
        for (const auto& c : d.children) spare_connected.insert(c);
    for (const GalileoDecl* f : fdeps) {
      if (f->children.size() < 2)
        invalid(f->name + ": fdep needs a trigger and at least one dependent");
      for (const auto& c : f->children) {
        if (decl_of.at(c)->kind != DeclKind::kBasicElement)
          invalid(f->name + ": fdep input '" + c + "' is not a basic element");
        if (spare_connected.count(c))
          invalid(f->name + ": '" + c +
                  "' is connected to both a spare gate and an fdep");
      }
    }
  }

  // Non-destructive fdep: the output of a dependent element b, wherever a
  // gate consumes it, becomes OR(b, triggers of b). Cascades through
  // triggers that are themselves dependents; cyclic dependencies are
  // rejected along with the DAG check.
  void rewrite_fdeps() {
    if (fdeps.empty()) return;
    std::map<int, std::vector<int>> triggers_of;  // dependent -> triggers
    for (const GalileoDecl* f : fdeps) {
      int trig = index_of.at(f->children[0]);
      for (std::size_t i = 1; i < f->children.size(); ++i) {
        int dep = index_of.at(f->children[i]);
        auto& ts = triggers_of[dep];
        if (std::find(ts.begin(), ts.end(), trig) == ts.end())
          ts.push_back(trig);
      }
    }
    // Topological order over trigger -> dependent edges.
    std::map<int, int> state;  // 0 new, 1 visiting, 2 done
    std::vector<int> order;
    auto visit = [&](auto&& self, int b) -> void {
      int& s = state[b];
      if (s == 2) return;
      if (s == 1) invalid("cyclic fdep dependencies");
      s = 1;
      auto it = triggers_of.find(b);
      if (it != triggers_of.end())
        for (int t : it->second) self(self, t);
      s = 2;
      order.push_back(b);
    };
    for (const auto& [dep, _] : triggers_of) visit(visit, dep);

    std::map<int, int> effective;  // element -> inserted OR node
    std::set<int> inserted;
    for (int b : order) {
      auto it = triggers_of.find(b);
      if (it == triggers_of.end()) continue;  // pure trigger
      TreeNode or_node;
      or_node.kind = NodeKind::kOr;
      or_node.name = tree.nodes[b].name + "__fdep";
      or_node.children.push_back(b);
      for (int t : it->second) {
        auto eff = effective.find(t);
        or_node.children.push_back(eff == effective.end() ? t : eff->second);
      }
      effective[b] = tree.size();
      inserted.insert(tree.size());
      tree.nodes.push_back(std::move(or_node));
    }
    for (int v = 0; v < tree.size(); ++v) {
      TreeNode& node = tree.nodes[v];
      if (node.kind == NodeKind::kSpare || node.kind == NodeKind::kRepairBox ||
          inserted.count(v))
        continue;
      for (int& c : node.children) {
        auto eff = effective.find(c);
        if (eff != effective.end()) c = eff->second;
      }
    }
    auto top_eff = effective.find(tree.top);
    if (top_eff != effective.end()) tree.top = top_eff->second;
  }

  // pand(w1,w2,w3) = pand(pand(w1,w2),w3)
  void binarize_pands() {
    int n = tree.size();
    for (int v = 0; v < n; ++v) {
      if (tree.nodes[v].kind != NodeKind::kPand ||
          tree.nodes[v].children.size() <= 2)
        continue;
      std::vector<int> kids = tree.nodes[v].children;
      int left = kids[0];
      for (std::size_t i = 1; i + 1 < kids.size(); ++i) {
        TreeNode inner;
        inner.kind = NodeKind::kPand;
        inner.name =
            tree.nodes[v].name + "__pand" + std::to_string(i);
        inner.children = {left, kids[i]};
        left = tree.size();
        tree.nodes.push_back(std::move(inner));
      }
      tree.nodes[v].children = {left, kids.back()};
    }
  }

  void wire_rboxes() {
    for (int v = 0; v < tree.size(); ++v) {
      if (tree.nodes[v].kind != NodeKind::kRepairBox) continue;
      tree.rboxes.push_back(v);
      int rank = 0;
      for (int c : tree.nodes[v].children) {
        TreeNode& elem = tree.nodes[c];
        if (!elem.is_basic())
          invalid(tree.nodes[v].name + ": repair box input '" + elem.name +
                  "' is not a basic element");
        if (elem.rbox != -1)
          invalid("'" + elem.name + "' is managed by two repair boxes");
        elem.rbox = v;
        elem.rbox_rank = rank++;
        elem.repairable = true;
      }
    }
  }

  void resolve_basic_pdfs() {
    for (const auto& d : ast.decls) {
      if (d.kind != DeclKind::kBasicElement) continue;
      TreeNode& node = tree.nodes[index_of.at(d.name)];
      if (d.lambda && d.fail_pdf)
        invalid(d.name + ": both lambda and EXT_failPDF given");
      if (d.fail_pdf)
        node.fail = *d.fail_pdf;
      else if (d.lambda)
        node.fail = Pdf::exponential(*d.lambda);
      else
        invalid(d.name + ": no failure distribution");
      validate(node.fail);

      if (node.repairable) {
        if (!d.repair_pdf)
          invalid(d.name + ": managed by a repair box but has no EXT_repairPDF");
        node.repair = *d.repair_pdf;
        validate(node.repair);
      }

      if (node.kind == NodeKind::kSpareBasic) {
        node.dormancy = dormancy_for(d, node);
        validate(node.dormancy);
      } else if (d.dorm_pdf || d.dorm) {
        invalid(d.name + ": dormancy given but element is not a spare");
      }
    }
  }

  Pdf dormancy_for(const GalileoDecl& d, const TreeNode& node) {
    std::set<DeclKind> parent_kinds;
    for (const auto& g : ast.decls)
      if (is_spare_decl(g.kind))
        for (std::size_t i = 1; i < g.children.size(); ++i)
          if (g.children[i] == d.name) parent_kinds.insert(g.kind);
    if (parent_kinds.size() != 1)
      invalid(d.name + ": shared by spare gates of different kinds");
    DeclKind kind = *parent_kinds.begin();
    bool has_explicit = d.dorm_pdf.has_value() || d.dorm.has_value();
    switch (kind) {
      case DeclKind::kColdSpare:
        if (has_explicit)
          invalid(d.name + ": cold spares have no dormant failures");
        return Pdf::never();
      case DeclKind::kHotSpare:
        if (has_explicit)
          invalid(d.name + ": hot spares use their failure distribution");
        return node.fail;
      default:
        break;
    }
    if (d.dorm_pdf && d.dorm)
      invalid(d.name + ": both dorm and EXT_dormPDF given");
    if (d.dorm_pdf) return *d.dorm_pdf;
    if (d.dorm) {
      if (node.fail.family != PdfFamily::kExponential)
        invalid(d.name + ": dorm factor requires an exponential failure");
      if (*d.dorm == 0) return Pdf::never();
      if (*d.dorm < 0) invalid(d.name + ": dorm factor must be >= 0");
      return Pdf::exponential(*d.dorm * node.fail.params[0]);
    }
    invalid(d.name + ": warm spare needs EXT_dormPDF or a dorm factor");
  }

  void check_structure() {
    // DAG + reachability + topological order from the top.
    std::vector<int> state(tree.size(), 0);
    auto visit = [&](auto&& self, int v) -> void {
      if (state[v] == 2) return;
      if (state[v] == 1) invalid("cycle through '" + tree.nodes[v].name + "'");
      state[v] = 1;
      if (tree.nodes[v].kind == NodeKind::kRepairBox)
        invalid("repair box '" + tree.nodes[v].name + "' used as gate input");
      for (int c : tree.nodes[v].children) self(self, c);
      state[v] = 2;
      tree.topo.push_back(v);
    };
    visit(visit, tree.top);
    for (int v = 0; v < tree.size(); ++v) {
      const TreeNode& node = tree.nodes[v];
      if (node.kind == NodeKind::kRepairBox) continue;
      if (state[v] != 2)
        invalid("'" + node.name + "' is not reachable from the top node");
      switch (node.kind) {
        case NodeKind::kAnd:
        case NodeKind::kOr:
          if (node.children.empty()) invalid(node.name + ": gate has no children");
          break;
        case NodeKind::kVot:
          if (node.vot_k < 1 ||
              node.vot_k > static_cast<int>(node.children.size()))
            invalid(node.name + ": voting threshold out of range");
          break;
        case NodeKind::kPand:
          if (node.children.size() != 2)
            invalid(node.name + ": pand must be binary after lowering");
          break;
        case NodeKind::kSpare: {
          if (node.children.size() < 2)
            invalid(node.name + ": spare gate needs children");
          if (tree.nodes[node.children[0]].kind != NodeKind::kBasicElement)
            invalid(node.name + ": primary must be a basic element");
          for (std::size_t i = 1; i < node.children.size(); ++i)
            if (tree.nodes[node.children[i]].kind != NodeKind::kSpareBasic)
              invalid(node.name + ": spare children must be spare elements");
          break;
        }
        default:
          break;
      }
      if (node.is_gate()) {
        for (int c : node.children)
          if (c == v) invalid(node.name + ": self loop");
      }
    }
    for (int v : tree.topo) {
      switch (tree.nodes[v].kind) {
        case NodeKind::kSpare: tree.spares.push_back(v); break;
        case NodeKind::kPand: tree.pands.push_back(v); break;
        case NodeKind::kBasicElement:
        case NodeKind::kSpareBasic: tree.basics.push_back(v); break;
        default: break;
      }
    }
    std::sort(tree.spares.begin(), tree.spares.end());
    std::sort(tree.pands.begin(), tree.pands.end());
    std::sort(tree.basics.begin(), tree.basics.end());
  }
};

}  // namespace

FaultTree lower(const GalileoAst& ast) { return Lowering(ast).run(); }

FaultTree lower(const std::string& galileo_text) {
  return lower(parse(galileo_text));
}

std::string kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kBasicElement: return "be";
    case NodeKind::kSpareBasic: return "sbe";
    case NodeKind::kAnd: return "and";
    case NodeKind::kOr: return "or";
    case NodeKind::kVot: return "vot";
    case NodeKind::kPand: return "pand";
    case NodeKind::kSpare: return "spare";
    case NodeKind::kRepairBox: return "rbox";
  }
  return "?";
}

}  // namespace raftres
