#ifndef RAFTRES_AST_HPP_
#define RAFTRES_AST_HPP_

#include <optional>
#include <string>
#include <vector>

#include "raftres/errors.hpp"
#include "raftres/pdf.hpp"

namespace raftres {

enum class DeclKind {
  kBasicElement,
  kAnd,
  kOr,
  kVot,
  kPand,
  kWarmSpare,
  kColdSpare,
  kHotSpare,
  kFdep,
  kRepairBox,
};

// One `;`-terminated declaration from a Galileo file. Gate declarations
// carry children; basic-element declarations carry the attribute map.
struct GalileoDecl {
  std::string name;
  DeclKind kind = DeclKind::kBasicElement;
  int vot_k = 0;                       // for kind == kVot (the K in KofM)
  std::vector<std::string> children;   // declared order is meaningful
  std::optional<double> lambda;        // lambda=  sugar
  std::optional<double> dorm;          // dorm=    sugar (factor on lambda)
  std::optional<Pdf> fail_pdf;         // EXT_failPDF=
  std::optional<Pdf> repair_pdf;       // EXT_repairPDF=
  std::optional<Pdf> dorm_pdf;         // EXT_dormPDF=
  int line = 0;

  friend bool operator==(const GalileoDecl& a, const GalileoDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.vot_k == b.vot_k &&
           a.children == b.children && a.lambda == b.lambda &&
           a.dorm == b.dorm && a.fail_pdf == b.fail_pdf &&
           a.repair_pdf == b.repair_pdf && a.dorm_pdf == b.dorm_pdf;
  }
};

struct GalileoAst {
  std::string toplevel;
  std::vector<GalileoDecl> decls;

  const GalileoDecl* find(const std::string& name) const {
    for (const auto& d : decls)
      if (d.name == name) return &d;
    return nullptr;
  }

  friend bool operator==(const GalileoAst& a, const GalileoAst& b) {
    return a.toplevel == b.toplevel && a.decls == b.decls;
  }
};

class DuplicateNameError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class UnknownReferenceError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// Parses extended-Galileo text (grammar in docs/galileo.md). Checks that
// names are unique, every referenced child is declared, and the toplevel
// names a declared node. Unknown keywords are rejected.
GalileoAst parse(const std::string& text);

// Canonical printer; parse(print(ast)) == ast.
std::string print(const GalileoAst& ast);

}  // namespace raftres

#endif  // RAFTRES_AST_HPP_
