#include <charconv>
#include <cctype>
#include <map>
#include <set>

#include "raftres/ast.hpp"

namespace raftres {

namespace {

enum class TokKind { kName, kWord, kNumber, kPunct, kEnd };

struct Token {
  TokKind kind;
  std::string text;
  double number = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(tok_.line, tok_.col, message);
  }

 private:
  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_ = {TokKind::kEnd, "<eof>", 0, line_, col_};
      return;
    }
    char c = text_[pos_];
    if (c == '"') {
      get();
      std::string name;
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n')
        name += get();
      if (pos_ >= text_.size() || text_[pos_] != '"')
        throw SyntaxError(tok_.line, tok_.col, "unterminated quoted name");
      get();
      if (name.empty())
        throw SyntaxError(tok_.line, tok_.col, "empty node name");
      tok_ = {TokKind::kName, name, 0, tok_.line, tok_.col};
      return;
    }
    if (c == ';' || c == '=' || c == '(' || c == ')' || c == ',') {
      get();
      tok_ = {TokKind::kPunct, std::string(1, c), 0, tok_.line, tok_.col};
      return;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
        c == '+' || c == '-') {
      std::string word;
      while (pos_ < text_.size()) {
        char w = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(w)) || w == '_' ||
            w == '.' || w == '+' || w == '-')
          word += get();
        else
          break;
      }
      double value = 0;
      auto res = std::from_chars(word.data(), word.data() + word.size(), value);
      if (res.ec == std::errc() && res.ptr == word.data() + word.size()) {
        tok_ = {TokKind::kNumber, word, value, tok_.line, tok_.col};
      } else {
        tok_ = {TokKind::kWord, word, 0, tok_.line, tok_.col};
      }
      return;
    }
    throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

const std::map<std::string, DeclKind>& gate_keywords() {
  static const std::map<std::string, DeclKind> kMap = {
      {"and", DeclKind::kAnd},   {"or", DeclKind::kOr},
      {"pand", DeclKind::kPand}, {"wsp", DeclKind::kWarmSpare},
      {"csp", DeclKind::kColdSpare}, {"hsp", DeclKind::kHotSpare},
      {"fdep", DeclKind::kFdep}, {"repairbox_priority", DeclKind::kRepairBox},
  };
  return kMap;
}

const std::map<std::string, PdfFamily>& pdf_names() {
  // Full names (as in the listings) plus the short aliases of Table 3.
  static const std::map<std::string, PdfFamily> kMap = {
      {"dirac", PdfFamily::kDirac},       {"dir", PdfFamily::kDirac},
      {"exponential", PdfFamily::kExponential}, {"exp", PdfFamily::kExponential},
      {"erlang", PdfFamily::kErlang},     {"erl", PdfFamily::kErlang},
      {"uniform", PdfFamily::kUniform},   {"uni", PdfFamily::kUniform},
      {"rayleigh", PdfFamily::kRayleigh}, {"ray", PdfFamily::kRayleigh},
      {"weibull", PdfFamily::kWeibull},   {"wei", PdfFamily::kWeibull},
      {"normal", PdfFamily::kNormal},     {"nor", PdfFamily::kNormal},
      {"lognormal", PdfFamily::kLogNormal}, {"lnor", PdfFamily::kLogNormal},
      {"never", PdfFamily::kNeverFires},
  };
  return kMap;
}

// "3of5" style voting kinds.
bool parse_kofm(const std::string& word, int* k, int* m) {
  auto of = word.find("of");
  if (of == std::string::npos || of == 0 || of + 2 >= word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i >= of && i < of + 2) continue;
    if (!std::isdigit(static_cast<unsigned char>(word[i]))) return false;
  }
  *k = std::stoi(word.substr(0, of));
  *m = std::stoi(word.substr(of + 2));
  return true;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  GalileoAst run() {
    GalileoAst ast;
    bool have_toplevel = false;
    while (lex_.peek().kind != TokKind::kEnd) {
      Token first = lex_.take();
      if (first.kind == TokKind::kWord && first.text == "toplevel") {
        if (have_toplevel)
          throw SyntaxError(first.line, first.col, "duplicate toplevel");
        ast.toplevel = expect_name();
        have_toplevel = true;
      } else if (first.kind == TokKind::kName) {
        ast.decls.push_back(declaration(first));
      } else {
        throw SyntaxError(first.line, first.col,
                          "expected 'toplevel' or a quoted node name, got '" +
                              first.text + "'");
      }
      expect_punct(";");
    }
    if (!have_toplevel)
      throw SyntaxError(1, 1, "missing toplevel declaration");
    check_references(ast);
    return ast;
  }

 private:
  GalileoDecl declaration(const Token& name_tok) {
    GalileoDecl decl;
    decl.name = name_tok.text;
    decl.line = name_tok.line;
    const Token& next = lex_.peek();
    if (next.kind == TokKind::kWord || next.kind == TokKind::kNumber) {
      int k = 0, m = 0;
      auto gate = gate_keywords().find(next.text);
      if (gate != gate_keywords().end()) {
        lex_.take();
        decl.kind = gate->second;
        parse_children(&decl);
        return decl;
      }
      if (parse_kofm(next.text, &k, &m)) {
        lex_.take();
        decl.kind = DeclKind::kVot;
        decl.vot_k = k;
        parse_children(&decl);
        if (static_cast<int>(decl.children.size()) != m) {
          throw SyntaxError(next.line, next.col,
                            decl.name + ": " + next.text + " declares " +
                                std::to_string(m) + " children but " +
                                std::to_string(decl.children.size()) +
                                " are listed");
        }
        return decl;
      }
      // Otherwise a basic element with attributes.
      decl.kind = DeclKind::kBasicElement;
      parse_attributes(&decl);
      return decl;
    }
    throw SyntaxError(next.line, next.col,
                      "expected gate kind or attributes after '" + decl.name +
                          "'");
  }

  void parse_children(GalileoDecl* decl) {
    while (lex_.peek().kind == TokKind::kName)
      decl->children.push_back(lex_.take().text);
    if (decl->children.empty())
      lex_.fail(decl->name + ": gate declaration lists no children");
  }

  void parse_attributes(GalileoDecl* decl) {
    while (lex_.peek().kind == TokKind::kWord) {
      Token key = lex_.take();
      expect_punct("=");
      if (key.text == "lambda") {
        set_once(decl->lambda, expect_number(), key);
      } else if (key.text == "dorm") {
        set_once(decl->dorm, expect_number(), key);
      } else if (key.text == "EXT_failPDF") {
        set_once(decl->fail_pdf, parse_pdf(), key);
      } else if (key.text == "EXT_repairPDF") {
        set_once(decl->repair_pdf, parse_pdf(), key);
      } else if (key.text == "EXT_dormPDF") {
        set_once(decl->dorm_pdf, parse_pdf(), key);
      } else {
        throw SyntaxError(key.line, key.col,
                          "unknown keyword '" + key.text + "'");
      }
    }
    if (!decl->lambda && !decl->fail_pdf && !decl->repair_pdf &&
        !decl->dorm_pdf && !decl->dorm)
      lex_.fail(decl->name + ": declaration has no attributes");
  }

  Pdf parse_pdf() {
    Token fam = lex_.take();
    if (fam.kind != TokKind::kWord)
      throw SyntaxError(fam.line, fam.col, "expected distribution name");
    auto it = pdf_names().find(fam.text);
    if (it == pdf_names().end())
      throw SyntaxError(fam.line, fam.col,
                        "unknown distribution '" + fam.text + "'");
    Pdf pdf;
    pdf.family = it->second;
    if (pdf.family == PdfFamily::kNeverFires) {
      // `never` takes no parameter list; `dirac(inf)` is not a spelling.
      if (lex_.peek().kind == TokKind::kPunct && lex_.peek().text == "(") {
        lex_.take();
        expect_punct(")");
      }
      return pdf;
    }
    expect_punct("(");
    pdf.params.push_back(expect_number());
    while (lex_.peek().kind == TokKind::kPunct && lex_.peek().text == ",") {
      lex_.take();
      pdf.params.push_back(expect_number());
    }
    expect_punct(")");
    try {
      validate(pdf);
    } catch (const ParamError& e) {
      throw SyntaxError(fam.line, fam.col, e.what());
    }
    return pdf;
  }

  template <typename T>
  void set_once(std::optional<T>& slot, T value, const Token& key) {
    if (slot.has_value())
      throw SyntaxError(key.line, key.col,
                        "attribute '" + key.text + "' given twice");
    slot = std::move(value);
  }

  std::string expect_name() {
    Token t = lex_.take();
    if (t.kind != TokKind::kName)
      throw SyntaxError(t.line, t.col, "expected quoted node name");
    return t.text;
  }

  double expect_number() {
    Token t = lex_.take();
    if (t.kind != TokKind::kNumber)
      throw SyntaxError(t.line, t.col, "expected a number, got '" + t.text + "'");
    return t.number;
  }

  void expect_punct(const std::string& p) {
    Token t = lex_.take();
    if (t.kind != TokKind::kPunct || t.text != p)
      throw SyntaxError(t.line, t.col,
                        "expected '" + p + "', got '" + t.text + "'");
  }

  void check_references(const GalileoAst& ast) {
    std::map<std::string, int> seen;
    for (const auto& d : ast.decls) {
      if (!seen.emplace(d.name, d.line).second)
        throw DuplicateNameError(d.line, 1,
                                 "node '" + d.name + "' declared twice");
    }
    for (const auto& d : ast.decls) {
      for (const auto& child : d.children) {
        if (!seen.count(child))
          throw UnknownReferenceError(
              d.line, 1, "'" + d.name + "' references undeclared '" + child + "'");
      }
    }
    if (!seen.count(ast.toplevel))
      throw UnknownReferenceError(1, 1, "toplevel '" + ast.toplevel +
                                            "' is not declared");
  }

  Lexer lex_;
};

}  // namespace

GalileoAst parse(const std::string& text) { return Parser(text).run(); }

namespace {

std::string quoted(const std::string& name) { return '"' + name + '"'; }

std::string number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string kind_word(const GalileoDecl& d) {
  switch (d.kind) {
    case DeclKind::kAnd: return "and";
    case DeclKind::kOr: return "or";
    case DeclKind::kVot:
      return std::to_string(d.vot_k) + "of" + std::to_string(d.children.size());
    case DeclKind::kPand: return "pand";
    case DeclKind::kWarmSpare: return "wsp";
    case DeclKind::kColdSpare: return "csp";
    case DeclKind::kHotSpare: return "hsp";
    case DeclKind::kFdep: return "fdep";
    case DeclKind::kRepairBox: return "repairbox_priority";
    case DeclKind::kBasicElement: return "";
  }
  return "";
}

}  // namespace

std::string print(const GalileoAst& ast) {
  std::string out = "toplevel " + quoted(ast.toplevel) + ";\n";
  for (const auto& d : ast.decls) {
    out += quoted(d.name);
    if (d.kind != DeclKind::kBasicElement) {
      out += ' ' + kind_word(d);
      for (const auto& c : d.children) out += ' ' + quoted(c);
    } else {
      if (d.lambda) out += " lambda=" + number(*d.lambda);
      if (d.dorm) out += " dorm=" + number(*d.dorm);
      if (d.fail_pdf) out += " EXT_failPDF=" + to_string(*d.fail_pdf);
      if (d.repair_pdf) out += " EXT_repairPDF=" + to_string(*d.repair_pdf);
      if (d.dorm_pdf) out += " EXT_dormPDF=" + to_string(*d.dorm_pdf);
    }
    out += ";\n";
  }
  return out;
}

}  // namespace raftres
