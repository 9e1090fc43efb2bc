#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raftres/fault_tree.hpp"
#include "raftres/semantics.hpp"

using namespace raftres;

namespace {

const char* kListing1 = R"(
toplevel "Gate2";
"Gate2" wsp "BE_C" "BE_D";
"BE_C" EXT_failPDF=rayleigh(6.0E-2);
"BE_D" lambda=1.11E-3 EXT_dormPDF=erlang(3,9);
)";

const char* kListing2 = R"(
toplevel "Gate3";
"Gate3" and "BE_E" "BE_F" "BE_G";
"BE_E" lambda=6.0E-5 EXT_repairPDF=uniform(8,24);
"BE_F" lambda=7.0E-5 EXT_repairPDF=uniform(8,24);
"BE_G" lambda=6.0E-5 EXT_repairPDF=uniform(8,12);
"RB1" repairbox_priority "BE_E" "BE_F" "BE_G";
)";

}  // namespace

TEST_CASE("listing 1 parses to the documented ast") {
  GalileoAst ast = parse(kListing1);
  CHECK(ast.toplevel == "Gate2");
  REQUIRE(ast.decls.size() == 3);
  const GalileoDecl& gate = ast.decls[0];
  CHECK(gate.name == "Gate2");
  CHECK(gate.kind == DeclKind::kWarmSpare);
  CHECK(gate.children == std::vector<std::string>{"BE_C", "BE_D"});
  const GalileoDecl* c = ast.find("BE_C");
  REQUIRE(c != nullptr);
  CHECK(*c->fail_pdf == Pdf::rayleigh(6.0e-2));
  const GalileoDecl* d = ast.find("BE_D");
  REQUIRE(d != nullptr);
  CHECK(*d->lambda == doctest::Approx(1.11e-3));
  CHECK(*d->dorm_pdf == Pdf::erlang(3, 9));
}

TEST_CASE("listing 2 parses and lowers to five nodes") {
  GalileoAst ast = parse(kListing2);
  CHECK(ast.toplevel == "Gate3");
  const GalileoDecl* rb = ast.find("RB1");
  REQUIRE(rb != nullptr);
  CHECK(rb->kind == DeclKind::kRepairBox);
  CHECK(rb->children ==
        std::vector<std::string>{"BE_E", "BE_F", "BE_G"});
  const GalileoDecl* g = ast.find("BE_G");
  REQUIRE(g != nullptr);
  CHECK(*g->repair_pdf == Pdf::uniform(8, 12));

  FaultTree tree = lower(ast);
  CHECK(tree.size() == 5);
  CHECK(tree.nodes[tree.top].name == "Gate3");
  CHECK(tree.nodes[tree.top].kind == NodeKind::kAnd);
  int be_count = 0, rbox_count = 0;
  for (const auto& n : tree.nodes) {
    be_count += n.kind == NodeKind::kBasicElement;
    rbox_count += n.kind == NodeKind::kRepairBox;
  }
  CHECK(be_count == 3);
  CHECK(rbox_count == 1);
  // lambda sugar lowered to an exponential failure law
  int e = tree.find("BE_E");
  CHECK(tree.nodes[e].fail == Pdf::exponential(6.0e-5));
  CHECK(tree.nodes[e].repairable);
  CHECK(tree.nodes[e].rbox_rank == 0);
  CHECK(tree.nodes[tree.find("BE_G")].rbox_rank == 2);
}

TEST_CASE("empty input is a syntax error") {
  CHECK_THROWS_AS(parse(""), SyntaxError);
}

TEST_CASE("parse errors carry position and kind") {
  CHECK_THROWS_AS(parse("toplevel \"A\"; \"A\" lambda=1; \"A\" lambda=2;"),
                  DuplicateNameError);
  CHECK_THROWS_AS(parse("toplevel \"A\"; \"A\" and \"B\";"),
                  UnknownReferenceError);
  CHECK_THROWS_AS(parse("toplevel \"A\"; \"B\" lambda=1;"),
                  UnknownReferenceError);
  CHECK_THROWS_AS(parse("toplevel \"A\"; \"A\" frobnicate=1;"), SyntaxError);
  CHECK_THROWS_AS(parse("toplevel \"A\"; \"A\" lambda=oops;"), SyntaxError);
  CHECK_THROWS_AS(parse("toplevel \"A\" \"A\" lambda=1;"), SyntaxError);
  try {
    parse("toplevel \"A\";\n\"A\" bogus_gate \"B\";\n\"B\" lambda=1;");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("unknown distributions and bad parameters are rejected") {
  CHECK_THROWS_AS(parse("toplevel \"A\"; \"A\" EXT_failPDF=cauchy(1);"),
                  SyntaxError);
  CHECK_THROWS_AS(parse("toplevel \"A\"; \"A\" EXT_failPDF=uniform(5,5);"),
                  SyntaxError);
}

TEST_CASE("vot arity must match the child list") {
  CHECK_THROWS_AS(
      parse("toplevel \"V\"; \"V\" 2of3 \"a\" \"b\"; \"a\" lambda=1; \"b\" lambda=1;"),
      SyntaxError);
  CHECK_THROWS_AS(
      lower("toplevel \"V\"; \"V\" 3of2 \"a\" \"b\"; \"a\" lambda=1; \"b\" lambda=1;"),
      ValidationError);
}

TEST_CASE("parse print parse is a fixpoint") {
  for (const char* text : {kListing1, kListing2}) {
    GalileoAst once = parse(text);
    GalileoAst twice = parse(print(once));
    CHECK(once == twice);
    CHECK(print(once) == print(twice));
  }
}

TEST_CASE("comments and short pdf aliases are accepted") {
  GalileoAst ast = parse(
      "// a comment line\n"
      "toplevel \"T\"; // end of line comment\n"
      "\"T\" or \"x\" \"y\";\n"
      "\"x\" EXT_failPDF=exp(0.04);\n"
      "\"y\" EXT_failPDF=wei(4.5,0.0125);\n");
  CHECK(*ast.find("x")->fail_pdf == Pdf::exponential(0.04));
  CHECK(*ast.find("y")->fail_pdf == Pdf::weibull(4.5, 0.0125));
}

TEST_CASE("lowering rejects structural violations") {
  // cycle
  CHECK_THROWS_AS(lower("toplevel \"A\"; \"A\" and \"B\"; \"B\" or \"A\";"),
                  ValidationError);
  // repair box with a gate input
  CHECK_THROWS_AS(lower("toplevel \"A\"; \"A\" and \"B\"; \"B\" lambda=1; "
                        "\"R\" repairbox_priority \"A\";"),
                  ValidationError);
  // managed element without a repair law
  CHECK_THROWS_AS(lower("toplevel \"A\"; \"A\" and \"B\"; \"B\" lambda=1; "
                        "\"R\" repairbox_priority \"B\";"),
                  ValidationError);
  // element in two repair boxes
  CHECK_THROWS_AS(
      lower("toplevel \"A\"; \"A\" and \"B\"; "
            "\"B\" lambda=1 EXT_repairPDF=exponential(1); "
            "\"R1\" repairbox_priority \"B\"; \"R2\" repairbox_priority \"B\";"),
      ValidationError);
  // a primary feeding two spare gates
  CHECK_THROWS_AS(
      lower("toplevel \"A\"; \"A\" and \"G1\" \"G2\"; "
            "\"G1\" wsp \"P\" \"S1\"; \"G2\" wsp \"P\" \"S2\"; "
            "\"P\" lambda=1; "
            "\"S1\" lambda=1 EXT_dormPDF=exponential(0.5); "
            "\"S2\" lambda=1 EXT_dormPDF=exponential(0.5);"),
      ValidationError);
  // unreachable node
  CHECK_THROWS_AS(lower("toplevel \"A\"; \"A\" and \"B\"; \"B\" lambda=1; "
                        "\"C\" lambda=1;"),
                  ValidationError);
  // warm spare without dormancy
  CHECK_THROWS_AS(lower("toplevel \"G\"; \"G\" wsp \"P\" \"S\"; "
                        "\"P\" lambda=1; \"S\" lambda=1;"),
                  ValidationError);
  // basic element without failure law
  CHECK_THROWS_AS(lower("toplevel \"A\"; \"A\" and \"B\"; "
                        "\"B\" EXT_repairPDF=exponential(1);"),
                  ValidationError);
}

TEST_CASE("spare gates sharing an sbe is fine, fdep on it is not") {
  const char* shared =
      "toplevel \"A\"; \"A\" and \"G1\" \"G2\"; "
      "\"G1\" wsp \"P1\" \"S\"; \"G2\" wsp \"P2\" \"S\"; "
      "\"P1\" lambda=1; \"P2\" lambda=1; "
      "\"S\" lambda=1 EXT_dormPDF=exponential(0.5);";
  CHECK_NOTHROW(lower(shared));

  const char* with_fdep =
      "toplevel \"A\"; \"A\" and \"G1\" \"G2\" \"T\"; "
      "\"G1\" wsp \"P1\" \"S\"; \"G2\" wsp \"P2\" \"S\"; "
      "\"P1\" lambda=1; \"P2\" lambda=1; \"T\" lambda=1; "
      "\"S\" lambda=1 EXT_dormPDF=exponential(0.5); "
      "\"F\" fdep \"T\" \"S\";";
  CHECK_THROWS_WITH_AS(lower(with_fdep),
                       doctest::Contains("spare gate and an fdep"),
                       ValidationError);
}

TEST_CASE("spare kind sugar sets the dormancy law") {
  FaultTree cold = lower(
      "toplevel \"G\"; \"G\" csp \"P\" \"S\"; \"P\" lambda=1; \"S\" lambda=1;");
  CHECK(cold.nodes[cold.find("S")].dormancy == Pdf::never());

  FaultTree hot = lower(
      "toplevel \"G\"; \"G\" hsp \"P\" \"S\"; \"P\" lambda=1; \"S\" lambda=2;");
  CHECK(hot.nodes[hot.find("S")].dormancy == Pdf::exponential(2));

  FaultTree warm = lower(
      "toplevel \"G\"; \"G\" wsp \"P\" \"S\"; \"P\" lambda=1; "
      "\"S\" lambda=2 dorm=0.25;");
  CHECK(warm.nodes[warm.find("S")].dormancy == Pdf::exponential(0.5));
}

TEST_CASE("fdep rewrite inserts an or over the dependent output") {
  // fdep(T, B) with parent and(B, C)  ==>  and(or(B, T), C)
  FaultTree tree = lower(
      "toplevel \"A\"; \"A\" and \"B\" \"C\"; "
      "\"B\" lambda=1; \"C\" lambda=1; \"T\" lambda=1; "
      "\"F\" fdep \"T\" \"B\";");
  int top = tree.top;
  REQUIRE(tree.nodes[top].children.size() == 2);
  int first = tree.nodes[top].children[0];
  CHECK(tree.nodes[first].kind == NodeKind::kOr);
  REQUIRE(tree.nodes[first].children.size() == 2);
  CHECK(tree.nodes[tree.nodes[first].children[0]].name == "B");
  CHECK(tree.nodes[tree.nodes[first].children[1]].name == "T");
  CHECK(tree.nodes[tree.nodes[top].children[1]].name == "C");

  // truth-table oracle over the four basic elements
  int b = tree.find("B"), c = tree.find("C"), t = tree.find("T");
  for (int mask = 0; mask < 8; ++mask) {
    ModelState st = ModelState::initial(tree);
    bool xb = mask & 1, xc = mask & 2, xt = mask & 4;
    st.basic_x[b] = xb;
    st.basic_x[c] = xc;
    st.basic_x[t] = xt;
    bool expected = (xb || xt) && xc;
    CHECK(top_failed(tree, st) == expected);
  }
}

TEST_CASE("cascading fdeps resolve through triggers") {
  // T triggers B, B triggers C: C's effective output is C | B | T.
  FaultTree tree = lower(
      "toplevel \"A\"; \"A\" and \"C\" \"D\"; "
      "\"B\" lambda=1; \"C\" lambda=1; \"D\" lambda=1; \"T\" lambda=1; "
      "\"F1\" fdep \"T\" \"B\"; \"F2\" fdep \"B\" \"C\";");
  int b = tree.find("B"), c = tree.find("C"), d = tree.find("D"),
      t = tree.find("T");
  for (int mask = 0; mask < 16; ++mask) {
    ModelState st = ModelState::initial(tree);
    bool xb = mask & 1, xc = mask & 2, xd = mask & 4, xt = mask & 8;
    st.basic_x[b] = xb;
    st.basic_x[c] = xc;
    st.basic_x[d] = xd;
    st.basic_x[t] = xt;
    bool expected = (xc || xb || xt) && xd;
    CHECK(top_failed(tree, st) == expected);
  }
  CHECK_THROWS_WITH_AS(
      lower("toplevel \"A\"; \"A\" and \"B\" \"C\"; "
            "\"B\" lambda=1; \"C\" lambda=1; "
            "\"F1\" fdep \"B\" \"C\"; \"F2\" fdep \"C\" \"B\";"),
      doctest::Contains("cyclic"), ValidationError);
}

TEST_CASE("wide pands become binary chains") {
  FaultTree tree = lower(
      "toplevel \"P\"; \"P\" pand \"a\" \"b\" \"c\"; "
      "\"a\" lambda=1; \"b\" lambda=1; \"c\" lambda=1;");
  const TreeNode& top = tree.nodes[tree.top];
  REQUIRE(top.children.size() == 2);
  CHECK(tree.nodes[top.children[0]].kind == NodeKind::kPand);
  CHECK(tree.nodes[top.children[1]].name == "c");
  const TreeNode& inner = tree.nodes[top.children[0]];
  CHECK(tree.nodes[inner.children[0]].name == "a");
  CHECK(tree.nodes[inner.children[1]].name == "b");
}
