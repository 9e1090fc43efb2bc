#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raftres/casestudies.hpp"
#include "raftres/engine.hpp"

using namespace raftres;

namespace {

FaultTree build(CaseFamily family, int param) {
  return lower(generate({family, param}).text);
}

int count_kind(const FaultTree& tree, NodeKind kind) {
  int n = 0;
  for (const auto& node : tree.nodes) n += node.kind == kind;
  return n;
}

}  // namespace

TEST_CASE("vot-2 wires a 4of7 and a 6of8 with four shared children") {
  FaultTree tree = build(CaseFamily::kVot, 2);
  int a = tree.find("VOTA"), b = tree.find("VOTB");
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  CHECK(tree.nodes[a].vot_k == 4);
  CHECK(tree.nodes[a].children.size() == 7);
  CHECK(tree.nodes[b].vot_k == 6);
  CHECK(tree.nodes[b].children.size() == 8);
  // children shared between both gates
  int shared = 0;
  for (int ca : tree.nodes[a].children)
    for (int cb : tree.nodes[b].children) shared += ca == cb;
  CHECK(shared == 4);
  CHECK(tree.nodes[tree.top].kind == NodeKind::kAnd);
  // be-a children carry the lognormal law, shared ones the weibull law
  CHECK(tree.nodes[tree.find("A1")].fail == Pdf::lognormal(4.37, 0.33));
  CHECK(tree.nodes[tree.find("S1")].fail == Pdf::weibull(4.5, 0.0125));
  CHECK(tree.nodes[tree.find("B1")].fail == Pdf::weibull(4.5, 0.0125));
  CHECK(tree.nodes[tree.find("A1")].repair == Pdf::uniform(0.4, 0.95));
}

TEST_CASE("rc-3 is a 3of5 vote over spares with dedicated sbes") {
  FaultTree tree = build(CaseFamily::kRc, 3);
  CHECK(tree.nodes[tree.top].kind == NodeKind::kVot);
  CHECK(tree.nodes[tree.top].vot_k == 3);
  CHECK(tree.nodes[tree.top].children.size() == 5);
  for (int c : tree.nodes[tree.top].children)
    CHECK(tree.nodes[c].kind == NodeKind::kSpare);
  int p1 = tree.find("P1"), s1 = tree.find("S1");
  CHECK(tree.nodes[p1].fail == Pdf::exponential(0.04));
  CHECK(tree.nodes[p1].repair == Pdf::normal(2.0, 0.7));
  CHECK(tree.nodes[s1].dormancy == Pdf::exponential(0.5));
  // each sbe is used by exactly one spare gate
  for (int sp : tree.spares) CHECK(tree.nodes[sp].children.size() == 2);
  // repair priority: primaries ahead of spares
  CHECK(tree.nodes[p1].rbox_rank < tree.nodes[s1].rbox_rank);
}

TEST_CASE("dspare is a ternary and over spares sharing all sbes") {
  FaultTree tree = build(CaseFamily::kDspare, 3);
  CHECK(tree.nodes[tree.top].kind == NodeKind::kAnd);
  REQUIRE(tree.nodes[tree.top].children.size() == 3);
  for (int c : tree.nodes[tree.top].children) {
    CHECK(tree.nodes[c].kind == NodeKind::kSpare);
    CHECK(tree.nodes[c].children.size() == 4);  // primary + 3 shared
  }
  // sbes repaired before primaries
  CHECK(tree.nodes[tree.find("S1")].rbox_rank <
        tree.nodes[tree.find("P1")].rbox_rank);
  CHECK(count_kind(tree, NodeKind::kSpareBasic) == 3);
}

TEST_CASE("ftpp triad is a 2of3 over spares sharing cold sbes") {
  FaultTree tree = build(CaseFamily::kFtpp, 4);
  int triad = tree.find("TRIAD");
  REQUIRE(triad >= 0);
  CHECK(tree.nodes[triad].kind == NodeKind::kVot);
  CHECK(tree.nodes[triad].vot_k == 2);
  CHECK(tree.nodes[triad].children.size() == 3);
  CHECK(count_kind(tree, NodeKind::kSpareBasic) == 4);
  // cold spares: no dormant failures
  CHECK(tree.nodes[tree.find("S1")].dormancy == Pdf::never());
  // separate boxes for processing and network elements
  CHECK(tree.rboxes.size() == 2);
  CHECK(tree.nodes[tree.find("NE1")].fail == Pdf::lognormal(6.5, 0.5));
  CHECK(tree.nodes[tree.find("NE1")].repair == Pdf::normal(150.0, 50.0));
}

TEST_CASE("hvc shares its sbes among all four spares") {
  FaultTree tree = build(CaseFamily::kHvc, 4);
  CHECK(tree.nodes[tree.top].vot_k == 2);
  CHECK(tree.nodes[tree.top].children.size() == 4);
  for (int sp : tree.spares)
    CHECK(tree.nodes[sp].children.size() == 5);  // primary + 4 shared
  CHECK(tree.nodes[tree.find("P1")].fail == Pdf::rayleigh(1.999));
  CHECK(tree.nodes[tree.find("S1")].dormancy == Pdf::erlang(3, 0.25));
}

TEST_CASE("hecs keeps the documented node and clock budget") {
  FaultTree tree = build(CaseFamily::kHecs, 5);
  CHECK(tree.size() == 42);
  // 26 basic elements; the cold processor spares carry dormancy clocks
  CHECK(static_cast<int>(tree.basics.size()) == 26);
  CHECK(count_kind(tree, NodeKind::kSpareBasic) == 5);
  // fdeps were rewritten away into or-insertions
  int inserted = 0;
  for (const auto& node : tree.nodes)
    inserted += node.name.find("__fdep") != std::string::npos;
  CHECK(inserted == 5);

  FaultTree one = build(CaseFamily::kHecs, 1);
  CHECK(one.size() == 27 + 3);
  CHECK(one.nodes[one.find("BSS")].children.size() == 2);  // 2n buses
}

TEST_CASE("rwc-4 hits the documented node count") {
  FaultTree tree = build(CaseFamily::kRwc, 4);
  CHECK(tree.size() == 42);
  // combining vote: RC-5 spares as direct children plus the hv adapter
  CHECK(tree.nodes[tree.top].kind == NodeKind::kVot);
  CHECK(tree.nodes[tree.top].vot_k == 5);
  CHECK(tree.nodes[tree.top].children.size() == 8);  // 7 spares + or
  CHECK(count_kind(tree, NodeKind::kSpare) == 11);
  CHECK(count_kind(tree, NodeKind::kRepairBox) == 4);
}

TEST_CASE("every benchmarked configuration lowers cleanly") {
  for (CaseFamily family :
       {CaseFamily::kVot, CaseFamily::kDspare, CaseFamily::kHecs,
        CaseFamily::kFtpp, CaseFamily::kRc, CaseFamily::kHvc,
        CaseFamily::kRwc}) {
    for (int param : benchmarked_params(family)) {
      CAPTURE(family_to_string(family));
      CAPTURE(param);
      GeneratedCase gen = generate({family, param});
      CHECK(gen.warning.empty());
      FaultTree tree;
      REQUIRE_NOTHROW(tree = lower(gen.text));
      // round-trip through the canonical printer
      GalileoAst ast = parse(gen.text);
      CHECK(parse(print(ast)) == ast);
      // and the simulation engine accepts it
      TraceController tc(tree, nullptr, RngStream(1));
      for (int i = 0; i < 50; ++i)
        if (!tc.step()) break;
    }
  }
}

TEST_CASE("out-of-range parameters warn but still generate") {
  GeneratedCase gen = generate({CaseFamily::kRc, 9});
  CHECK(!gen.warning.empty());
  CHECK_NOTHROW(lower(gen.text));
  CHECK_THROWS_AS(generate({CaseFamily::kRc, 0}), ValidationError);
}

TEST_CASE("family names round-trip") {
  for (CaseFamily family :
       {CaseFamily::kVot, CaseFamily::kDspare, CaseFamily::kHecs,
        CaseFamily::kFtpp, CaseFamily::kRc, CaseFamily::kHvc,
        CaseFamily::kRwc})
    CHECK(family_from_string(family_to_string(family)) == family);
  CHECK(family_from_string("hecs") == CaseFamily::kHecs);
  CHECK_THROWS_AS(family_from_string("nope"), ValidationError);
}
