#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "raftres/rng.hpp"
#include "raftres/semantics.hpp"
#include "tiny_rwc.hpp"

using namespace raftres;

namespace {

// Independent boolean oracle for static gates.
bool static_oracle(const FaultTree& tree, int v,
                   const std::vector<bool>& leaf_failed) {
  const TreeNode& node = tree.nodes[v];
  switch (node.kind) {
    case NodeKind::kBasicElement:
    case NodeKind::kSpareBasic:
      return leaf_failed[v];
    case NodeKind::kAnd: {
      for (int c : node.children)
        if (!static_oracle(tree, c, leaf_failed)) return false;
      return true;
    }
    case NodeKind::kOr: {
      for (int c : node.children)
        if (static_oracle(tree, c, leaf_failed)) return true;
      return false;
    }
    case NodeKind::kVot: {
      int count = 0;
      for (int c : node.children) count += static_oracle(tree, c, leaf_failed);
      return count >= node.vot_k;
    }
    default:
      FAIL("not a static gate");
      return false;
  }
}

// Random static tree (and/or/vot over basic elements), as Galileo text.
std::string random_static_tree(RngStream& rng, int max_leaves) {
  int leaves = 2 + static_cast<int>(rng.next_u64() % (max_leaves - 1));
  std::string text;
  std::vector<std::string> pool;
  for (int i = 0; i < leaves; ++i) {
    pool.push_back("b" + std::to_string(i));
    text += "\"b" + std::to_string(i) + "\" lambda=1;\n";
  }
  int gate_id = 0;
  while (pool.size() > 1) {
    int arity = 2 + static_cast<int>(rng.next_u64() % 3);
    arity = std::min<int>(arity, static_cast<int>(pool.size()));
    std::string name = "g" + std::to_string(gate_id++);
    std::vector<std::string> kids;
    for (int i = 0; i < arity; ++i) {
      int pick = static_cast<int>(rng.next_u64() % pool.size());
      kids.push_back(pool[pick]);
      pool.erase(pool.begin() + pick);
    }
    int which = static_cast<int>(rng.next_u64() % 3);
    std::string kind = which == 0 ? "and" : which == 1 ? "or" : "";
    if (kind.empty()) {
      int k = 1 + static_cast<int>(rng.next_u64() % arity);
      kind = std::to_string(k) + "of" + std::to_string(arity);
    }
    text += "\"" + name + "\" " + kind;
    for (const auto& c : kids) text += " \"" + c + "\"";
    text += ";\n";
    pool.push_back(name);
  }
  return "toplevel \"" + pool[0] + "\";\n" + text;
}

}  // namespace

TEST_CASE("tiny rwc state tuple and outputs") {
  FaultTree tree = lower(kTinyRwc);
  ModelState st = ModelState::initial(tree);
  CHECK(state_vector(tree, st) == std::vector<int>{0, 0, 2, 0, 0});
  CHECK(top_failed(tree, st) == 0);

  // P fails, S is activated by the spare gate.
  int p = tree.find("P"), s = tree.find("S");
  st.basic_x[p] = 1;
  st.basic_x[s] = 0;
  st.serving[tree.find("Rcab")] = s;
  CHECK(state_vector(tree, st) == std::vector<int>{0, 1, 0, 0, 0});
  CHECK(output(tree, tree.top, st) == 0);
  CHECK(output(tree, tree.find("Rcab"), st) == 0);

  // HVcab, P and S all failed: full system failure.
  st.basic_x[tree.find("HVcab")] = 1;
  st.basic_x[s] = 1;
  st.serving[tree.find("Rcab")] = -1;
  CHECK(top_failed(tree, st) == 1);

  // Only HVcab failed: the and gate needs both children.
  ModelState st2 = ModelState::initial(tree);
  st2.basic_x[tree.find("HVcab")] = 1;
  CHECK(top_failed(tree, st2) == 0);
}

TEST_CASE("and over all-failed children outputs 1") {
  FaultTree tree = lower(
      "toplevel \"A\"; \"A\" and \"x\" \"y\" \"z\"; "
      "\"x\" lambda=1; \"y\" lambda=1; \"z\" lambda=1;");
  ModelState st = ModelState::initial(tree);
  for (int v : tree.basics) st.basic_x[v] = 1;
  CHECK(top_failed(tree, st) == 1);
}

TEST_CASE("dormant failed sbe outputs 1") {
  FaultTree tree = lower(
      "toplevel \"A\"; \"A\" or \"G\" \"S\"; \"G\" wsp \"P\" \"S\"; "
      "\"P\" lambda=1; \"S\" lambda=1 EXT_dormPDF=exponential(1);");
  ModelState st = ModelState::initial(tree);
  int s = tree.find("S");
  CHECK(output(tree, s, st) == 0);  // dormant operational: x=2, z=0
  st.basic_x[s] = 3;                // dormant failed
  CHECK(output(tree, s, st) == 1);
}

TEST_CASE("pand output follows the five-state encoding") {
  FaultTree tree = lower(
      "toplevel \"P\"; \"P\" pand \"l\" \"r\"; \"l\" lambda=1; \"r\" lambda=1;");
  ModelState st = ModelState::initial(tree);
  int top = tree.top;
  for (std::uint8_t x : {0, 1, 2, 3}) {
    st.pand_x[top] = x;
    CHECK(output(tree, top, st) == 0);
  }
  st.pand_x[top] = pand::kFailed;
  CHECK(output(tree, top, st) == 1);
}

TEST_CASE("pand state machine transitions") {
  using namespace pand;
  // left then right fails the gate; right first blocks it
  CHECK(pand_step(kOperational, 0, 1, 0, 0) == kLeftFailed);
  CHECK(pand_step(kLeftFailed, 1, 1, 0, 1) == kFailed);
  CHECK(pand_step(kOperational, 0, 0, 0, 1) == kRightFailed);
  CHECK(pand_step(kRightFailed, 0, 1, 1, 1) == kBothRightFirst);
  // simultaneous failure counts as left-to-right
  CHECK(pand_step(kOperational, 0, 1, 0, 1) == kFailed);
  // repairs
  CHECK(pand_step(kLeftFailed, 1, 0, 0, 0) == kOperational);
  CHECK(pand_step(kRightFailed, 0, 0, 1, 0) == kOperational);
  CHECK(pand_step(kBothRightFirst, 1, 0, 1, 1) == kRightFailed);
  CHECK(pand_step(kBothRightFirst, 1, 1, 1, 0) == kLeftFailed);
  // a failed pand stays failed while only the left child is repaired
  CHECK(pand_step(kFailed, 1, 0, 1, 1) == kFailed);
  CHECK(pand_step(kFailed, 0, 1, 1, 1) == kFailed);
  // and recovers when the right child is repaired
  CHECK(pand_step(kFailed, 1, 1, 1, 0) == kLeftFailed);
  CHECK(pand_step(kFailed, 0, 0, 1, 0) == kOperational);
}

TEST_CASE("spare output needs a failed primary and no available sbe") {
  FaultTree tree = lower(
      "toplevel \"A\"; \"A\" and \"G1\" \"G2\"; "
      "\"G1\" wsp \"P1\" \"S\"; \"G2\" wsp \"P2\" \"S\"; "
      "\"P1\" lambda=1; \"P2\" lambda=1; "
      "\"S\" lambda=1 EXT_dormPDF=exponential(0.5);");
  int g1 = tree.find("G1"), g2 = tree.find("G2");
  int p1 = tree.find("P1"), p2 = tree.find("P2"), s = tree.find("S");

  ModelState st = ModelState::initial(tree);
  st.basic_x[p1] = 1;
  CHECK(output(tree, g1, st) == 0);  // S is free

  auto moves = resolve_claims(tree, st);
  REQUIRE(moves.claims.size() == 1);
  CHECK(moves.claims[0] == std::pair<int, int>{g1, s});
  CHECK(st.basic_x[s] == 0);
  CHECK(output(tree, g1, st) == 0);

  // Second primary fails: the shared sbe is taken, G2 fails.
  st.basic_x[p2] = 1;
  CHECK(resolve_claims(tree, st).claims.empty());
  CHECK(output(tree, g2, st) == 1);
  CHECK(output(tree, g1, st) == 0);

  // P1 repaired: S is released and immediately claimed by G2.
  st.basic_x[p1] = 0;
  auto moves2 = resolve_claims(tree, st);
  REQUIRE(moves2.releases.size() == 1);
  REQUIRE(moves2.claims.size() == 1);
  CHECK(moves2.claims[0] == std::pair<int, int>{g2, s});
  CHECK(output(tree, g2, st) == 0);
}

TEST_CASE("static subtrees match the boolean truth-table oracle") {
  RngStream rng(314159);
  for (int iter = 0; iter < 200; ++iter) {
    FaultTree tree = lower(random_static_tree(rng, 12));
    int leaves = static_cast<int>(tree.basics.size());
    REQUIRE(leaves <= 12);
    for (int mask = 0; mask < (1 << leaves); ++mask) {
      ModelState st = ModelState::initial(tree);
      std::vector<bool> failed(tree.size(), false);
      for (int i = 0; i < leaves; ++i) {
        bool f = (mask >> i) & 1;
        st.basic_x[tree.basics[i]] = f;
        failed[tree.basics[i]] = f;
      }
      bool expected = static_oracle(tree, tree.top, failed);
      REQUIRE(top_failed(tree, st) == expected);
    }
  }
}

TEST_CASE("output is a pure function of tree and state") {
  FaultTree tree = lower(kTinyRwc);
  ModelState st = ModelState::initial(tree);
  st.basic_x[tree.find("P")] = 1;
  int first = output(tree, tree.top, st);
  for (int i = 0; i < 5; ++i) CHECK(output(tree, tree.top, st) == first);
}
