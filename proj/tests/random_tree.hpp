#ifndef RAFTRES_TESTS_RANDOM_TREE_HPP_
#define RAFTRES_TESTS_RANDOM_TREE_HPP_

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "raftres/rng.hpp"

// Random valid repairable dynamic fault trees, as Galileo text. Spares
// (with shared SBEs), pands, voting gates, repair boxes and occasional
// fdeps are all exercised; the weak-determinism conditions hold by
// construction. Stays within ~20 nodes.
struct RandomTreeOptions {
  bool with_pands = true;
  bool with_spares = true;
  bool with_fdeps = true;
  bool repairs = true;
};

inline std::string random_tree_text(raftres::RngStream& rng,
                                    const RandomTreeOptions& opt = {}) {
  auto pick = [&](int n) { return static_cast<int>(rng.next_u64() % n); };
  auto chance = [&](double p) { return rng.next_unit() < p; };
  auto num = [&](double lo, double hi) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.4f", lo + (hi - lo) * rng.next_unit());
    return std::string(buf);
  };
  auto fail_pdf = [&]() -> std::string {
    switch (pick(3)) {
      case 0: return "exponential(" + num(0.2, 2.0) + ")";
      case 1: return "weibull(" + num(0.8, 3.0) + "," + num(0.2, 1.5) + ")";
      default: return "uniform(" + num(0.1, 0.5) + "," + num(0.6, 3.0) + ")";
    }
  };

  struct Element {
    std::string name;
    bool is_sbe = false;
    bool repaired = false;
  };
  std::vector<Element> elements;
  std::vector<std::string> gates;  // gate declarations, in order
  std::vector<std::string> pool;   // outputs not yet consumed

  int plain = 2 + pick(5);
  for (int i = 0; i < plain; ++i) {
    elements.push_back({"b" + std::to_string(i), false, false});
    pool.push_back(elements.back().name);
  }

  int spares = opt.with_spares ? pick(3) : 0;
  std::vector<std::string> sbes;
  if (spares > 0) {
    int shared = 1 + pick(2);
    for (int i = 0; i < shared; ++i) {
      elements.push_back({"s" + std::to_string(i), true, false});
      sbes.push_back(elements.back().name);
    }
    std::vector<std::vector<std::string>> spare_kids(spares);
    std::vector<bool> used(sbes.size(), false);
    for (int i = 0; i < spares; ++i)
      for (std::size_t j = 0; j < sbes.size(); ++j)
        if (chance(0.8)) {
          spare_kids[i].push_back(sbes[j]);
          used[j] = true;
        }
    for (std::size_t j = 0; j < sbes.size(); ++j)  // every sbe needs a gate
      if (!used[j]) spare_kids[0].push_back(sbes[j]);
    for (int i = 0; i < spares; ++i) {
      if (spare_kids[i].empty()) spare_kids[i].push_back(sbes[0]);
      std::string prim = "p" + std::to_string(i);
      elements.push_back({prim, false, false});
      std::string decl = "\"sp" + std::to_string(i) + "\" wsp \"" + prim + "\"";
      for (const auto& s : spare_kids[i]) decl += " \"" + s + "\"";
      gates.push_back(decl + ";\n");
      pool.push_back("sp" + std::to_string(i));
    }
  }

  // fdeps stay away from spare-connected elements (weak determinism)
  if (opt.with_fdeps && plain >= 3 && chance(0.4))
    gates.push_back("\"fd\" fdep \"b0\" \"b1\";\n");

  int gate_id = 0;
  while (pool.size() > 1) {
    int arity = 2 + pick(3);
    arity = std::min<int>(arity, static_cast<int>(pool.size()));
    std::vector<std::string> kids;
    for (int i = 0; i < arity; ++i) {
      int at = pick(static_cast<int>(pool.size()));
      kids.push_back(pool[at]);
      pool.erase(pool.begin() + at);
    }
    int which = pick(opt.with_pands ? 4 : 3);
    std::string kind;
    if (which == 3 && kids.size() >= 2) {
      kind = "pand";
      while (kids.size() > 2) {  // pands are binary; return the rest
        pool.push_back(kids.back());
        kids.pop_back();
      }
    } else if (which == 0) {
      kind = "and";
    } else if (which == 1) {
      kind = "or";
    } else {
      kind = std::to_string(1 + pick(static_cast<int>(kids.size()))) + "of" +
             std::to_string(kids.size());
    }
    if (chance(0.2)) pool.push_back(kids[0]);  // shared child
    std::string name = "g" + std::to_string(gate_id++);
    std::string decl = "\"" + name + "\" " + kind;
    for (const auto& c : kids) decl += " \"" + c + "\"";
    gates.push_back(decl + ";\n");
    pool.push_back(name);
  }

  std::string box;
  if (opt.repairs) {
    for (auto& e : elements)
      if (chance(0.7)) {
        e.repaired = true;
        box += " \"" + e.name + "\"";
      }
  }

  std::string text = "toplevel \"" + pool[0] + "\";\n";
  for (const auto& e : elements) {
    text += "\"" + e.name + "\" EXT_failPDF=" + fail_pdf();
    if (e.repaired)
      text += " EXT_repairPDF=uniform(" + num(0.05, 0.2) + "," +
              num(0.3, 0.8) + ")";
    if (e.is_sbe)
      text += " EXT_dormPDF=exponential(" + num(0.05, 0.5) + ")";
    text += ";\n";
  }
  for (const auto& g : gates) text += g;
  if (!box.empty()) text += "\"rb\" repairbox_priority" + box + ";\n";
  return text;
}

#endif  // RAFTRES_TESTS_RANDOM_TREE_HPP_
