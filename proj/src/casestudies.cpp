#include "raftres/casestudies.hpp"

#include <algorithm>

#include "raftres/errors.hpp"

namespace raftres {

namespace {

struct Writer {
  std::string out;

  void top(const std::string& name) { out += "toplevel \"" + name + "\";\n"; }

  void gate(const std::string& name, const std::string& kind,
            const std::vector<std::string>& children) {
    out += '"' + name + "\" " + kind;
    for (const auto& c : children) out += " \"" + c + '"';
    out += ";\n";
  }

  void vot(const std::string& name, int k,
           const std::vector<std::string>& children) {
    gate(name, std::to_string(k) + "of" + std::to_string(children.size()),
         children);
  }

  void element(const std::string& name, const std::string& fail,
               const std::string& repair, const std::string& dorm = "") {
    out += '"' + name + "\" EXT_failPDF=" + fail;
    if (!repair.empty()) out += " EXT_repairPDF=" + repair;
    if (!dorm.empty()) out += " EXT_dormPDF=" + dorm;
    out += ";\n";
  }

  void rbox(const std::string& name, const std::vector<std::string>& order) {
    gate(name, "repairbox_priority", order);
  }
};

std::vector<std::string> names(const std::string& prefix, int count,
                               int from = 1) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i)
    out.push_back(prefix + std::to_string(from + i));
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a,
                                const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void require_param(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

// Two overlapping voting gates under an AND; the children shared between
// both gates carry the (fast-wearing) Weibull law of the VOT-B column,
// the gates' private children split per the BE-A/BE-B rows.
std::string gen_vot(int param) {
  int nb = param + 6;
  int na = nb - 1;
  int ka = na - 3;
  int kb = nb - 2;
  int shared = nb - 4;
  require_param(ka >= 1 && kb >= 1 && shared >= 1, "VOT: parameter too small");
  const std::string fail_a = "lognormal(4.37,0.33)";
  const std::string fail_b = "weibull(4.5,0.0125)";
  const std::string rep = "uniform(0.4,0.95)";

  Writer w;
  w.top("VOT");
  auto sh = names("S", shared);
  auto ax = names("A", na - shared);
  auto bx = names("B", 4);
  w.gate("VOT", "and", {"VOTA", "VOTB"});
  w.vot("VOTA", ka, concat(sh, ax));
  w.vot("VOTB", kb, concat(sh, bx));
  for (const auto& n : sh) w.element(n, fail_b, rep);
  for (const auto& n : ax) w.element(n, fail_a, rep);
  for (const auto& n : bx) w.element(n, fail_b, rep);
  // One repair box; VOT-A children (shared ones first) take precedence
  // over the children private to VOT-B.
  w.rbox("RB", concat(concat(sh, ax), bx));
  return w.out;
}

std::string gen_dspare(int param) {
  require_param(param >= 1, "DSPARE: parameter must be >= 1");
  const std::string fail = "exponential(0.07)";
  const std::string rep = "uniform(1.0,2.0)";
  const std::string dorm = "exponential(0.035)";

  Writer w;
  w.top("DSPARE");
  auto sbes = names("S", param);
  w.gate("DSPARE", "and", {"SP1", "SP2", "SP3"});
  for (int i = 1; i <= 3; ++i)
    w.gate("SP" + std::to_string(i), "wsp",
           concat({"P" + std::to_string(i)}, sbes));
  for (const auto& n : names("P", 3)) w.element(n, fail, rep);
  for (const auto& n : sbes) w.element(n, fail, rep, dorm);
  // Failed spares are repaired before failed primaries.
  w.rbox("RB", concat(sbes, names("P", 3)));
  return w.out;
}

// Reconstructed from Fig. 8d: two memory interfaces knock out their
// memory banks through fdeps (M3 hangs off both), 2n parallel buses must
// all fail, two processors share n cold spares, and the software/hardware
// leaves feed the top disjunction directly. One repair box per subsystem.
std::string gen_hecs(int param) {
  require_param(param >= 1, "HECS: parameter must be >= 1");
  const std::string rep_long = "lognormal(4.45,0.24)";
  const std::string rep_mem = "uniform(21.0,28.0)";
  const std::string rep_app = "uniform(28.0,56.0)";

  Writer w;
  w.top("HECS");
  auto ps = names("PS", param);
  auto buses = names("B", 2 * param);
  auto mems = names("M", 5);
  w.gate("HECS", "or", {"PSS", "MSS", "BSS", "SW", "HW"});
  w.gate("PSS", "and", {"SP1", "SP2"});
  w.gate("SP1", "csp", concat({"P1"}, ps));
  w.gate("SP2", "csp", concat({"P2"}, ps));
  w.vot("MSS", 3, mems);
  w.gate("FDEP1", "fdep", {"MI1", "M1", "M2", "M3"});
  w.gate("FDEP2", "fdep", {"MI2", "M3", "M4", "M5"});
  w.gate("BSS", "and", buses);
  w.element("P1", "exponential(1.0E-3)", rep_long);
  w.element("P2", "exponential(1.0E-3)", rep_long);
  for (const auto& n : ps) w.element(n, "exponential(1.5E-3)", rep_long);
  for (const auto& n : mems) w.element(n, "exponential(6.0E-8)", rep_mem);
  w.element("MI1", "exponential(5.0E-9)", rep_mem);
  w.element("MI2", "exponential(5.0E-9)", rep_mem);
  for (const auto& n : buses) w.element(n, "exponential(8.7E-4)", rep_long);
  w.element("SW", "exponential(4.5E-12)", rep_app);
  w.element("HW", "exponential(1.0E-10)", rep_app);
  w.rbox("RB_IF", {"MI1", "MI2"});
  w.rbox("RB_MEM", mems);
  w.rbox("RB_PROC", concat({"P1", "P2"}, ps));
  w.rbox("RB_BUS", buses);
  w.rbox("RB_APP", {"SW", "HW"});
  return w.out;
}

// Grouped cold-spare triad of the fault tolerant parallel processor: a
// 2-of-3 vote over spare gates sharing n cold SBEs, in parallel with the
// network (all four network elements down) per Fig. 8f.
std::string gen_ftpp(int param) {
  require_param(param >= 1, "FTPP: parameter must be >= 1");
  const std::string fail_p = "exponential(2.8E-2)";
  const std::string rep_p = "normal(15.0,3.0)";

  Writer w;
  w.top("FTPP");
  auto sbes = names("S", param);
  auto nets = names("NE", 4);
  w.gate("FTPP", "or", {"TRIAD", "NET"});
  w.vot("TRIAD", 2, {"SP1", "SP2", "SP3"});
  for (int i = 1; i <= 3; ++i)
    w.gate("SP" + std::to_string(i), "csp",
           concat({"B" + std::to_string(i)}, sbes));
  w.gate("NET", "and", nets);
  for (const auto& n : names("B", 3)) w.element(n, fail_p, rep_p);
  for (const auto& n : sbes) w.element(n, fail_p, rep_p);
  for (const auto& n : nets)
    w.element(n, "lognormal(6.5,0.5)", "normal(150.0,50.0)");
  // The processor box repairs primaries ahead of spares.
  w.rbox("RB_PROC", concat(names("B", 3), sbes));
  w.rbox("RB_NET", nets);
  return w.out;
}

std::string gen_rc(int param) {
  require_param(param >= 1, "RC: parameter must be >= 1");
  int spares = param + 2;
  const std::string fail = "exponential(0.04)";
  const std::string rep = "normal(2.0,0.7)";
  const std::string dorm = "exponential(0.5)";

  Writer w;
  w.top("RC");
  std::vector<std::string> gates;
  for (int i = 1; i <= spares; ++i) gates.push_back("SP" + std::to_string(i));
  w.vot("RC", param, gates);
  for (int i = 1; i <= spares; ++i)
    w.gate("SP" + std::to_string(i), "wsp",
           {"P" + std::to_string(i), "S" + std::to_string(i)});
  for (const auto& n : names("P", spares)) w.element(n, fail, rep);
  for (const auto& n : names("S", spares)) w.element(n, fail, rep, dorm);
  w.rbox("RB", concat(names("P", spares), names("S", spares)));
  return w.out;
}

std::string gen_hvc(int param) {
  require_param(param >= 1, "HVC: parameter must be >= 1");
  const std::string fail = "rayleigh(1.999)";
  const std::string rep = "uniform(0.15,0.45)";
  const std::string dorm = "erlang(3,0.25)";

  Writer w;
  w.top("HVC");
  auto sbes = names("S", param);
  w.vot("HVC", 2, {"SP1", "SP2", "SP3", "SP4"});
  for (int i = 1; i <= 4; ++i)
    w.gate("SP" + std::to_string(i), "wsp",
           concat({"P" + std::to_string(i)}, sbes));
  for (const auto& n : names("P", 4)) w.element(n, fail, rep);
  for (const auto& n : sbes) w.element(n, fail, rep, dorm);
  w.rbox("RB", concat(names("P", 4), sbes));
  return w.out;
}

// RWC-m composes RC-(m+1) and HVC-(m+2): the relay-cabinet spares are
// direct children of the combining vote, the high-voltage side enters
// through an OR adapter, and each subsystem keeps separate repair crews
// for members and spares (Fig. 8g).
std::string gen_rwc(int param) {
  require_param(param >= 1, "RWC: parameter must be >= 1");
  int rc_k = param + 1;
  int rc_spares = rc_k + 2;
  int hvc_sbes = param + 2;

  Writer w;
  w.top("RWC");
  std::vector<std::string> top_children;
  for (int i = 1; i <= rc_spares; ++i)
    top_children.push_back("RSP" + std::to_string(i));
  top_children.push_back("HV");
  w.vot("RWC", rc_k, top_children);

  for (int i = 1; i <= rc_spares; ++i)
    w.gate("RSP" + std::to_string(i), "wsp",
           {"RP" + std::to_string(i), "RS" + std::to_string(i)});
  w.gate("HV", "or", {"HVC"});
  auto hs = names("HS", hvc_sbes);
  w.vot("HVC", 2, {"HSP1", "HSP2", "HSP3", "HSP4"});
  for (int i = 1; i <= 4; ++i)
    w.gate("HSP" + std::to_string(i), "wsp",
           concat({"HP" + std::to_string(i)}, hs));

  for (const auto& n : names("RP", rc_spares))
    w.element(n, "exponential(0.04)", "normal(2.0,0.7)");
  for (const auto& n : names("RS", rc_spares))
    w.element(n, "exponential(0.04)", "normal(2.0,0.7)", "exponential(0.5)");
  for (const auto& n : names("HP", 4))
    w.element(n, "rayleigh(1.999)", "uniform(0.15,0.45)");
  for (const auto& n : hs)
    w.element(n, "rayleigh(1.999)", "uniform(0.15,0.45)", "erlang(3,0.25)");

  w.rbox("RB_RC_P", names("RP", rc_spares));
  w.rbox("RB_RC_S", names("RS", rc_spares));
  w.rbox("RB_HVC_P", names("HP", 4));
  w.rbox("RB_HVC_S", hs);
  return w.out;
}

}  // namespace

GeneratedCase generate(const CaseSpec& spec) {
  GeneratedCase result;
  switch (spec.family) {
    case CaseFamily::kVot: result.text = gen_vot(spec.param); break;
    case CaseFamily::kDspare: result.text = gen_dspare(spec.param); break;
    case CaseFamily::kHecs: result.text = gen_hecs(spec.param); break;
    case CaseFamily::kFtpp: result.text = gen_ftpp(spec.param); break;
    case CaseFamily::kRc: result.text = gen_rc(spec.param); break;
    case CaseFamily::kHvc: result.text = gen_hvc(spec.param); break;
    case CaseFamily::kRwc: result.text = gen_rwc(spec.param); break;
  }
  auto range = benchmarked_params(spec.family);
  if (std::find(range.begin(), range.end(), spec.param) == range.end()) {
    result.warning = family_to_string(spec.family) + "-" +
                     std::to_string(spec.param) +
                     " lies outside the benchmarked parameter range";
  }
  return result;
}

CaseFamily family_from_string(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), ::toupper);
  if (up == "VOT") return CaseFamily::kVot;
  if (up == "DSPARE") return CaseFamily::kDspare;
  if (up == "HECS") return CaseFamily::kHecs;
  if (up == "FTPP") return CaseFamily::kFtpp;
  if (up == "RC") return CaseFamily::kRc;
  if (up == "HVC") return CaseFamily::kHvc;
  if (up == "RWC") return CaseFamily::kRwc;
  throw ValidationError("unknown case-study family '" + name + "'");
}

std::string family_to_string(CaseFamily family) {
  switch (family) {
    case CaseFamily::kVot: return "VOT";
    case CaseFamily::kDspare: return "DSPARE";
    case CaseFamily::kHecs: return "HECS";
    case CaseFamily::kFtpp: return "FTPP";
    case CaseFamily::kRc: return "RC";
    case CaseFamily::kHvc: return "HVC";
    case CaseFamily::kRwc: return "RWC";
  }
  return "?";
}

std::vector<int> benchmarked_params(CaseFamily family) {
  switch (family) {
    case CaseFamily::kVot: return {2, 3, 4};
    case CaseFamily::kDspare: return {3, 4, 5};
    case CaseFamily::kHecs: return {1, 2, 3, 4, 5};
    case CaseFamily::kFtpp: return {4, 5, 6};
    case CaseFamily::kRc: return {3, 4, 5, 6};
    case CaseFamily::kHvc: return {4, 5, 6, 7};
    case CaseFamily::kRwc: return {1, 2, 3, 4};
  }
  return {};
}

}  // namespace raftres
