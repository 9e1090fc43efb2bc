#ifndef RAFTRES_TESTS_TINY_RWC_HPP_
#define RAFTRES_TESTS_TINY_RWC_HPP_

// The railway-cabinet toy: and(HVcab, spare(P, S)), one repair box over
// all three elements with priority HVcab > P > S. Elements are declared
// first so the state tuple reads (HVcab, P, S, Rcab, Top).
inline const char* kTinyRwc = R"(
toplevel "Top";
"HVcab" EXT_failPDF=exponential(1.0E-3) EXT_repairPDF=uniform(1,2);
"P" EXT_failPDF=exponential(2.0E-3) EXT_repairPDF=uniform(1,2);
"S" EXT_failPDF=exponential(2.0E-3) EXT_repairPDF=uniform(1,2) EXT_dormPDF=exponential(1.0E-3);
"Rcab" wsp "P" "S";
"Top" and "HVcab" "Rcab";
"RB" repairbox_priority "HVcab" "P" "S";
)";

// Same shape with deterministic clocks: P fails at 1, HVcab at 5, S at 10
// once activated, and nothing is repaired before t=50.
inline const char* kTinyRwcDirac = R"(
toplevel "Top";
"HVcab" EXT_failPDF=dirac(5) EXT_repairPDF=dirac(50);
"P" EXT_failPDF=dirac(1) EXT_repairPDF=dirac(50);
"S" EXT_failPDF=dirac(10) EXT_repairPDF=dirac(50) EXT_dormPDF=never;
"Rcab" wsp "P" "S";
"Top" and "HVcab" "Rcab";
"RB" repairbox_priority "HVcab" "P" "S";
)";

#endif  // RAFTRES_TESTS_TINY_RWC_HPP_
