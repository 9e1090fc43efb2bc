#ifndef RAFTRES_CASESTUDIES_HPP_
#define RAFTRES_CASESTUDIES_HPP_

#include <string>
#include <vector>

namespace raftres {

enum class CaseFamily { kVot, kDspare, kHecs, kFtpp, kRc, kHvc, kRwc };

struct CaseSpec {
  CaseFamily family = CaseFamily::kRc;
  int param = 3;
};

struct GeneratedCase {
  std::string text;     // extended-Galileo source
  std::string warning;  // non-empty when param lies outside the tested range
};

// Emits the parameterized benchmark tree for the given family. Parameters
// outside the benchmarked range yield a warning but still generate;
// structurally impossible parameters throw ValidationError.
GeneratedCase generate(const CaseSpec& spec);

CaseFamily family_from_string(const std::string& name);
std::string family_to_string(CaseFamily family);

// Parameter values each family was benchmarked with.
std::vector<int> benchmarked_params(CaseFamily family);

}  // namespace raftres

#endif  // RAFTRES_CASESTUDIES_HPP_
