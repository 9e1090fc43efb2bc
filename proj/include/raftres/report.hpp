#ifndef RAFTRES_REPORT_HPP_
#define RAFTRES_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "raftres/estimators.hpp"

namespace raftres {

std::string metric_name(Metric metric);
std::string algorithm_name(Algorithm algorithm);

struct RunRecord {
  int replication = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kSmc;
  Estimate estimate;
};

// One CLI run: configuration echo, one record per replication, and the
// aggregate statistics used by the benchmark comparisons (how many
// replications were non-null, mean and deviation of the CI widths).
struct RunReport {
  std::string tree;
  Metric metric = Metric::kUnreliability;
  double time_bound = 0;
  Algorithm algorithm = Algorithm::kSmc;
  std::string thresholds;
  ThresholdScheme scheme;
  std::uint64_t seed = 0;
  // Wall-clock fields vary between runs; they are omitted when a
  // deterministic (sample-budget) report is requested.
  bool include_timing = true;
  std::vector<RunRecord> records;
};

std::string to_json(const RunReport& report);
std::string to_csv(const RunReport& report);

}  // namespace raftres

#endif  // RAFTRES_REPORT_HPP_
