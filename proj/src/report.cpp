#include "raftres/report.hpp"

#include <cmath>

#include <json.hpp>

namespace raftres {

std::string metric_name(Metric metric) {
  return metric == Metric::kUnreliability ? "unreliability" : "unavailability";
}

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSmc: return "smc";
    case Algorithm::kRestart: return "restart";
    case Algorithm::kFixedEffort: return "fixed-effort";
  }
  return "?";
}

namespace {

nlohmann::ordered_json scheme_json(const ThresholdScheme& scheme) {
  nlohmann::ordered_json j;
  j["levels"] = nlohmann::ordered_json::array();
  for (Imp level : scheme.levels) j["levels"].push_back(imp_to_string(level));
  j["efforts"] = scheme.efforts;
  return j;
}

nlohmann::ordered_json record_json(const RunRecord& rec, bool timing) {
  nlohmann::ordered_json j;
  j["replication"] = rec.replication;
  j["metric"] = metric_name(rec.estimate.metric);
  if (rec.estimate.metric == Metric::kUnreliability)
    j["time_bound"] = rec.estimate.time_bound;
  j["algorithm"] = algorithm_name(rec.algorithm);
  j["estimate"] = rec.estimate.point;
  j["ci"] = {rec.estimate.ci_low, rec.estimate.ci_high};
  j["confidence"] = rec.estimate.confidence;
  j["samples"] = rec.estimate.samples;
  j["null"] = rec.estimate.null_estimate;
  j["seed"] = rec.seed;
  if (timing) j["seconds"] = rec.estimate.wall_seconds;
  return j;
}

}  // namespace

std::string to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "raft-res-report-v1";
  j["tree"] = report.tree;
  j["metric"] = metric_name(report.metric);
  if (report.metric == Metric::kUnreliability)
    j["time_bound"] = report.time_bound;
  j["algorithm"] = algorithm_name(report.algorithm);
  j["thresholds"] = report.thresholds;
  j["scheme"] = scheme_json(report.scheme);
  j["seed"] = report.seed;
  j["replications"] = nlohmann::ordered_json::array();
  for (const auto& rec : report.records)
    j["replications"].push_back(record_json(rec, report.include_timing));

  int non_null = 0;
  double width_sum = 0, width_sq = 0, est_sum = 0;
  for (const auto& rec : report.records) {
    if (rec.estimate.null_estimate) continue;
    ++non_null;
    double w = rec.estimate.ci_high - rec.estimate.ci_low;
    width_sum += w;
    width_sq += w * w;
    est_sum += rec.estimate.point;
  }
  nlohmann::ordered_json agg;
  agg["non_null"] = non_null;
  agg["total"] = static_cast<int>(report.records.size());
  if (non_null > 0) {
    double mean_w = width_sum / non_null;
    agg["mean_ci_width"] = mean_w;
    agg["ci_width_stddev"] =
        non_null > 1
            ? std::sqrt(std::max(0.0, (width_sq - non_null * mean_w * mean_w) /
                                          (non_null - 1)))
            : 0.0;
    agg["mean_estimate"] = est_sum / non_null;
  }
  j["aggregate"] = agg;
  return j.dump(2) + "\n";
}

std::string to_csv(const RunReport& report) {
  std::string out =
      "replication,metric,algorithm,estimate,ci_low,ci_high,confidence,"
      "samples,null,seed";
  if (report.include_timing) out += ",seconds";
  out += "\n";
  for (const auto& rec : report.records) {
    out += std::to_string(rec.replication) + "," +
           metric_name(rec.estimate.metric) + "," +
           algorithm_name(rec.algorithm) + "," +
           std::to_string(rec.estimate.point) + "," +
           std::to_string(rec.estimate.ci_low) + "," +
           std::to_string(rec.estimate.ci_high) + "," +
           std::to_string(rec.estimate.confidence) + "," +
           std::to_string(rec.estimate.samples) + "," +
           (rec.estimate.null_estimate ? "1" : "0") + "," +
           std::to_string(rec.seed);
    if (report.include_timing)
      out += "," + std::to_string(rec.estimate.wall_seconds);
    out += "\n";
  }
  return out;
}

}  // namespace raftres
