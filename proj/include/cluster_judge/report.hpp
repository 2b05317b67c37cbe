#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cluster_judge/baseline_adjust.hpp"
#include "cluster_judge/nccg.hpp"

namespace cluster_judge {

// One requested measure at one evaluation point: a score or an error.
struct MeasureResult {
  std::string name;
  std::optional<AdjustedScore> score;
  std::optional<std::string> error;
  std::vector<TopicScore> topics;  // nccg only: raw per-topic detail
};

// A clustering evaluated at one cluster count.
struct ReportPoint {
  std::size_t k = 0;
  std::string source;  // file name or "kmeans"
  std::vector<MeasureResult> measures;
};

struct EvalReport {
  // Effective configuration, echoed verbatim so a run can be repeated.
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::string generator;
  std::string version;
  std::optional<double> elapsed_seconds;
  std::vector<ReportPoint> points;
  std::vector<std::string> diagnostics;

  bool all_succeeded() const;
};

}  // namespace cluster_judge
