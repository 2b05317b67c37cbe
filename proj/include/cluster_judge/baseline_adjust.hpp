#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cluster_judge/core_model.hpp"

namespace cluster_judge {

// How many size-matched random baselines to draw and from which root seed.
// Sample i is drawn with seed + i.
struct BaselineSpec {
  std::uint64_t seed = 0;
  std::uint32_t samples = 10;
};

// raw - baseline_mean, with the spread of the baseline draws.
struct AdjustedScore {
  double raw = 0.0;
  double baseline_mean = 0.0;
  double baseline_std = 0.0;  // sample standard deviation; 0 when R = 1
  double adjusted = 0.0;
  std::uint32_t samples = 0;
  std::uint64_t seed = 0;

  double standard_error() const;
};

// Any cluster quality function. Must be callable concurrently.
using Measure = std::function<double(const Clustering&)>;

// Shuffles the documents uniformly and deals them out in consecutive blocks
// so that every cluster id keeps its original size.
Clustering generate_baseline(const Clustering& clustering, std::uint64_t seed);

// |c_j| / sum_i |c_i|: the share of a category expected in any baseline
// cluster. Throws std::invalid_argument for an unknown category.
double expected_category_fraction(const GroundTruth& truth, const CategoryId& category);

// Scores the solution and R baselines drawn from it with the same measure.
// Baselines are scored on up to `threads` workers; the reduction runs in
// sample order so the result does not depend on the thread count.
AdjustedScore adjust(const Measure& measure, const Clustering& solution, const BaselineSpec& spec,
                     unsigned threads = 1);

// Measure values of the R baselines, in sample order.
std::vector<double> baseline_scores(const Measure& measure, const Clustering& solution, const BaselineSpec& spec,
                                    unsigned threads = 1);

// Lower-level form: adjusts an already computed raw score against baseline
// scores (in sample order).
AdjustedScore combine(double raw, const std::vector<double>& baseline_scores, const BaselineSpec& spec);

}  // namespace cluster_judge
