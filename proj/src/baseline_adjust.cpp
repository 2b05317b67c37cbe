#include "cluster_judge/baseline_adjust.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cluster_judge/parallel.hpp"
#include "cluster_judge/random.hpp"

namespace cluster_judge {

double AdjustedScore::standard_error() const {
  return samples == 0 ? 0.0 : baseline_std / std::sqrt(static_cast<double>(samples));
}

Clustering generate_baseline(const Clustering& clustering, std::uint64_t seed) {
  const std::size_t n = clustering.num_documents();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  rng.shuffle(std::span<std::uint32_t>(order));

  std::vector<std::uint32_t> assignment(n);
  std::size_t next = 0;
  const auto sizes = clustering.cluster_sizes();
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    for (std::size_t i = 0; i < sizes[k]; ++i) assignment[order[next++]] = static_cast<std::uint32_t>(k);
  }
  return Clustering(clustering.document_table(), clustering.cluster_ids(), std::move(assignment));
}

double expected_category_fraction(const GroundTruth& truth, const CategoryId& category) {
  const auto idx = truth.find_group(category);
  if (!idx) throw std::invalid_argument("unknown category '" + category + "'");
  return static_cast<double>(truth.category_sizes()[*idx]) /
         static_cast<double>(truth.num_documents());
}

AdjustedScore combine(double raw, const std::vector<double>& baseline_scores, const BaselineSpec& spec) {
  if (baseline_scores.empty()) throw std::invalid_argument("at least one baseline sample is required");
  const double r = static_cast<double>(baseline_scores.size());
  double sum = 0.0;
  for (double s : baseline_scores) sum += s;
  const double mean = sum / r;
  double sq = 0.0;
  for (double s : baseline_scores) sq += (s - mean) * (s - mean);

  AdjustedScore out;
  out.raw = raw;
  out.baseline_mean = mean;
  out.baseline_std = baseline_scores.size() > 1 ? std::sqrt(sq / (r - 1.0)) : 0.0;
  out.adjusted = raw - mean;
  out.samples = static_cast<std::uint32_t>(baseline_scores.size());
  out.seed = spec.seed;
  return out;
}

std::vector<double> baseline_scores(const Measure& measure, const Clustering& solution, const BaselineSpec& spec,
                                    unsigned threads) {
  if (spec.samples < 1) throw std::invalid_argument("baseline sample count must be >= 1");
  std::vector<double> scores(spec.samples);
  parallel_for(scores.size(), threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      scores[i] = measure(generate_baseline(solution, spec.seed + i));
    }
  });
  return scores;
}

AdjustedScore adjust(const Measure& measure, const Clustering& solution, const BaselineSpec& spec,
                     unsigned threads) {
  if (spec.samples < 1) throw std::invalid_argument("baseline sample count must be >= 1");
  const double raw = measure(solution);
  return combine(raw, baseline_scores(measure, solution, spec, threads), spec);
}

}  // namespace cluster_judge
