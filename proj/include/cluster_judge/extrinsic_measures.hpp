#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cluster_judge/core_model.hpp"

namespace cluster_judge {

// One score per table row, with the row's labeled size as its weight.
struct ClusterScoreVector {
  std::vector<ClusterId> cluster_ids;
  std::vector<double> scores;
  std::vector<std::uint64_t> weights;
};

// Unordered document pairs split by (same cluster?, same category?).
struct PairCounts {
  std::uint64_t tp = 0;  // same cluster, same category
  std::uint64_t fp = 0;  // same cluster, different categories
  std::uint64_t fn = 0;  // different clusters, same category
  std::uint64_t tn = 0;  // different clusters, different categories
};

// Fraction of each cluster taken by its majority category.
ClusterScoreVector purity_per_cluster(const ContingencyTable& table);

// Category entropy within each cluster, normalised by log J so that 0 is a
// single-category cluster and 1 a uniform spread. Throws when J = 1.
ClusterScoreVector entropy_per_cluster(const ContingencyTable& table);

PairCounts pair_counts(const ContingencyTable& table);

// 2tp / (2tp + fn + fp) over all unordered labeled-document pairs. Returns 0
// with a warning when every pair is a true negative. Throws when N < 2.
double pairwise_f1(const ContingencyTable& table, Diagnostics* diag = nullptr);

// I(clusters; categories) over the arithmetic mean of the two entropies,
// natural logs. A 1x1 table scores 1.
double nmi(const ContingencyTable& table);

double micro_average(const ClusterScoreVector& scores);
double macro_average(const ClusterScoreVector& scores);

}  // namespace cluster_judge
