#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cluster_judge/core_model.hpp"

namespace cluster_judge {

// Per-cluster relevant-document counts for one topic, largest first, resized
// to L = min(K, n_r). Only zeros are ever truncated.
struct GainVector {
  std::vector<std::uint64_t> values;
  std::uint64_t relevant = 0;  // n_r
};

struct TopicScore {
  TopicId topic;
  std::uint64_t relevant = 0;
  double split = 0.0;
  double min_split = 0.0;
  double nccg = 0.0;
};

struct NccgResult {
  double mean = 0.0;
  std::vector<TopicScore> topics;      // scored topics, sorted by id
  std::vector<TopicId> skipped_topics; // n_r = 0 after intersecting with the clustering
};

// Relevant documents absent from the clustering are dropped from n_r (with a
// warning). Returns nullopt when no relevant document remains.
std::optional<GainVector> gain_vector(const Clustering& clustering,
                                      const std::set<DocumentId>& relevant,
                                      Diagnostics* diag = nullptr);

// Sum of the cumulative sums of g.values, over n_r squared.
double split_score(const GainVector& g);

// Split score of the worst placement of n_r relevant documents into K
// clusters: one per cluster when K >= n_r, otherwise as even as possible.
double min_split_score(std::uint64_t relevant, std::uint64_t clusters);

// (split - min) / (1 - min); 1 when min_split = 1 (a single relevant
// document). Returns nullopt when the topic has no clustered relevant doc.
std::optional<TopicScore> nccg_topic(const Clustering& clustering, const TopicId& topic,
                                     const std::set<DocumentId>& relevant,
                                     Diagnostics* diag = nullptr);

// Mean over topics with n_r >= 1, in topic-id order. Throws if every topic
// is skipped.
NccgResult nccg_mean(const Clustering& clustering, const RelevanceJudgments& judgments,
                     Diagnostics* diag = nullptr);

}  // namespace cluster_judge
