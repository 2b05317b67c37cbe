#include "cluster_judge/nccg.hpp"

#include <algorithm>
#include <stdexcept>

namespace cluster_judge {

std::optional<GainVector> gain_vector(const Clustering& clustering,
                                      const std::set<DocumentId>& relevant, Diagnostics* diag) {
  std::vector<std::uint64_t> per_cluster(clustering.num_clusters(), 0);
  std::uint64_t found = 0, missing = 0;
  for (const auto& doc : relevant) {
    if (auto idx = clustering.find_document(doc)) {
      ++per_cluster[clustering.assignment()[*idx]];
      ++found;
    } else {
      ++missing;
    }
  }
  if (missing > 0) {
    warn(diag, std::to_string(missing) + " relevant documents are not in the clustering; dropped from n_r");
  }
  if (found == 0) return std::nullopt;

  std::sort(per_cluster.begin(), per_cluster.end(), std::greater<>{});
  const auto length = std::min<std::uint64_t>(per_cluster.size(), found);
  per_cluster.resize(length);
  return GainVector{std::move(per_cluster), found};
}

double split_score(const GainVector& g) {
  if (g.relevant == 0) throw std::invalid_argument("gain vector has no relevant documents");
  std::uint64_t cumulative = 0, total = 0;
  for (auto v : g.values) {
    cumulative += v;
    total += cumulative;
  }
  const double nr = static_cast<double>(g.relevant);
  return static_cast<double>(total) / (nr * nr);
}

double min_split_score(std::uint64_t relevant, std::uint64_t clusters) {
  if (relevant == 0 || clusters == 0) {
    throw std::invalid_argument("min split score needs n_r >= 1 and K >= 1");
  }
  GainVector worst;
  worst.relevant = relevant;
  if (clusters >= relevant) {
    worst.values.assign(relevant, 1);
  } else {
    const std::uint64_t base = relevant / clusters, extra = relevant % clusters;
    worst.values.assign(clusters, base);
    std::fill_n(worst.values.begin(), extra, base + 1);
  }
  return split_score(worst);
}

std::optional<TopicScore> nccg_topic(const Clustering& clustering, const TopicId& topic,
                                     const std::set<DocumentId>& relevant, Diagnostics* diag) {
  auto g = gain_vector(clustering, relevant, diag);
  if (!g) {
    warn(diag, "topic " + topic + " has no clustered relevant documents; skipped");
    return std::nullopt;
  }
  TopicScore score;
  score.topic = topic;
  score.relevant = g->relevant;
  score.split = split_score(*g);
  score.min_split = min_split_score(g->relevant, clustering.num_clusters());
  if (score.min_split >= 1.0) {
    score.nccg = 1.0;
  } else {
    score.nccg = (score.split - score.min_split) / (1.0 - score.min_split);
  }
  return score;
}

NccgResult nccg_mean(const Clustering& clustering, const RelevanceJudgments& judgments,
                     Diagnostics* diag) {
  NccgResult result;
  double sum = 0.0;
  for (const auto& [topic, relevant] : judgments.topics) {
    if (auto score = nccg_topic(clustering, topic, relevant, diag)) {
      sum += score->nccg;
      result.topics.push_back(std::move(*score));
    } else {
      result.skipped_topics.push_back(topic);
    }
  }
  if (result.topics.empty()) throw std::invalid_argument("nccg: every topic was skipped (no relevant documents)");
  result.mean = sum / static_cast<double>(result.topics.size());
  return result;
}

}  // namespace cluster_judge
