#include "cluster_judge/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cluster_judge/random.hpp"

namespace cluster_judge::synthetic {

namespace {

std::string padded(std::string_view prefix, std::size_t i, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t x = count > 0 ? count - 1 : 0; x >= 10; x /= 10) ++width;
  auto digits = std::to_string(i);
  return std::string(prefix) + std::string(width - digits.size(), '0') + digits;
}

// Keeps only the ids that have members and renumbers the assignment.
template <class P>
P compact(const DocumentTablePtr& docs, const std::vector<std::string>& ids, std::vector<std::uint32_t> assignment) {
  std::vector<std::int64_t> remap(ids.size(), -1);
  for (auto a : assignment) remap[a] = 0;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (remap[i] == 0) {
      remap[i] = static_cast<std::int64_t>(kept.size());
      kept.push_back(ids[i]);
    }
  }
  for (auto& a : assignment) a = static_cast<std::uint32_t>(remap[a]);
  return P(docs, std::move(kept), std::move(assignment));
}

std::vector<std::string> numbered(std::string_view prefix, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(padded(prefix, i, count));
  return out;
}

}  // namespace

DocumentTablePtr numbered_documents(std::size_t n) {
  if (n == 0) throw std::invalid_argument("need at least one document");
  return std::make_shared<const DocumentTable>(numbered("d", n));
}

Clustering giant_clustering(const DocumentTablePtr& docs, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("giant fraction must be in (0, 1]");
  const std::size_t n = docs->size();
  const auto giant = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))), 1, n);
  const std::size_t k = 1 + (n - giant);
  std::vector<std::uint32_t> assignment(n, 0);
  for (std::size_t i = giant; i < n; ++i) assignment[i] = static_cast<std::uint32_t>(1 + i - giant);
  return Clustering(docs, numbered_cluster_ids(k), std::move(assignment));
}

Clustering singleton_clustering(const DocumentTablePtr& docs) {
  std::vector<std::uint32_t> assignment(docs->size());
  std::iota(assignment.begin(), assignment.end(), 0u);
  return Clustering(docs, numbered_cluster_ids(docs->size()), std::move(assignment));
}

Clustering uniform_random_clustering(const DocumentTablePtr& docs, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("uniform random clustering needs k >= 1");
  Rng rng(seed);
  std::vector<std::uint32_t> assignment(docs->size());
  for (auto& a : assignment) a = static_cast<std::uint32_t>(rng.uniform_index(k));
  return compact<Clustering>(docs, numbered_cluster_ids(k), std::move(assignment));
}

GroundTruth uniform_labels(const DocumentTablePtr& docs, std::size_t categories, std::uint64_t seed) {
  if (categories < 1) throw std::invalid_argument("need at least one category");
  Rng rng(seed);
  std::vector<std::uint32_t> assignment(docs->size());
  for (auto& a : assignment) a = static_cast<std::uint32_t>(rng.uniform_index(categories));
  return compact<GroundTruth>(docs, numbered("cat", categories), std::move(assignment));
}

GroundTruth round_robin_labels(const DocumentTablePtr& docs, std::size_t categories) {
  if (categories < 1) throw std::invalid_argument("need at least one category");
  std::vector<std::uint32_t> assignment(docs->size());
  for (std::size_t i = 0; i < assignment.size(); ++i) assignment[i] = static_cast<std::uint32_t>(i % categories);
  return compact<GroundTruth>(docs, numbered("cat", categories), std::move(assignment));
}

RelevanceJudgments random_judgments(const DocumentTablePtr& docs, std::size_t topics, std::size_t per_topic,
                                    std::uint64_t seed) {
  if (per_topic > docs->size()) throw std::invalid_argument("more relevant documents than documents");
  Rng rng(seed);
  RelevanceJudgments out;
  std::vector<std::uint32_t> order(docs->size());
  for (const auto& topic : numbered("t", topics)) {
    std::iota(order.begin(), order.end(), 0u);
    auto& rel = out.topics[topic];
    for (std::size_t i = 0; i < per_topic; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.uniform_index(order.size() - i));
      std::swap(order[i], order[j]);
      rel.insert((*docs)[order[i]]);
    }
  }
  return out;
}

LabeledCorpus mixture_corpus(const MixtureOptions& opts) {
  if (opts.documents == 0 || opts.topics == 0 || opts.vocabulary_per_topic == 0) {
    throw std::invalid_argument("mixture corpus needs documents, topics and vocabulary");
  }
  if (opts.min_length == 0 || opts.max_length < opts.min_length) {
    throw std::invalid_argument("mixture corpus needs 1 <= min_length <= max_length");
  }
  if (opts.shared_fraction > 0.0 && opts.shared_vocabulary == 0) {
    throw std::invalid_argument("shared tokens need a shared vocabulary");
  }
  auto zipf_cdf = [&](std::size_t size) {
    std::vector<double> cdf(size);
    double total = 0.0;
    for (std::size_t r = 0; r < size; ++r) cdf[r] = (total += std::pow(static_cast<double>(r + 1), -opts.zipf_exponent));
    for (auto& c : cdf) c /= total;
    return cdf;
  };
  const auto topic_cdf = zipf_cdf(opts.vocabulary_per_topic);
  const auto shared_cdf = zipf_cdf(std::max<std::size_t>(opts.shared_vocabulary, 1));
  auto draw = [](const std::vector<double>& cdf, double u) {
    return static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  };

  const auto docs = numbered_documents(opts.documents);
  const auto topic_names = numbered("t", opts.topics);
  Rng rng(opts.seed);
  std::vector<SparseCorpus::Triple> triples;
  for (std::size_t d = 0; d < opts.documents; ++d) {
    const std::size_t topic = d % opts.topics;
    const auto length = opts.min_length + rng.uniform_index(opts.max_length - opts.min_length + 1);
    for (std::size_t i = 0; i < length; ++i) {
      std::string term;
      if (opts.shared_fraction > 0.0 && rng.uniform01() < opts.shared_fraction) {
        term = padded("s_", std::min(draw(shared_cdf, rng.uniform01()), opts.shared_vocabulary - 1), opts.shared_vocabulary);
      } else {
        term = topic_names[topic] + padded("_w", std::min(draw(topic_cdf, rng.uniform01()), opts.vocabulary_per_topic - 1),
                                           opts.vocabulary_per_topic);
      }
      triples.emplace_back((*docs)[d], std::move(term), 1.0);
    }
  }
  auto corpus = SparseCorpus::from_triples(std::move(triples));
  auto labels = round_robin_labels(corpus.document_table(), opts.topics);
  return {std::move(corpus), std::move(labels)};
}

}  // namespace cluster_judge::synthetic
