#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "cluster_judge/core_model.hpp"
#include "cluster_judge/intrinsic_vsm.hpp"

// Synthetic inputs: the ineffective clustering shapes, random controls and
// labeled corpora used by `generate` and by the test suites.
namespace cluster_judge::synthetic {

// "d" + zero-padded index, so id order matches index order.
DocumentTablePtr numbered_documents(std::size_t n);

// One cluster holding round(fraction * N) documents (at least one), every
// other document alone. N = 10, fraction 0.6 gives sizes [6,1,1,1,1].
Clustering giant_clustering(const DocumentTablePtr& docs, double fraction = 0.6);

Clustering singleton_clustering(const DocumentTablePtr& docs);

// Each document draws its cluster uniformly from k ids; ids nobody drew are
// absent.
Clustering uniform_random_clustering(const DocumentTablePtr& docs, std::size_t k, std::uint64_t seed);

// Each document draws its category uniformly from `categories` ids.
GroundTruth uniform_labels(const DocumentTablePtr& docs, std::size_t categories, std::uint64_t seed);

// Document i gets category i mod `categories` (equal-sized categories).
GroundTruth round_robin_labels(const DocumentTablePtr& docs, std::size_t categories);

// `topics` topics, each with `per_topic` relevant documents drawn uniformly
// without replacement.
RelevanceJudgments random_judgments(const DocumentTablePtr& docs, std::size_t topics, std::size_t per_topic,
                                    std::uint64_t seed);

struct MixtureOptions {
  std::size_t documents = 2000;
  std::size_t topics = 10;
  std::size_t vocabulary_per_topic = 200;
  std::size_t min_length = 30;
  std::size_t max_length = 80;
  // Share of tokens drawn from a vocabulary common to all topics.
  double shared_fraction = 0.0;
  std::size_t shared_vocabulary = 200;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;
};

struct LabeledCorpus {
  SparseCorpus corpus;  // raw counts
  GroundTruth topics;   // document i belongs to topic i mod topics
};

// Bag-of-words documents drawn from per-topic Zipf distributions over
// disjoint topic vocabularies.
LabeledCorpus mixture_corpus(const MixtureOptions& opts);

}  // namespace cluster_judge::synthetic
