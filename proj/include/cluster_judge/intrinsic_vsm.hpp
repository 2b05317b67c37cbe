#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "cluster_judge/baseline_adjust.hpp"
#include "cluster_judge/core_model.hpp"

namespace cluster_judge {

// Read-only view of one sparse row: term indices ascending, values aligned.
struct SparseRow {
  std::span<const std::uint32_t> terms;
  std::span<const double> values;
};

struct SparseVector {
  std::vector<std::uint32_t> terms;
  std::vector<double> values;

  SparseRow view() const { return {terms, values}; }
};

// Document-by-term matrix in CSR form. Documents and terms are indexed in
// sorted id order. Raw document lengths (sum of raw counts) are kept through
// weighting for BM25.
class SparseCorpus {
 public:
  using Triple = std::tuple<DocumentId, std::string, double>;

  // Duplicate (doc, term) entries are summed. Throws on a non-positive value,
  // an invalid token, or an empty input.
  static SparseCorpus from_triples(std::vector<Triple> triples);

  SparseCorpus(DocumentTablePtr documents, std::vector<std::string> terms,
               std::vector<std::size_t> offsets, std::vector<std::uint32_t> term_index,
               std::vector<double> values, std::vector<double> doc_lengths);

  std::size_t num_documents() const { return documents_->size(); }
  std::size_t num_terms() const { return terms_.size(); }
  std::size_t num_nonzeros() const { return values_.size(); }
  const DocumentTablePtr& document_table() const { return documents_; }
  const DocumentTable& documents() const { return *documents_; }
  const std::vector<std::string>& terms() const { return terms_; }

  SparseRow row(std::size_t doc) const;
  // Position of the document's first entry in the flat value array.
  std::size_t row_begin(std::size_t doc) const { return offsets_[doc]; }
  double doc_length(std::size_t doc) const { return doc_lengths_[doc]; }
  double average_doc_length() const { return average_doc_length_; }
  std::vector<std::uint32_t> document_frequencies() const;

  // Same structure, new values (zeros are dropped). Throws if a document
  // ends up with no non-zero weight.
  SparseCorpus with_values(const std::vector<double>& values) const;

 private:
  DocumentTablePtr documents_;
  std::vector<std::string> terms_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> term_index_;
  std::vector<double> values_;
  std::vector<double> doc_lengths_;
  double average_doc_length_ = 0.0;
};

// tf * ln(N / df).
SparseCorpus tfidf_weight(const SparseCorpus& corpus);

// max(0, ln((N - df + 0.5) / (df + 0.5))) * tf (k1 + 1) / (tf + k1 (1 - b + b dl / avdl)).
SparseCorpus bm25_weight(const SparseCorpus& corpus, double k1 = 1.2, double b = 0.75);

// Cosine of two non-negative sparse vectors. Throws on a zero vector.
double cosine(const SparseRow& a, const SparseRow& b);

struct KMeansOptions {
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::uint32_t max_iter = 100;
  unsigned threads = 1;
};

struct KMeansResult {
  Clustering clustering;
  std::vector<SparseVector> centroids;  // unit length, index = cluster index
  std::uint32_t iterations = 0;
  bool converged = false;
  // Mean cosine of documents to their assigned centroid after each update.
  std::vector<double> objective_history;
};

// Spherical k-means. Centroids start at k distinct uniformly drawn documents;
// each iteration assigns documents to the most similar centroid (ties to the
// lowest index), reseeds empty clusters with the least similar documents and
// recomputes unit-normalised means. Results do not depend on opts.threads.
KMeansResult kmeans(const SparseCorpus& corpus, const KMeansOptions& opts);

// Root-mean-square cosine of each document to its cluster's unit-normalised
// mean. Higher is better. The clustering must cover exactly the corpus
// documents.
double rmse(const SparseCorpus& corpus, const Clustering& clustering);

struct SweepPoint {
  std::size_t k = 0;
  std::uint32_t iterations = 0;
  bool converged = false;
  AdjustedScore score;
};

// For each k: k-means, raw rmse, and rmse over size-matched random baselines
// (centroids recomputed from each baseline's members).
std::vector<SweepPoint> k_sweep(const SparseCorpus& corpus, const std::vector<std::size_t>& ks,
                                const KMeansOptions& base, const BaselineSpec& spec);

// Cluster ids used for generated clusterings: "c" + zero-padded index, so
// lexicographic order matches index order.
std::vector<ClusterId> numbered_cluster_ids(std::size_t k);

}  // namespace cluster_judge
