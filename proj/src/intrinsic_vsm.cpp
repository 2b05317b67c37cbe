#include "cluster_judge/intrinsic_vsm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cluster_judge/parallel.hpp"
#include "cluster_judge/random.hpp"

namespace cluster_judge {

namespace {

double squared_norm(const SparseRow& r) {
  double s = 0.0;
  for (double v : r.values) s += v * v;
  return s;
}

// Row-wise unit-length copy of the corpus values.
std::vector<double> unit_values(const SparseCorpus& corpus) {
  std::vector<double> out;
  out.reserve(corpus.num_nonzeros());
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const auto r = corpus.row(d);
    const double norm = std::sqrt(squared_norm(r));
    if (!(norm > 0.0)) throw std::invalid_argument("document '" + corpus.documents()[d] + "' is a zero vector");
    for (double v : r.values) out.push_back(v / norm);
  }
  return out;
}

// Dense accumulator over the vocabulary that remembers which slots it
// touched, so clearing and extraction cost O(touched).
class Accumulator {
 public:
  explicit Accumulator(std::size_t dim) : dense_(dim, 0.0), seen_(dim, 0) {}

  void add(std::span<const std::uint32_t> terms, std::span<const double> values) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto t = terms[i];
      if (!seen_[t]) {
        seen_[t] = 1;
        touched_.push_back(t);
      }
      dense_[t] += values[i];
    }
  }

  double dot(std::span<const std::uint32_t> terms, std::span<const double> values) const {
    double s = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) s += values[i] * dense_[terms[i]];
    return s;
  }

  // Norm of the accumulated sum, summed in ascending term order.
  double norm() {
    std::sort(touched_.begin(), touched_.end());
    double s = 0.0;
    for (auto t : touched_) s += dense_[t] * dense_[t];
    return std::sqrt(s);
  }

  // Accumulated sum divided by `scale`, as a sorted sparse vector. Call
  // after norm().
  SparseVector extract(double scale) const {
    SparseVector v;
    v.terms.reserve(touched_.size());
    v.values.reserve(touched_.size());
    for (auto t : touched_) {
      if (dense_[t] != 0.0) {
        v.terms.push_back(t);
        v.values.push_back(dense_[t] / scale);
      }
    }
    return v;
  }

  void clear() {
    for (auto t : touched_) {
      dense_[t] = 0.0;
      seen_[t] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> dense_;
  std::vector<unsigned char> seen_;
  std::vector<std::uint32_t> touched_;
};

// Term -> (cluster, weight) postings over all centroids, clusters ascending.
struct CentroidIndex {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> cluster;
  std::vector<double> weight;

  CentroidIndex(const std::vector<SparseVector>& centroids, std::size_t dim) : offsets(dim + 1, 0) {
    for (const auto& c : centroids) {
      for (auto t : c.terms) ++offsets[t + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    cluster.resize(offsets.back());
    weight.resize(offsets.back());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t k = 0; k < centroids.size(); ++k) {
      const auto& c = centroids[k];
      for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const auto pos = fill[c.terms[i]]++;
        cluster[pos] = static_cast<std::uint32_t>(k);
        weight[pos] = c.values[i];
      }
    }
  }
};

}  // namespace

SparseCorpus SparseCorpus::from_triples(std::vector<Triple> triples) {
  if (triples.empty()) throw std::invalid_argument("corpus has no entries");
  for (const auto& [doc, term, value] : triples) {
    if (!is_valid_token(doc)) throw std::invalid_argument("invalid document id '" + doc + "'");
    if (!is_valid_token(term)) throw std::invalid_argument("invalid term '" + term + "'");
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument("non-positive value for (" + doc + ", " + term + ")");
    }
  }
  std::sort(triples.begin(), triples.end());

  std::vector<std::string> terms;
  terms.reserve(triples.size());
  for (const auto& t : triples) terms.push_back(std::get<1>(t));
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  auto docs = std::make_shared<DocumentTable>();
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> term_index;
  std::vector<double> values, lengths;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& [doc, term, value] = triples[i];
    if (docs->empty() || docs->back() != doc) {
      if (!docs->empty()) offsets.push_back(term_index.size());
      docs->push_back(doc);
      lengths.push_back(0.0);
    }
    const auto t = static_cast<std::uint32_t>(std::lower_bound(terms.begin(), terms.end(), term) - terms.begin());
    if (term_index.size() > offsets.back() && term_index.back() == t) {
      values.back() += value;
    } else {
      term_index.push_back(t);
      values.push_back(value);
    }
    lengths.back() += value;
  }
  offsets.push_back(term_index.size());
  return SparseCorpus(std::move(docs), std::move(terms), std::move(offsets), std::move(term_index),
                      std::move(values), std::move(lengths));
}

SparseCorpus::SparseCorpus(DocumentTablePtr documents, std::vector<std::string> terms,
                           std::vector<std::size_t> offsets, std::vector<std::uint32_t> term_index,
                           std::vector<double> values, std::vector<double> doc_lengths)
    : documents_(std::move(documents)),
      terms_(std::move(terms)),
      offsets_(std::move(offsets)),
      term_index_(std::move(term_index)),
      values_(std::move(values)),
      doc_lengths_(std::move(doc_lengths)) {
  if (!documents_ || documents_->empty()) throw std::invalid_argument("corpus has no documents");
  const std::size_t n = documents_->size();
  if (offsets_.size() != n + 1 || doc_lengths_.size() != n || term_index_.size() != values_.size() ||
      offsets_.back() != values_.size()) {
    throw std::invalid_argument("inconsistent corpus layout");
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (offsets_[d + 1] <= offsets_[d]) {
      throw std::invalid_argument("document '" + (*documents_)[d] + "' has no terms");
    }
  }
  average_doc_length_ = std::accumulate(doc_lengths_.begin(), doc_lengths_.end(), 0.0) / static_cast<double>(n);
}

SparseRow SparseCorpus::row(std::size_t doc) const {
  const auto b = offsets_[doc], e = offsets_[doc + 1];
  return {std::span<const std::uint32_t>(term_index_).subspan(b, e - b),
          std::span<const double>(values_).subspan(b, e - b)};
}

std::vector<std::uint32_t> SparseCorpus::document_frequencies() const {
  std::vector<std::uint32_t> df(terms_.size(), 0);
  for (auto t : term_index_) ++df[t];
  return df;
}

SparseCorpus SparseCorpus::with_values(const std::vector<double>& values) const {
  if (values.size() != values_.size()) throw std::invalid_argument("value count mismatch");
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> term_index;
  std::vector<double> kept;
  term_index.reserve(values.size());
  kept.reserve(values.size());
  for (std::size_t d = 0; d < num_documents(); ++d) {
    for (auto i = offsets_[d]; i < offsets_[d + 1]; ++i) {
      if (values[i] != 0.0) {
        term_index.push_back(term_index_[i]);
        kept.push_back(values[i]);
      }
    }
    if (term_index.size() == offsets.back()) {
      throw std::invalid_argument("document '" + (*documents_)[d] + "' has zero weight after weighting");
    }
    offsets.push_back(term_index.size());
  }
  return SparseCorpus(documents_, terms_, std::move(offsets), std::move(term_index), std::move(kept),
                      doc_lengths_);
}

SparseCorpus tfidf_weight(const SparseCorpus& corpus) {
  const auto df = corpus.document_frequencies();
  const double n = static_cast<double>(corpus.num_documents());
  std::vector<double> values;
  values.reserve(corpus.num_nonzeros());
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const auto r = corpus.row(d);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      values.push_back(r.values[i] * std::log(n / static_cast<double>(df[r.terms[i]])));
    }
  }
  return corpus.with_values(values);
}

SparseCorpus bm25_weight(const SparseCorpus& corpus, double k1, double b) {
  if (!(k1 > 0.0)) throw std::invalid_argument("bm25 requires k1 > 0");
  if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("bm25 requires 0 <= b <= 1");
  const auto df = corpus.document_frequencies();
  const double n = static_cast<double>(corpus.num_documents());
  const double avdl = corpus.average_doc_length();
  std::vector<double> values;
  values.reserve(corpus.num_nonzeros());
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const auto r = corpus.row(d);
    const double norm = k1 * (1.0 - b + b * corpus.doc_length(d) / avdl);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      const double f = static_cast<double>(df[r.terms[i]]);
      const double idf = std::max(0.0, std::log((n - f + 0.5) / (f + 0.5)));
      const double tf = r.values[i];
      values.push_back(idf * tf * (k1 + 1.0) / (tf + norm));
    }
  }
  return corpus.with_values(values);
}

double cosine(const SparseRow& a, const SparseRow& b) {
  const double na = squared_norm(a), nb = squared_norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("cosine of a zero vector");
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    if (a.terms[i] < b.terms[j]) {
      ++i;
    } else if (b.terms[j] < a.terms[i]) {
      ++j;
    } else {
      dot += a.values[i++] * b.values[j++];
    }
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::vector<ClusterId> numbered_cluster_ids(std::size_t k) {
  std::size_t width = 1;
  for (std::size_t x = k > 0 ? k - 1 : 0; x >= 10; x /= 10) ++width;
  std::vector<ClusterId> ids;
  ids.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto digits = std::to_string(i);
    ids.push_back("c" + std::string(width - digits.size(), '0') + digits);
  }
  return ids;
}

KMeansResult kmeans(const SparseCorpus& corpus, const KMeansOptions& opts) {
  const std::size_t n = corpus.num_documents();
  const std::size_t k = opts.k;
  if (k < 1) throw std::invalid_argument("k-means needs k >= 1");
  if (k > n) throw std::invalid_argument("k-means needs k <= number of documents");
  if (opts.max_iter < 1) throw std::invalid_argument("k-means needs max_iter >= 1");

  const unsigned threads = std::max(1u, opts.threads);
  const auto unit = corpus.with_values(unit_values(corpus));
  const std::size_t dim = unit.num_terms();

  // Partial Fisher-Yates picks k distinct documents.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(opts.seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(order[i], order[j]);
  }
  std::vector<SparseVector> centroids(k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto r = unit.row(order[c]);
    centroids[c].terms.assign(r.terms.begin(), r.terms.end());
    centroids[c].values.assign(r.values.begin(), r.values.end());
  }

  std::vector<std::uint32_t> assignment(n, 0), previous;
  std::vector<double> best(n, 0.0);
  std::vector<std::size_t> sizes(k);
  std::vector<double> history;
  std::uint32_t iterations = 0;
  bool converged = false;

  for (std::uint32_t iter = 1; iter <= opts.max_iter; ++iter) {
    iterations = iter;

    const CentroidIndex index(centroids, dim);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end, unsigned) {
      std::vector<double> scores(k);
      for (std::size_t d = begin; d < end; ++d) {
        std::fill(scores.begin(), scores.end(), 0.0);
        const auto r = unit.row(d);
        for (std::size_t i = 0; i < r.terms.size(); ++i) {
          const auto t = r.terms[i];
          for (auto p = index.offsets[t]; p < index.offsets[t + 1]; ++p) {
            scores[index.cluster[p]] += r.values[i] * index.weight[p];
          }
        }
        const auto it = std::max_element(scores.begin(), scores.end());
        assignment[d] = static_cast<std::uint32_t>(it - scores.begin());
        best[d] = *it;
      }
    });

    // Empty clusters take the least similar documents from clusters that can
    // spare one.
    std::fill(sizes.begin(), sizes.end(), 0);
    for (auto a : assignment) ++sizes[a];
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) {
      std::vector<std::uint32_t> candidates(n);
      std::iota(candidates.begin(), candidates.end(), 0u);
      std::stable_sort(candidates.begin(), candidates.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return best[a] < best[b]; });
      std::size_t next = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        while (sizes[assignment[candidates[next]]] < 2) ++next;
        const auto d = candidates[next++];
        --sizes[assignment[d]];
        assignment[d] = static_cast<std::uint32_t>(c);
        sizes[c] = 1;
      }
    }

    const bool changed = previous != assignment;
    previous = assignment;

    // Centroid update: unit-normalised mean of each cluster's members.
    std::vector<std::vector<std::uint32_t>> members(k);
    for (std::size_t c = 0; c < k; ++c) members[c].reserve(sizes[c]);
    for (std::size_t d = 0; d < n; ++d) members[assignment[d]].push_back(static_cast<std::uint32_t>(d));
    std::vector<double> norms(k, 0.0);
    parallel_for(k, threads, [&](std::size_t begin, std::size_t end, unsigned) {
      Accumulator acc(dim);
      for (std::size_t c = begin; c < end; ++c) {
        for (auto d : members[c]) {
          const auto r = unit.row(d);
          acc.add(r.terms, r.values);
        }
        norms[c] = acc.norm();
        centroids[c] = acc.extract(norms[c]);
        acc.clear();
      }
    });
    // sum_{d in c} d.(s/|s|) = |s|, so the objective is the mean norm.
    double objective = 0.0;
    for (double v : norms) objective += v;
    history.push_back(objective / static_cast<double>(n));

    if (!changed) {
      converged = true;
      break;
    }
  }

  return KMeansResult{Clustering(unit.document_table(), numbered_cluster_ids(k), std::move(assignment)),
                      std::move(centroids), iterations, converged, std::move(history)};
}

double rmse(const SparseCorpus& corpus, const Clustering& clustering) {
  if (clustering.document_table() != corpus.document_table() &&
      clustering.documents() != corpus.documents()) {
    throw std::invalid_argument("rmse: clustering must cover exactly the corpus documents");
  }
  const std::size_t n = corpus.num_documents();
  const auto unit_vals = unit_values(corpus);
  auto unit_row = [&](std::size_t d) {
    const auto r = corpus.row(d);
    return SparseRow{r.terms, std::span<const double>(unit_vals).subspan(corpus.row_begin(d), r.values.size())};
  };

  std::vector<double> squared(n, 0.0);
  Accumulator acc(corpus.num_terms());
  for (const auto& group : clustering.members()) {
    for (auto d : group) {
      const auto r = unit_row(d);
      acc.add(r.terms, r.values);
    }
    const double norm = acc.norm();
    for (auto d : group) {
      const auto r = unit_row(d);
      const double c = std::clamp(acc.dot(r.terms, r.values) / norm, 0.0, 1.0);
      squared[d] = c * c;
    }
    acc.clear();
  }
  double sum = 0.0;
  for (double s : squared) sum += s;
  return std::sqrt(sum / static_cast<double>(n));
}

std::vector<SweepPoint> k_sweep(const SparseCorpus& corpus, const std::vector<std::size_t>& ks,
                                const KMeansOptions& base, const BaselineSpec& spec) {
  if (!std::is_sorted(ks.begin(), ks.end())) throw std::invalid_argument("k list must be ascending");
  std::vector<SweepPoint> out;
  out.reserve(ks.size());
  const Measure measure = [&corpus](const Clustering& c) { return rmse(corpus, c); };
  for (auto k : ks) {
    if (k < 1 || k > corpus.num_documents()) {
      throw std::invalid_argument("k = " + std::to_string(k) + " is outside [1, N]");
    }
    KMeansOptions opts = base;
    opts.k = k;
    opts.seed = mix_seed(base.seed, k);
    auto km = kmeans(corpus, opts);
    SweepPoint p;
    p.k = k;
    p.iterations = km.iterations;
    p.converged = km.converged;
    p.score = adjust(measure, km.clustering, spec, base.threads);
    out.push_back(p);
  }
  return out;
}

}  // namespace cluster_judge
