#include <doctest.h>

#include <cmath>

#include "cluster_judge/intrinsic_vsm.hpp"
#include "cluster_judge/random.hpp"
#include "cluster_judge/synthetic.hpp"

using namespace cluster_judge;
using doctest::Approx;

namespace {

SparseCorpus corpus(std::vector<SparseCorpus::Triple> triples) { return SparseCorpus::from_triples(std::move(triples)); }

double value(const SparseCorpus& c, std::size_t doc, std::string_view term) {
  const auto row = c.row(doc);
  for (std::size_t i = 0; i < row.terms.size(); ++i) {
    if (c.terms()[row.terms[i]] == term) return row.values[i];
  }
  return 0.0;
}

SparseCorpus orthogonal(std::size_t n) {
  std::vector<SparseCorpus::Triple> t;
  for (std::size_t i = 0; i < n; ++i) t.emplace_back("d" + std::to_string(i), "t" + std::to_string(i), 1.0 + static_cast<double>(i));
  return corpus(std::move(t));
}

Clustering one_cluster(const SparseCorpus& c) {
  return Clustering(c.document_table(), {"all"}, std::vector<std::uint32_t>(c.num_documents(), 0));
}

SparseCorpus mixture(std::size_t docs, std::size_t topics, double shared, std::uint64_t seed) {
  synthetic::MixtureOptions o;
  o.documents = docs;
  o.topics = topics;
  o.shared_fraction = shared;
  o.seed = seed;
  return tfidf_weight(synthetic::mixture_corpus(o).corpus);
}

}  // namespace

TEST_CASE("corpus construction") {
  const auto c = corpus({{"d2", "b", 1}, {"d1", "a", 1}, {"d1", "a", 2}, {"d1", "c", 4}});
  CHECK(c.num_documents() == 2);
  CHECK(c.num_terms() == 3);
  CHECK(c.num_nonzeros() == 3);
  CHECK(value(c, 0, "a") == 3.0);
  CHECK(c.doc_length(0) == 7.0);
  CHECK(c.average_doc_length() == 4.0);
  CHECK(c.document_frequencies() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK_THROWS(corpus({}));
  CHECK_THROWS(corpus({{"d1", "a", 0.0}}));
  CHECK_THROWS(corpus({{"d1", "a b", 1.0}}));
}

TEST_CASE("tf-idf weighting") {
  const auto c = tfidf_weight(corpus({{"d1", "all", 1}, {"d2", "all", 1}, {"d3", "all", 2}, {"d4", "all", 1},
                                      {"d1", "rare", 1}, {"d2", "pair", 3}, {"d3", "pair", 1},
                                      {"d2", "x", 1}, {"d3", "y", 1}, {"d4", "z", 1}}));
  CHECK(value(c, 0, "all") == 0.0);
  CHECK(value(c, 0, "rare") == Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(value(c, 1, "pair") == Approx(3 * std::log(2.0)).epsilon(1e-15));
  CHECK(value(c, 1, "pair") == Approx(2.0794).epsilon(1e-4));
  CHECK_THROWS_WITH_AS(tfidf_weight(corpus({{"d1", "a", 1}, {"d2", "a", 1}})), doctest::Contains("zero weight"),
                       std::invalid_argument);
}

TEST_CASE("bm25 weighting") {
  // Four documents of equal length 2; "q" occurs twice in d1 only.
  const auto raw = corpus({{"d1", "q", 2}, {"d2", "e", 1}, {"d2", "g", 1}, {"d3", "e", 1}, {"d3", "h", 1}, {"d4", "e", 1}, {"d4", "i", 1}});
  const auto c = bm25_weight(raw, 1.2, 0.75);
  CHECK(value(c, 0, "q") == Approx(std::log(3.5 / 1.5) * (2 * 2.2) / (2 + 1.2)).epsilon(1e-15));
  CHECK(value(c, 0, "q") == Approx(1.1650).epsilon(1e-4));
  CHECK(value(c, 2, "e") == 0.0);  // df = 3 of 4: negative idf clamps to zero

  // Saturation: a very large tf approaches idf * (k1 + 1).
  const auto big = bm25_weight(corpus({{"d1", "q", 1e9}, {"d2", "u", 1e9}, {"d3", "v", 1e9}, {"d4", "w", 1e9}}), 1.2, 0.0);
  CHECK(value(big, 0, "q") == Approx(std::log(3.5 / 1.5) * 2.2).epsilon(1e-8));
}

TEST_CASE("cosine") {
  const SparseVector a{{0, 1}, {1.0, 1.0}};
  const SparseVector b{{0, 2}, {1.0, 1.0}};
  const SparseVector c{{3}, {2.0}};
  CHECK(cosine(a.view(), a.view()) == Approx(1.0).epsilon(1e-15));
  CHECK(cosine(a.view(), b.view()) == Approx(0.5).epsilon(1e-15));
  CHECK(cosine(a.view(), c.view()) == 0.0);
  CHECK_THROWS(cosine(a.view(), SparseVector{}.view()));
}

TEST_CASE("rmse identities") {
  const auto identical = corpus({{"a", "x", 1}, {"a", "y", 2}, {"b", "x", 2}, {"b", "y", 4}, {"c", "x", 3}, {"c", "y", 6}});
  CHECK(rmse(identical, one_cluster(identical)) == Approx(1.0).epsilon(1e-15));

  const auto ortho = orthogonal(9);
  CHECK(rmse(ortho, one_cluster(ortho)) == Approx(1.0 / 3.0).epsilon(1e-15));
  const auto unit = corpus({{"d0", "t0", 1}, {"d1", "t1", 1}, {"d2", "t2", 1}, {"d3", "t3", 1}});
  CHECK(rmse(unit, one_cluster(unit)) == Approx(0.5).epsilon(1e-15));
  CHECK(rmse(ortho, Clustering(ortho.document_table(), numbered_cluster_ids(9), {0, 1, 2, 3, 4, 5, 6, 7, 8})) ==
        Approx(1.0).epsilon(1e-15));

  CHECK_THROWS(rmse(unit, Clustering::from_pairs({{"d0", "a"}, {"d1", "a"}})));
}

TEST_CASE("k-means edge cases") {
  const auto c = mixture(60, 3, 0.0, 5);
  const auto all = kmeans(c, {.k = 60, .seed = 1});
  CHECK(all.clustering.num_clusters() == 60);
  CHECK(rmse(c, all.clustering) == Approx(1.0).epsilon(1e-15));
  for (std::size_t d = 0; d < 60; ++d) {
    CHECK(cosine(c.row(d), all.centroids[all.clustering.assignment()[d]].view()) == Approx(1.0).epsilon(1e-12));
  }
  const auto one = kmeans(c, {.k = 1, .seed = 1});
  CHECK(one.clustering.num_clusters() == 1);
  CHECK(one.converged);
  CHECK_THROWS(kmeans(c, {.k = 0}));
  CHECK_THROWS(kmeans(c, {.k = 61}));
  CHECK_THROWS(kmeans(c, {.k = 2, .seed = 0, .max_iter = 0}));
}

TEST_CASE("k-means splits two disjoint vocabularies for any seed") {
  const auto c = mixture(80, 2, 0.0, 9);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto r = kmeans(c, {.k = 2, .seed = seed});
    const auto a = r.clustering.assignment();
    for (std::size_t d = 0; d < 80; ++d) CHECK((a[d] == a[d % 2]) );
    CHECK(a[0] != a[1]);
  }
}

TEST_CASE("k-means objective, termination and determinism") {
  const auto c = mixture(400, 8, 0.4, 3);
  for (std::size_t k : {2, 7, 25, 120}) {
    for (std::uint32_t max_iter : {1u, 3u, 100u}) {
      const KMeansOptions opts{.k = k, .seed = k * 31, .max_iter = max_iter};
      const auto r = kmeans(c, opts);
      CHECK(r.iterations <= max_iter);
      CHECK(r.iterations >= 1);
      CHECK(r.objective_history.size() == r.iterations);
      CHECK(r.clustering.num_clusters() == k);
      for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
        CHECK(r.objective_history[i] >= r.objective_history[i - 1] - 1e-12);
      }
      if (r.converged) CHECK(r.iterations <= max_iter);
      for (unsigned threads : {2u, 5u}) {
        auto t = opts;
        t.threads = threads;
        const auto again = kmeans(c, t);
        CHECK(again.clustering == r.clustering);
        CHECK(again.objective_history == r.objective_history);
        CHECK(again.converged == r.converged);
      }
    }
  }
}

TEST_CASE("k-means objective equals the mean cosine to the reported centroids") {
  const auto c = mixture(300, 5, 0.3, 8);
  const auto r = kmeans(c, {.k = 9, .seed = 4});
  double sum = 0.0;
  for (std::size_t d = 0; d < c.num_documents(); ++d) sum += cosine(c.row(d), r.centroids[r.clustering.assignment()[d]].view());
  CHECK(r.objective_history.back() == Approx(sum / 300).epsilon(1e-12));
  for (const auto& centroid : r.centroids) {
    double norm = 0.0;
    for (double v : centroid.values) norm += v * v;
    CHECK(norm == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rmse range and baseline identities across a sweep") {
  const auto c = mixture(300, 6, 0.2, 2);
  const auto sweep = k_sweep(c, {1, 3, 6, 12, 300}, {.seed = 5}, {.seed = 5, .samples = 4});
  REQUIRE(sweep.size() == 5);
  CHECK(sweep.front().score.adjusted == 0.0);
  CHECK(sweep.back().score.adjusted == 0.0);
  CHECK(sweep.back().score.raw == Approx(1.0).epsilon(1e-15));
  for (const auto& p : sweep) {
    CHECK(p.score.raw >= 0.0);
    CHECK(p.score.raw <= 1.0);
    CHECK(p.score.samples == 4);
  }
  CHECK_THROWS(k_sweep(c, {3, 1}, {}, {}));
  CHECK_THROWS(k_sweep(c, {0}, {}, {}));
  CHECK_THROWS(k_sweep(c, {301}, {}, {}));
}

TEST_CASE("numbered cluster ids sort in index order") {
  const auto ids = numbered_cluster_ids(12);
  CHECK(ids.front() == "c00");
  CHECK(ids.back() == "c11");
  CHECK(std::is_sorted(ids.begin(), ids.end()));
}
