#include <doctest.h>

#include <cmath>

#include "cluster_judge/extrinsic_measures.hpp"
#include "cluster_judge/random.hpp"
#include "cluster_judge/synthetic.hpp"
#include "oracles.hpp"

using namespace cluster_judge;
using doctest::Approx;

namespace {

ContingencyTable table_of(const oracle::Labels& clusters, const oracle::Labels& cats) {
  return build_contingency(oracle::to_clustering(clusters), oracle::to_truth(cats));
}

ClusterScoreVector scores(std::vector<double> values, std::vector<std::uint64_t> weights) {
  ClusterScoreVector v;
  for (std::size_t i = 0; i < values.size(); ++i) v.cluster_ids.push_back("w" + std::to_string(i));
  v.scores = std::move(values);
  v.weights = std::move(weights);
  return v;
}

// Every partition of n documents as restricted growth strings.
std::vector<oracle::Labels> all_partitions(int n) {
  std::vector<oracle::Labels> out;
  oracle::Labels cur(n, 0);
  auto rec = [&](auto&& self, int i, int max_used) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= max_used + 1; ++v) {
      cur[i] = v;
      self(self, i + 1, std::max(max_used, v));
    }
  };
  cur[0] = 0;
  rec(rec, 1, 0);
  return out;
}

}  // namespace

TEST_CASE("purity per cluster") {
  CHECK(purity_per_cluster(table_of({0, 0, 0, 0}, {0, 0, 0, 1})).scores[0] == 0.75);
  CHECK(purity_per_cluster(table_of({0}, {3})).scores[0] == 1.0);

  oracle::Labels cats;
  for (int i = 0; i < 60; ++i) cats.push_back(i < 10 ? 0 : i < 30 ? 1 : 2);
  const auto v = purity_per_cluster(table_of(oracle::Labels(60, 0), cats));
  CHECK(v.scores[0] == 0.5);
  CHECK(v.weights[0] == 60);
}

TEST_CASE("entropy per cluster") {
  CHECK(entropy_per_cluster(table_of({0, 0, 1}, {0, 0, 1})).scores == std::vector<double>{0.0, 0.0});
  CHECK(entropy_per_cluster(table_of({0, 0, 0}, {0, 1, 2})).scores[0] == Approx(1.0).epsilon(1e-15));
  // {A:1, B:1} with J = 4: ln 2 / ln 4.
  const auto t = table_of({0, 0, 1, 2}, {0, 1, 2, 3});
  CHECK(entropy_per_cluster(t).scores[0] == Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_WITH(entropy_per_cluster(table_of({0, 1}, {0, 0})), "entropy undefined for a single category");
}

TEST_CASE("pairwise f1") {
  CHECK(pairwise_f1(table_of({0, 0, 1, 1, 2}, {5, 5, 6, 6, 7})) == 1.0);
  CHECK(pairwise_f1(table_of({0, 0, 0}, {0, 0, 1})) == Approx(0.5).epsilon(1e-15));
  CHECK(pairwise_f1(table_of({0, 1, 2, 3}, {0, 0, 1, 1})) == 0.0);

  const auto counts = pair_counts(table_of({0, 0, 0}, {0, 0, 1}));
  CHECK(counts.tp == 1);
  CHECK(counts.fp == 2);
  CHECK(counts.fn == 0);
  CHECK(counts.tn == 0);

  Diagnostics diag;
  CHECK(pairwise_f1(table_of({0, 1, 2}, {0, 1, 2}), &diag) == 0.0);
  CHECK_FALSE(diag.empty());
  CHECK_THROWS(pairwise_f1(table_of({0}, {0})));
}

TEST_CASE("nmi") {
  CHECK(nmi(table_of({0, 0, 1, 2}, {4, 4, 5, 6})) == Approx(1.0).epsilon(1e-14));
  CHECK(nmi(table_of({0, 0, 0, 0}, {0, 1, 0, 1})) == 0.0);
  CHECK(nmi(table_of({0, 0}, {0, 0})) == 1.0);
  CHECK(nmi(table_of({0, 0, 0, 1}, {0, 0, 1, 1})) == Approx(0.3437).epsilon(1e-4));
}

TEST_CASE("micro and macro averages") {
  CHECK(micro_average(scores({0.5, 1.0}, {2, 2})) == 0.75);
  CHECK(micro_average(scores({0.3, 0.3, 0.3}, {1, 5, 9})) == Approx(0.3).epsilon(1e-15));
  CHECK(micro_average(scores({0.0, 1.0}, {9, 1})) == Approx(0.1).epsilon(1e-15));
  CHECK(macro_average(scores({0.5, 1.0}, {3, 1})) == 0.75);
  CHECK(macro_average(scores({0.0, 1.0}, {9, 1})) == 0.5);
  CHECK(macro_average(scores({0.42}, {7})) == 0.42);
  CHECK_THROWS(micro_average(ClusterScoreVector{}));
  CHECK_THROWS(macro_average(ClusterScoreVector{}));
}

TEST_CASE("all-singletons is perfectly pure") {
  const auto docs = synthetic::numbered_documents(500);
  const auto t = build_contingency(synthetic::singleton_clustering(docs), synthetic::uniform_labels(docs, 7, 2));
  CHECK(micro_average(purity_per_cluster(t)) == 1.0);
  CHECK(macro_average(purity_per_cluster(t)) == 1.0);
  CHECK(micro_average(entropy_per_cluster(t)) == 0.0);
}

TEST_CASE("pair counts match enumeration for every partition pair up to 5 documents") {
  for (int n = 1; n <= 5; ++n) {
    const auto parts = all_partitions(n);
    for (const auto& c : parts) {
      for (const auto& j : parts) {
        const auto lib = pair_counts(table_of(c, j));
        const auto ref = oracle::pairs(c, j);
        CHECK(lib.tp == ref.tp);
        CHECK(lib.fp == ref.fp);
        CHECK(lib.fn == ref.fn);
        CHECK(lib.tn == ref.tn);
      }
    }
  }
}

TEST_CASE("properties over random small partitions") {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(7));
    oracle::Labels c(n), j(n), c2(n), j2(n);
    const int kk = 1 + static_cast<int>(rng.uniform_index(n));
    for (int d = 0; d < n; ++d) {
      c[d] = static_cast<int>(rng.uniform_index(kk));
      j[d] = static_cast<int>(rng.uniform_index(3));
      c2[d] = 40 - c[d];
      j2[d] = 9 + 2 * j[d];
    }
    if (oracle::groups(j).size() < 2) j[0] = j[1] == 0 ? 1 : 0, j2[0] = 9 + 2 * j[0];
    const auto t = table_of(c, j);
    const auto t2 = table_of(c2, j2);
    CHECK(nmi(t) == Approx(nmi(t.transpose())).epsilon(1e-14));
    CHECK(nmi(t) == Approx(oracle::nmi(c, j)).epsilon(1e-12));
    CHECK(micro_average(purity_per_cluster(t)) == Approx(micro_average(purity_per_cluster(t2))).epsilon(1e-15));
    CHECK(micro_average(entropy_per_cluster(t)) == Approx(micro_average(entropy_per_cluster(t2))).epsilon(1e-15));
    CHECK(pairwise_f1(t) == pairwise_f1(t2));

    const bool single_category_clusters = micro_average(purity_per_cluster(t)) == 1.0;
    CHECK(single_category_clusters == (micro_average(entropy_per_cluster(t)) == 0.0));
    const auto pc = pair_counts(t);
    CHECK(pc.tp + pc.fp + pc.fn + pc.tn == static_cast<std::uint64_t>(n * (n - 1) / 2));
  }
}
