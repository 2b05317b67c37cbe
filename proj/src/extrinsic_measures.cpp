#include "cluster_judge/extrinsic_measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cluster_judge {

namespace {

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// -sum p log p over counts / total, with 0 log 0 = 0.
template <class Counts>
double entropy_of(const Counts& counts, double total) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0) {
      const double p = c / total;
      h -= p * std::log(p);
    }
  }
  return h;
}

ClusterScoreVector empty_scores(const ContingencyTable& table) {
  ClusterScoreVector out;
  out.cluster_ids = table.row_ids();
  out.scores.reserve(table.num_rows());
  out.weights.reserve(table.num_rows());
  for (std::size_t k = 0; k < table.num_rows(); ++k) out.weights.push_back(table.row_sum(k));
  return out;
}

}  // namespace

ClusterScoreVector purity_per_cluster(const ContingencyTable& table) {
  auto out = empty_scores(table);
  for (std::size_t k = 0; k < table.num_rows(); ++k) {
    std::uint64_t best = 0;
    for (const auto& cell : table.row(k)) best = std::max(best, cell.count);
    out.scores.push_back(static_cast<double>(best) / static_cast<double>(table.row_sum(k)));
  }
  return out;
}

ClusterScoreVector entropy_per_cluster(const ContingencyTable& table) {
  if (table.num_columns() < 2) {
    throw std::invalid_argument("entropy undefined for a single category");
  }
  const double log_j = std::log(static_cast<double>(table.num_columns()));
  auto out = empty_scores(table);
  std::vector<double> counts;
  for (std::size_t k = 0; k < table.num_rows(); ++k) {
    counts.clear();
    for (const auto& cell : table.row(k)) counts.push_back(static_cast<double>(cell.count));
    const double h = entropy_of(counts, static_cast<double>(table.row_sum(k))) / log_j;
    out.scores.push_back(std::clamp(h, 0.0, 1.0));
  }
  return out;
}

PairCounts pair_counts(const ContingencyTable& table) {
  std::uint64_t same_both = 0, same_cluster = 0, same_category = 0;
  for (std::size_t k = 0; k < table.num_rows(); ++k) {
    same_cluster += choose2(table.row_sum(k));
    for (const auto& cell : table.row(k)) same_both += choose2(cell.count);
  }
  for (std::size_t j = 0; j < table.num_columns(); ++j) same_category += choose2(table.column_sum(j));

  PairCounts pc;
  pc.tp = same_both;
  pc.fp = same_cluster - same_both;
  pc.fn = same_category - same_both;
  pc.tn = choose2(table.total()) - pc.tp - pc.fp - pc.fn;
  return pc;
}

double pairwise_f1(const ContingencyTable& table, Diagnostics* diag) {
  if (table.total() < 2) throw std::invalid_argument("pairwise F1 needs at least two labeled documents");
  const auto pc = pair_counts(table);
  const std::uint64_t denom = 2 * pc.tp + pc.fn + pc.fp;
  if (denom == 0) {
    warn(diag, "f1: every document pair is a true negative; F1 defined as 0");
    return 0.0;
  }
  return static_cast<double>(2 * pc.tp) / static_cast<double>(denom);
}

double nmi(const ContingencyTable& table) {
  const double n = static_cast<double>(table.total());
  std::vector<double> rows, cols;
  rows.reserve(table.num_rows());
  cols.reserve(table.num_columns());
  for (std::size_t k = 0; k < table.num_rows(); ++k) rows.push_back(static_cast<double>(table.row_sum(k)));
  for (std::size_t j = 0; j < table.num_columns(); ++j) cols.push_back(static_cast<double>(table.column_sum(j)));

  const double h_clusters = entropy_of(rows, n);
  const double h_categories = entropy_of(cols, n);
  if (h_clusters + h_categories == 0.0) return 1.0;

  double mi = 0.0;
  for (std::size_t k = 0; k < table.num_rows(); ++k) {
    for (const auto& cell : table.row(k)) {
      const double nkj = static_cast<double>(cell.count);
      mi += (nkj / n) * std::log(n * nkj / (rows[k] * cols[cell.column]));
    }
  }
  return std::clamp(mi / ((h_clusters + h_categories) / 2.0), 0.0, 1.0);
}

double micro_average(const ClusterScoreVector& scores) {
  if (scores.scores.empty()) throw std::invalid_argument("cannot average an empty score vector");
  double weighted = 0.0, total = 0.0;
  for (std::size_t k = 0; k < scores.scores.size(); ++k) {
    const double w = static_cast<double>(scores.weights[k]);
    weighted += w * scores.scores[k];
    total += w;
  }
  return weighted / total;
}

double macro_average(const ClusterScoreVector& scores) {
  if (scores.scores.empty()) throw std::invalid_argument("cannot average an empty score vector");
  double sum = 0.0;
  for (double s : scores.scores) sum += s;
  return sum / static_cast<double>(scores.scores.size());
}

}  // namespace cluster_judge
