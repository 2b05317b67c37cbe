#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cluster_judge {

using DocumentId = std::string;
using ClusterId = std::string;
using CategoryId = std::string;
using TopicId = std::string;

// Sorted, duplicate-free list of document ids. Shared between a clustering
// and the random baselines derived from it.
using DocumentTable = std::vector<DocumentId>;
using DocumentTablePtr = std::shared_ptr<const DocumentTable>;

// Collects non-fatal warnings (coverage gaps, skipped topics, degenerate
// scores). Not thread-safe; evaluators running concurrently take nullptr.
class Diagnostics {
 public:
  void warn(std::string message) { messages_.push_back(std::move(message)); }
  const std::vector<std::string>& messages() const { return messages_; }
  bool empty() const { return messages_.empty(); }

 private:
  std::vector<std::string> messages_;
};

inline void warn(Diagnostics* diag, std::string message) {
  if (diag != nullptr) diag->warn(std::move(message));
}

bool is_valid_token(std::string_view token);

// A hard assignment of every document to exactly one group. Groups are
// addressed by index into the sorted group-id list; no group is empty.
class Partition {
 public:
  // Builds from (document, group) pairs. Throws std::invalid_argument on a
  // duplicate document, an invalid token, or an empty input.
  static Partition from_pairs(std::vector<std::pair<DocumentId, std::string>> pairs);

  // Validating constructor over an existing document table. assignment[i]
  // is the group index of documents->at(i).
  Partition(DocumentTablePtr documents, std::vector<std::string> group_ids,
            std::vector<std::uint32_t> assignment);

  std::size_t num_documents() const { return documents_->size(); }
  std::size_t num_groups() const { return group_ids_.size(); }

  const DocumentTablePtr& document_table() const { return documents_; }
  const DocumentTable& documents() const { return *documents_; }
  const std::vector<std::string>& group_ids() const { return group_ids_; }
  std::span<const std::uint32_t> assignment() const { return assignment_; }
  std::span<const std::size_t> group_sizes() const { return group_sizes_; }

  std::optional<std::size_t> find_document(std::string_view doc) const;
  std::optional<std::size_t> find_group(std::string_view group) const;
  const std::string& group_of(std::size_t doc_index) const {
    return group_ids_[assignment_[doc_index]];
  }

  // Document indices of each group, ascending.
  std::vector<std::vector<std::uint32_t>> members() const;

  // (document, group) pairs in document order.
  std::vector<std::pair<DocumentId, std::string>> to_pairs() const;

  friend bool operator==(const Partition& a, const Partition& b);

 private:
  DocumentTablePtr documents_;
  std::vector<std::string> group_ids_;
  std::vector<std::uint32_t> assignment_;
  std::vector<std::size_t> group_sizes_;
};

// The clustering under evaluation.
class Clustering : public Partition {
 public:
  using Partition::Partition;
  explicit Clustering(Partition p) : Partition(std::move(p)) {}

  static Clustering from_pairs(std::vector<std::pair<DocumentId, ClusterId>> pairs) {
    return Clustering(Partition::from_pairs(std::move(pairs)));
  }

  std::size_t num_clusters() const { return num_groups(); }
  const std::vector<ClusterId>& cluster_ids() const { return group_ids(); }
  std::span<const std::size_t> cluster_sizes() const { return group_sizes(); }
};

// Single-label category assignment.
class GroundTruth : public Partition {
 public:
  using Partition::Partition;
  explicit GroundTruth(Partition p) : Partition(std::move(p)) {}

  static GroundTruth from_pairs(std::vector<std::pair<DocumentId, CategoryId>> pairs) {
    return GroundTruth(Partition::from_pairs(std::move(pairs)));
  }

  std::size_t num_categories() const { return num_groups(); }
  const std::vector<CategoryId>& category_ids() const { return group_ids(); }
  std::span<const std::size_t> category_sizes() const { return group_sizes(); }
};

// Per-topic relevant document sets. Topics whose judgments contained no
// relevant document are kept with an empty set so callers can report them.
struct RelevanceJudgments {
  std::map<TopicId, std::set<DocumentId>> topics;
};

// Which documents were left out of a contingency table and why.
struct CoverageReport {
  std::vector<DocumentId> unlabeled;       // clustered, no category
  std::vector<DocumentId> unclustered;     // labeled, no cluster
  std::vector<ClusterId> dropped_clusters; // no labeled member at all
};

// Sparse K x J table of n_kj = |c_j ∩ w_k|. Rows are clusters with at least
// one labeled member, columns categories with at least one clustered member,
// both in sorted id order.
class ContingencyTable {
 public:
  struct Cell {
    std::uint32_t column;
    std::uint64_t count;
  };

  ContingencyTable(std::vector<ClusterId> row_ids, std::vector<CategoryId> column_ids,
                   std::vector<std::vector<Cell>> rows);

  std::size_t num_rows() const { return row_ids_.size(); }
  std::size_t num_columns() const { return column_ids_.size(); }
  const std::vector<ClusterId>& row_ids() const { return row_ids_; }
  const std::vector<CategoryId>& column_ids() const { return column_ids_; }

  // Non-zero cells of row k, ascending column.
  std::span<const Cell> row(std::size_t k) const { return rows_[k]; }
  std::uint64_t count(std::size_t k, std::size_t j) const;
  std::uint64_t row_sum(std::size_t k) const { return row_sums_[k]; }
  std::uint64_t column_sum(std::size_t j) const { return column_sums_[j]; }
  std::uint64_t total() const { return total_; }

  ContingencyTable transpose() const;

  const CoverageReport& coverage() const { return coverage_; }
  void set_coverage(CoverageReport coverage) { coverage_ = std::move(coverage); }

 private:
  std::vector<ClusterId> row_ids_;
  std::vector<CategoryId> column_ids_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::uint64_t> row_sums_;
  std::vector<std::uint64_t> column_sums_;
  std::uint64_t total_ = 0;
  CoverageReport coverage_;
};

// Counts |c_j ∩ w_k| over documents present in both inputs. Throws
// std::invalid_argument("no jointly covered documents") when the domains do
// not overlap. Coverage gaps are recorded on the table and, if diag is
// given, summarised as a warning.
ContingencyTable build_contingency(const Clustering& clustering, const GroundTruth& truth,
                                   Diagnostics* diag = nullptr);

// Cluster sizes, largest first.
std::vector<std::size_t> cluster_size_profile(const Clustering& clustering);

}  // namespace cluster_judge
