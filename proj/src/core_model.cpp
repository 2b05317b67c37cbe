#include "cluster_judge/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace cluster_judge {

bool is_valid_token(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(),
                      [](unsigned char c) { return std::isspace(c) != 0; });
}

Partition Partition::from_pairs(std::vector<std::pair<DocumentId, std::string>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("partition has no documents");
  for (const auto& [doc, group] : pairs) {
    if (!is_valid_token(doc)) throw std::invalid_argument("invalid document id '" + doc + "'");
    if (!is_valid_token(group)) throw std::invalid_argument("invalid group id '" + group + "'");
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) {
      throw std::invalid_argument("duplicate assignment of document '" + pairs[i].first + "'");
    }
  }

  std::vector<std::string> groups;
  groups.reserve(pairs.size());
  for (const auto& p : pairs) groups.push_back(p.second);
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

  auto docs = std::make_shared<DocumentTable>();
  docs->reserve(pairs.size());
  std::vector<std::uint32_t> assignment;
  assignment.reserve(pairs.size());
  for (auto& [doc, group] : pairs) {
    auto it = std::lower_bound(groups.begin(), groups.end(), group);
    assignment.push_back(static_cast<std::uint32_t>(it - groups.begin()));
    docs->push_back(std::move(doc));
  }
  return Partition(std::move(docs), std::move(groups), std::move(assignment));
}

Partition::Partition(DocumentTablePtr documents, std::vector<std::string> group_ids,
                     std::vector<std::uint32_t> assignment)
    : documents_(std::move(documents)),
      group_ids_(std::move(group_ids)),
      assignment_(std::move(assignment)) {
  if (!documents_ || documents_->empty()) throw std::invalid_argument("partition has no documents");
  if (assignment_.size() != documents_->size()) {
    throw std::invalid_argument("assignment length does not match document count");
  }
  if (std::adjacent_find(documents_->begin(), documents_->end(), std::greater_equal<>{}) !=
      documents_->end()) {
    throw std::invalid_argument("document table must be sorted and unique");
  }
  if (std::adjacent_find(group_ids_.begin(), group_ids_.end(), std::greater_equal<>{}) !=
      group_ids_.end()) {
    throw std::invalid_argument("group ids must be sorted and unique");
  }
  group_sizes_.assign(group_ids_.size(), 0);
  for (auto g : assignment_) {
    if (g >= group_ids_.size()) throw std::invalid_argument("assignment refers to unknown group");
    ++group_sizes_[g];
  }
  for (std::size_t g = 0; g < group_sizes_.size(); ++g) {
    if (group_sizes_[g] == 0) throw std::invalid_argument("group '" + group_ids_[g] + "' is empty");
  }
}

std::optional<std::size_t> Partition::find_document(std::string_view doc) const {
  auto it = std::lower_bound(documents_->begin(), documents_->end(), doc);
  if (it == documents_->end() || *it != doc) return std::nullopt;
  return static_cast<std::size_t>(it - documents_->begin());
}

std::optional<std::size_t> Partition::find_group(std::string_view group) const {
  auto it = std::lower_bound(group_ids_.begin(), group_ids_.end(), group);
  if (it == group_ids_.end() || *it != group) return std::nullopt;
  return static_cast<std::size_t>(it - group_ids_.begin());
}

std::vector<std::vector<std::uint32_t>> Partition::members() const {
  std::vector<std::vector<std::uint32_t>> out(group_ids_.size());
  for (std::size_t g = 0; g < out.size(); ++g) out[g].reserve(group_sizes_[g]);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    out[assignment_[i]].push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<std::pair<DocumentId, std::string>> Partition::to_pairs() const {
  std::vector<std::pair<DocumentId, std::string>> out;
  out.reserve(assignment_.size());
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    out.emplace_back((*documents_)[i], group_ids_[assignment_[i]]);
  }
  return out;
}

bool operator==(const Partition& a, const Partition& b) {
  return (a.documents_ == b.documents_ || *a.documents_ == *b.documents_) &&
         a.group_ids_ == b.group_ids_ && a.assignment_ == b.assignment_;
}

ContingencyTable::ContingencyTable(std::vector<ClusterId> row_ids,
                                   std::vector<CategoryId> column_ids,
                                   std::vector<std::vector<Cell>> rows)
    : row_ids_(std::move(row_ids)), column_ids_(std::move(column_ids)), rows_(std::move(rows)) {
  if (rows_.size() != row_ids_.size()) throw std::invalid_argument("row count mismatch");
  row_sums_.assign(rows_.size(), 0);
  column_sums_.assign(column_ids_.size(), 0);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::uint32_t prev = 0;
    bool first = true;
    for (const auto& cell : rows_[k]) {
      if (cell.column >= column_ids_.size()) throw std::invalid_argument("cell column out of range");
      if (!first && cell.column <= prev) throw std::invalid_argument("row cells must be sorted");
      if (cell.count == 0) throw std::invalid_argument("explicit zero cell");
      prev = cell.column;
      first = false;
      row_sums_[k] += cell.count;
      column_sums_[cell.column] += cell.count;
    }
    if (row_sums_[k] == 0) throw std::invalid_argument("cluster '" + row_ids_[k] + "' has no labeled documents");
    total_ += row_sums_[k];
  }
  for (std::size_t j = 0; j < column_sums_.size(); ++j) {
    if (column_sums_[j] == 0) throw std::invalid_argument("category '" + column_ids_[j] + "' is empty");
  }
}

std::uint64_t ContingencyTable::count(std::size_t k, std::size_t j) const {
  const auto& r = rows_[k];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Cell& c, std::size_t col) { return c.column < col; });
  return (it != r.end() && it->column == j) ? it->count : 0;
}

ContingencyTable ContingencyTable::transpose() const {
  std::vector<std::vector<Cell>> cols(column_ids_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    for (const auto& cell : rows_[k]) {
      cols[cell.column].push_back({static_cast<std::uint32_t>(k), cell.count});
    }
  }
  ContingencyTable t(column_ids_, row_ids_, std::move(cols));
  t.coverage_ = coverage_;
  return t;
}

ContingencyTable build_contingency(const Clustering& clustering, const GroundTruth& truth,
                                   Diagnostics* diag) {
  const auto& cdocs = clustering.documents();
  const auto& tdocs = truth.documents();
  const bool shared = clustering.document_table() == truth.document_table();

  // Both document tables are sorted, so a merge join pairs them up.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> joint;  // (cluster, category)
  joint.reserve(std::min(cdocs.size(), tdocs.size()));
  CoverageReport coverage;
  std::size_t i = 0, j = 0;
  while (i < cdocs.size() || j < tdocs.size()) {
    int cmp;
    if (shared) {
      cmp = 0;
    } else if (i == cdocs.size()) {
      cmp = 1;
    } else if (j == tdocs.size()) {
      cmp = -1;
    } else {
      cmp = cdocs[i].compare(tdocs[j]);
    }
    if (cmp == 0) {
      joint.emplace_back(clustering.assignment()[i], truth.assignment()[j]);
      ++i;
      ++j;
    } else if (cmp < 0) {
      coverage.unlabeled.push_back(cdocs[i++]);
    } else {
      coverage.unclustered.push_back(tdocs[j++]);
    }
  }
  if (joint.empty()) throw std::invalid_argument("no jointly covered documents");

  std::vector<std::uint64_t> dense_rows(clustering.num_clusters(), 0);
  std::vector<std::uint64_t> dense_cols(truth.num_categories(), 0);
  for (auto [k, c] : joint) {
    ++dense_rows[k];
    ++dense_cols[c];
  }
  std::vector<std::int64_t> row_index(dense_rows.size(), -1);
  std::vector<ClusterId> row_ids;
  for (std::size_t k = 0; k < dense_rows.size(); ++k) {
    if (dense_rows[k] == 0) {
      coverage.dropped_clusters.push_back(clustering.cluster_ids()[k]);
    } else {
      row_index[k] = static_cast<std::int64_t>(row_ids.size());
      row_ids.push_back(clustering.cluster_ids()[k]);
    }
  }
  std::vector<std::int64_t> col_index(dense_cols.size(), -1);
  std::vector<CategoryId> col_ids;
  for (std::size_t c = 0; c < dense_cols.size(); ++c) {
    if (dense_cols[c] != 0) {
      col_index[c] = static_cast<std::int64_t>(col_ids.size());
      col_ids.push_back(truth.category_ids()[c]);
    }
  }

  // Sorting (row, column) keys gives each row its cells in column order.
  std::vector<std::uint64_t> keys;
  keys.reserve(joint.size());
  const auto ncols = static_cast<std::uint64_t>(col_ids.size());
  for (auto [k, c] : joint) {
    keys.push_back(static_cast<std::uint64_t>(row_index[k]) * ncols +
                   static_cast<std::uint64_t>(col_index[c]));
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::vector<ContingencyTable::Cell>> rows(row_ids.size());
  for (std::size_t a = 0; a < keys.size();) {
    std::size_t b = a;
    while (b < keys.size() && keys[b] == keys[a]) ++b;
    rows[keys[a] / ncols].push_back(
        {static_cast<std::uint32_t>(keys[a] % ncols), static_cast<std::uint64_t>(b - a)});
    a = b;
  }

  if (diag != nullptr &&
      (!coverage.unlabeled.empty() || !coverage.unclustered.empty() ||
       !coverage.dropped_clusters.empty())) {
    diag->warn("coverage: " + std::to_string(coverage.unlabeled.size()) +
               " clustered documents without a label, " +
               std::to_string(coverage.unclustered.size()) +
               " labeled documents without a cluster, " +
               std::to_string(coverage.dropped_clusters.size()) +
               " clusters without labeled documents excluded");
  }
  ContingencyTable table(std::move(row_ids), std::move(col_ids), std::move(rows));
  table.set_coverage(std::move(coverage));
  return table;
}

std::vector<std::size_t> cluster_size_profile(const Clustering& clustering) {
  auto sizes = clustering.cluster_sizes();
  std::vector<std::size_t> profile(sizes.begin(), sizes.end());
  std::sort(profile.begin(), profile.end(), std::greater<>{});
  return profile;
}

}  // namespace cluster_judge
