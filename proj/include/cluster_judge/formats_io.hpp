#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cluster_judge/core_model.hpp"
#include "cluster_judge/intrinsic_vsm.hpp"
#include "cluster_judge/report.hpp"

namespace cluster_judge {

// Malformed input. what() reads "<source>:<line>:<column>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

// `doc<TAB>cluster` lines. '#' lines and blank lines are skipped; CRLF is
// accepted. A repeated document is an error.
Clustering parse_clustering(std::istream& in, std::string_view source = "<clustering>");

// Same physical format as clusterings; one category per document.
GroundTruth parse_labels(std::istream& in, std::string_view source = "<labels>");

// TREC qrels: `topic iteration doc relevance`. Relevance > 0 is relevant;
// repeated (topic, doc) pairs keep the largest grade.
RelevanceJudgments parse_qrels(std::istream& in, std::string_view source = "<qrels>");

// `doc<TAB>term<TAB>count` with integer counts >= 1, summed over repeats.
SparseCorpus parse_corpus(std::istream& in, std::string_view source = "<corpus>");

// Weighted-matrix cache: same layout, positive real values.
SparseCorpus parse_weighted_corpus(std::istream& in, std::string_view source = "<weighted corpus>");

void write_clustering(std::ostream& out, const Clustering& clustering);
void write_labels(std::ostream& out, const GroundTruth& truth);
void write_qrels(std::ostream& out, const RelevanceJudgments& judgments);
void write_corpus(std::ostream& out, const SparseCorpus& corpus);

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view name);

// JSON: {"tool", "version", "generator", "seed", "config", "points": [{"k",
// "source", "measures": {name: {raw, baseline_mean, baseline_std, adjusted,
// samples, seed}}}], "diagnostics"}. CSV: `k,measure,raw,baseline_mean,adjusted`.
// Reals use six decimal places. Throws if no measure produced a score.
std::string write_report(const EvalReport& report, ReportFormat format);

}  // namespace cluster_judge
