#include "cluster_judge/formats_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace cluster_judge {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

// Reads logical lines, stripping a trailing CR and skipping blank and '#'
// lines.
class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  bool next() {
    while (std::getline(in_, line_)) {
      ++number_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      const auto first = line_.find_first_not_of(" \t");
      if (first == std::string::npos || line_[first] == '#') continue;
      return true;
    }
    return false;
  }

  const std::string& line() const { return line_; }
  std::size_t number() const { return number_; }

  [[noreturn]] void fail(std::size_t column, const std::string& message) const {
    throw ParseError(std::string(source_), std::max<std::size_t>(number_, 1), column, message);
  }

  std::vector<Field> split_tabs() const {
    std::vector<Field> out;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line_.find('\t', start);
      const auto end = tab == std::string::npos ? line_.size() : tab;
      out.push_back({std::string_view(line_).substr(start, end - start), start + 1});
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return out;
  }

  std::vector<Field> split_whitespace() const {
    std::vector<Field> out;
    std::size_t i = 0;
    while (i < line_.size()) {
      while (i < line_.size() && (line_[i] == ' ' || line_[i] == '\t')) ++i;
      if (i == line_.size()) break;
      const auto start = i;
      while (i < line_.size() && line_[i] != ' ' && line_[i] != '\t') ++i;
      out.push_back({std::string_view(line_).substr(start, i - start), start + 1});
    }
    return out;
  }

  void expect_fields(const std::vector<Field>& fields, std::size_t count, const char* layout) const {
    if (fields.size() != count) {
      fail(1, "expected " + std::to_string(count) + " fields (" + layout + "), found " +
                  std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      if (!is_valid_token(f.text)) fail(f.column, "empty field or embedded whitespace");
    }
  }

 private:
  std::istream& in_;
  std::string_view source_;
  std::string line_;
  std::size_t number_ = 0;
};

Partition parse_partition(std::istream& in, std::string_view source, const char* what) {
  LineReader reader(in, source);
  std::vector<std::pair<DocumentId, std::string>> pairs;
  std::unordered_map<std::string, std::size_t> first_line;
  while (reader.next()) {
    const auto fields = reader.split_tabs();
    reader.expect_fields(fields, 2, "document<TAB>id");
    std::string doc(fields[0].text);
    auto [it, inserted] = first_line.emplace(doc, reader.number());
    if (!inserted) {
      reader.fail(1, "duplicate assignment of document '" + doc + "' (first on line " +
                         std::to_string(it->second) + ")");
    }
    pairs.emplace_back(std::move(doc), std::string(fields[1].text));
  }
  if (pairs.empty()) reader.fail(0, std::string("empty ") + what + " file");
  return Partition::from_pairs(std::move(pairs));
}

template <class T>
bool parse_number(std::string_view text, T& value) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

SparseCorpus parse_triples(std::istream& in, std::string_view source, bool integer_counts) {
  LineReader reader(in, source);
  std::vector<SparseCorpus::Triple> triples;
  while (reader.next()) {
    const auto fields = reader.split_tabs();
    reader.expect_fields(fields, 3, "document<TAB>term<TAB>count");
    double value = 0.0;
    if (integer_counts) {
      long long count = 0;
      if (!parse_number(fields[2].text, count)) reader.fail(fields[2].column, "count is not an integer");
      if (count < 1) reader.fail(fields[2].column, "count must be >= 1");
      value = static_cast<double>(count);
    } else {
      if (!parse_number(fields[2].text, value) || !std::isfinite(value)) {
        reader.fail(fields[2].column, "value is not a number");
      }
      if (!(value > 0.0)) reader.fail(fields[2].column, "value must be > 0");
    }
    triples.emplace_back(std::string(fields[0].text), std::string(fields[1].text), value);
  }
  if (triples.empty()) reader.fail(0, "empty corpus file");
  return SparseCorpus::from_triples(std::move(triples));
}

void write_partition(std::ostream& out, const Partition& p) {
  for (std::size_t i = 0; i < p.num_documents(); ++i) {
    out << p.documents()[i] << '\t' << p.group_of(i) << '\n';
  }
}

std::string fixed6(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000".
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

Clustering parse_clustering(std::istream& in, std::string_view source) {
  return Clustering(parse_partition(in, source, "clustering"));
}

GroundTruth parse_labels(std::istream& in, std::string_view source) {
  return GroundTruth(parse_partition(in, source, "labels"));
}

RelevanceJudgments parse_qrels(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::map<std::pair<TopicId, DocumentId>, long long> grades;
  std::size_t records = 0;
  while (reader.next()) {
    const auto fields = reader.split_whitespace();
    reader.expect_fields(fields, 4, "topic iteration document relevance");
    long long rel = 0;
    if (!parse_number(fields[3].text, rel)) reader.fail(fields[3].column, "relevance is not an integer");
    if (rel < 0) reader.fail(fields[3].column, "relevance must be >= 0");
    auto key = std::make_pair(std::string(fields[0].text), std::string(fields[2].text));
    auto [it, inserted] = grades.emplace(std::move(key), rel);
    if (!inserted) it->second = std::max(it->second, rel);
    ++records;
  }
  if (records == 0) reader.fail(0, "empty qrels file");
  RelevanceJudgments out;
  for (const auto& [key, rel] : grades) {
    auto& set = out.topics[key.first];
    if (rel > 0) set.insert(key.second);
  }
  return out;
}

SparseCorpus parse_corpus(std::istream& in, std::string_view source) {
  return parse_triples(in, source, true);
}

SparseCorpus parse_weighted_corpus(std::istream& in, std::string_view source) {
  return parse_triples(in, source, false);
}

void write_clustering(std::ostream& out, const Clustering& clustering) { write_partition(out, clustering); }

void write_labels(std::ostream& out, const GroundTruth& truth) { write_partition(out, truth); }

void write_qrels(std::ostream& out, const RelevanceJudgments& judgments) {
  for (const auto& [topic, docs] : judgments.topics) {
    for (const auto& doc : docs) out << topic << " 0 " << doc << " 1\n";
  }
}

void write_corpus(std::ostream& out, const SparseCorpus& corpus) {
  char buf[64];
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const auto r = corpus.row(d);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r.values[i]);
      out << corpus.documents()[d] << '\t' << corpus.terms()[r.terms[i]] << '\t' << buf << '\n';
    }
  }
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

bool EvalReport::all_succeeded() const {
  for (const auto& p : points) {
    for (const auto& m : p.measures) {
      if (!m.score) return false;
    }
  }
  return true;
}

std::string write_report(const EvalReport& report, ReportFormat format) {
  bool any = false;
  for (const auto& p : report.points) {
    for (const auto& m : p.measures) any = any || m.score.has_value();
  }
  if (!any) throw std::invalid_argument("no measures computed");

  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "k,measure,raw,baseline_mean,adjusted\n";
    for (const auto& p : report.points) {
      for (const auto& m : p.measures) {
        if (!m.score) continue;
        out << p.k << ',' << m.name << ',' << fixed6(m.score->raw) << ',' << fixed6(m.score->baseline_mean)
            << ',' << fixed6(m.score->adjusted) << '\n';
      }
    }
    return out.str();
  }

  out << "{\n";
  out << "  \"tool\": \"cluster_judge\",\n";
  out << "  \"version\": " << quoted(report.version) << ",\n";
  out << "  \"generator\": " << quoted(report.generator) << ",\n";
  out << "  \"seed\": " << report.seed << ",\n";
  out << "  \"config\": {";
  for (std::size_t i = 0; i < report.config.size(); ++i) {
    out << (i ? ", " : "") << quoted(report.config[i].first) << ": " << quoted(report.config[i].second);
  }
  out << "},\n";
  if (report.elapsed_seconds) out << "  \"elapsed_seconds\": " << fixed6(*report.elapsed_seconds) << ",\n";
  out << "  \"points\": [";
  for (std::size_t pi = 0; pi < report.points.size(); ++pi) {
    const auto& p = report.points[pi];
    out << (pi ? ",\n" : "\n") << "    {\"k\": " << p.k << ", \"source\": " << quoted(p.source)
        << ", \"measures\": {";
    for (std::size_t mi = 0; mi < p.measures.size(); ++mi) {
      const auto& m = p.measures[mi];
      out << (mi ? ",\n" : "\n") << "      " << quoted(m.name) << ": {";
      if (!m.score) {
        out << "\"error\": " << quoted(m.error.value_or("unknown error")) << "}";
        continue;
      }
      const auto& s = *m.score;
      out << "\"raw\": " << fixed6(s.raw) << ", \"baseline_mean\": " << fixed6(s.baseline_mean)
          << ", \"baseline_std\": " << fixed6(s.baseline_std) << ", \"adjusted\": " << fixed6(s.adjusted)
          << ", \"samples\": " << s.samples << ", \"seed\": " << s.seed;
      if (!m.topics.empty()) {
        out << ", \"topics\": [";
        for (std::size_t ti = 0; ti < m.topics.size(); ++ti) {
          const auto& t = m.topics[ti];
          out << (ti ? ", " : "") << "{\"topic\": " << quoted(t.topic) << ", \"relevant\": " << t.relevant
              << ", \"split\": " << fixed6(t.split) << ", \"min_split\": " << fixed6(t.min_split)
              << ", \"nccg\": " << fixed6(t.nccg) << "}";
        }
        out << "]";
      }
      out << "}";
    }
    out << (p.measures.empty() ? "}}" : "\n    }}");
  }
  out << (report.points.empty() ? "],\n" : "\n  ],\n");
  out << "  \"diagnostics\": [";
  for (std::size_t i = 0; i < report.diagnostics.size(); ++i) {
    out << (i ? ", " : "") << quoted(report.diagnostics[i]);
  }
  out << "]\n}\n";
  return out.str();
}

}  // namespace cluster_judge
