#include "cluster_judge/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cluster_judge/baseline_adjust.hpp"
#include "cluster_judge/extrinsic_measures.hpp"
#include "cluster_judge/formats_io.hpp"
#include "cluster_judge/intrinsic_vsm.hpp"
#include "cluster_judge/nccg.hpp"
#include "cluster_judge/parallel.hpp"
#include "cluster_judge/random.hpp"
#include "cluster_judge/synthetic.hpp"

namespace cluster_judge {

namespace {

namespace fs = std::filesystem;

// Usage problems and unreadable inputs: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::optional<GroundTruth> labels;
  std::optional<RelevanceJudgments> qrels;
  std::optional<SparseCorpus> corpus;  // weighted
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

template <class F>
auto parse_file(const std::string& path, F parse) {
  auto in = open_input(path);
  return parse(in, path);
}

SparseCorpus load_corpus(const RunConfig& config) {
  if (config.weighting == "none") return parse_file(config.corpus, parse_weighted_corpus);
  auto raw = parse_file(config.corpus, parse_corpus);
  if (config.weighting == "tfidf") return tfidf_weight(raw);
  if (config.weighting == "bm25") return bm25_weight(raw, config.k1, config.b);
  throw UsageError("unknown weighting '" + config.weighting + "' (expected tfidf, bm25 or none)");
}

Inputs load_inputs(const RunConfig& config) {
  Inputs in;
  if (!config.labels.empty()) in.labels = parse_file(config.labels, parse_labels);
  if (!config.qrels.empty()) in.qrels = parse_file(config.qrels, parse_qrels);
  if (!config.corpus.empty()) in.corpus = load_corpus(config);
  return in;
}

std::vector<std::string> expand_cluster_paths(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file()) files.push_back(entry.path().string());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

bool is_label_measure(const std::string& m) {
  return m == "purity" || m == "purity_macro" || m == "entropy" || m == "entropy_macro" || m == "f1" ||
         m == "nmi";
}

std::vector<std::string> resolve_measures(const RunConfig& config, const Inputs& in) {
  if (!config.measures.empty()) {
    for (const auto& m : config.measures) {
      const auto& known = known_measures();
      if (std::find(known.begin(), known.end(), m) == known.end()) throw UsageError("unknown measure '" + m + "'");
    }
    return config.measures;
  }
  std::vector<std::string> out;
  for (const auto& m : known_measures()) {
    if ((is_label_measure(m) && in.labels) || (m == "nccg" && in.qrels) || (m == "rmse" && in.corpus)) {
      out.push_back(m);
    }
  }
  if (out.empty()) throw UsageError("no measures requested and no --labels, --qrels or --corpus given");
  return out;
}

using ScoreFn = std::function<double(const Clustering&, Diagnostics*)>;

ScoreFn label_measure(const std::string& name, const GroundTruth& truth) {
  auto with_table = [&truth](auto f) -> ScoreFn {
    return [&truth, f](const Clustering& c, Diagnostics* diag) { return f(build_contingency(c, truth, diag), diag); };
  };
  if (name == "purity") return with_table([](const ContingencyTable& t, Diagnostics*) { return micro_average(purity_per_cluster(t)); });
  if (name == "purity_macro") return with_table([](const ContingencyTable& t, Diagnostics*) { return macro_average(purity_per_cluster(t)); });
  if (name == "entropy") return with_table([](const ContingencyTable& t, Diagnostics*) { return micro_average(entropy_per_cluster(t)); });
  if (name == "entropy_macro") return with_table([](const ContingencyTable& t, Diagnostics*) { return macro_average(entropy_per_cluster(t)); });
  if (name == "f1") return with_table([](const ContingencyTable& t, Diagnostics* d) { return pairwise_f1(t, d); });
  return with_table([](const ContingencyTable& t, Diagnostics*) { return nmi(t); });
}

MeasureResult evaluate_measure(const std::string& name, const Clustering& clustering, const Inputs& in,
                               const BaselineSpec& spec, unsigned threads, Diagnostics& diag) {
  MeasureResult result;
  result.name = name;
  try {
    ScoreFn score;
    if (is_label_measure(name)) {
      if (!in.labels) throw std::invalid_argument(name + " requires ground-truth labels");
      score = label_measure(name, *in.labels);
    } else if (name == "nccg") {
      if (!in.qrels) throw std::invalid_argument("nccg requires relevance judgments");
      const auto& judgments = *in.qrels;
      score = [&judgments](const Clustering& c, Diagnostics* d) { return nccg_mean(c, judgments, d).mean; };
      result.topics = nccg_mean(clustering, judgments).topics;
    } else if (name == "rmse") {
      if (!in.corpus) throw std::invalid_argument("rmse requires a corpus");
      const auto& corpus = *in.corpus;
      score = [&corpus](const Clustering& c, Diagnostics*) { return rmse(corpus, c); };
    } else {
      throw std::invalid_argument("unknown measure '" + name + "'");
    }
    Diagnostics local;
    const double raw = score(clustering, &local);
    for (const auto& m : local.messages()) diag.warn(name + ": " + m);
    const Measure measure = [&score](const Clustering& c) { return score(c, nullptr); };
    result.score = combine(raw, baseline_scores(measure, clustering, spec, threads), spec);
  } catch (const std::exception& e) {
    result.error = e.what();
    diag.warn(name + ": " + e.what());
  }
  return result;
}

ReportPoint evaluate_point(const Clustering& clustering, std::string source, const Inputs& in,
                           const std::vector<std::string>& measures, const RunConfig& config, Diagnostics& diag) {
  ReportPoint point;
  point.k = clustering.num_clusters();
  point.source = std::move(source);
  const BaselineSpec spec{config.seed, config.samples};
  for (const auto& m : measures) point.measures.push_back(evaluate_measure(m, clustering, in, spec, config.threads, diag));
  return point;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

EvalReport start_report(const RunConfig& config, const std::vector<std::string>& measures) {
  EvalReport r;
  r.seed = config.seed;
  r.generator = Rng::kAlgorithm;
  r.version = kVersion;
  auto& c = r.config;
  c.emplace_back("command", config.command);
  if (!config.clusters.empty()) c.emplace_back("clusters", join(config.clusters));
  if (!config.labels.empty()) c.emplace_back("labels", config.labels);
  if (!config.qrels.empty()) c.emplace_back("qrels", config.qrels);
  if (!config.corpus.empty()) {
    c.emplace_back("corpus", config.corpus);
    c.emplace_back("weighting", config.weighting);
    if (config.weighting == "bm25") {
      c.emplace_back("k1", shortest(config.k1));
      c.emplace_back("b", shortest(config.b));
    }
  }
  c.emplace_back("measures", join(measures));
  c.emplace_back("baseline-samples", std::to_string(config.samples));
  c.emplace_back("seed", std::to_string(config.seed));
  c.emplace_back("format", config.format);
  if (!config.ks.empty()) {
    std::vector<std::string> ks;
    for (auto k : config.ks) ks.push_back(std::to_string(k));
    c.emplace_back("ks", join(ks));
    c.emplace_back("max-iter", std::to_string(config.max_iter));
  }
  return r;
}

void finish_report(EvalReport& report, const Diagnostics& diag) {
  for (const auto& m : diag.messages()) {
    if (std::find(report.diagnostics.begin(), report.diagnostics.end(), m) == report.diagnostics.end()) {
      report.diagnostics.push_back(m);
    }
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

template <class Writer>
std::string render(Writer write) {
  std::ostringstream s;
  write(s);
  return s.str();
}

DocumentTablePtr documents_for_generate(const RunConfig& config) {
  if (!config.labels.empty()) return parse_file(config.labels, parse_labels).document_table();
  if (!config.corpus.empty()) return parse_file(config.corpus, parse_corpus).document_table();
  if (config.n == 0) throw UsageError("generate needs --n or a --labels/--corpus file to take documents from");
  return synthetic::numbered_documents(config.n);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CLUSTER_JUDGE_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("CLUSTER_JUDGE_SEED is not an unsigned integer");
    return v;
  }
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

const std::vector<std::string>& known_measures() {
  static const std::vector<std::string> names{"purity", "purity_macro", "entropy", "entropy_macro",
                                              "f1",     "nmi",          "nccg",    "rmse"};
  return names;
}

EvalReport cmd_eval(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  if (config.clusters.size() != 1) throw UsageError("eval takes exactly one --clusters file");
  const auto in = load_inputs(config);
  const auto measures = resolve_measures(config, in);
  const auto clustering = parse_file(config.clusters.front(), parse_clustering);

  auto report = start_report(config, measures);
  Diagnostics diag;
  report.points.push_back(evaluate_point(clustering, config.clusters.front(), in, measures, config, diag));
  finish_report(report, diag);
  if (config.timings) {
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  return report;
}

EvalReport cmd_sweep(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto in = load_inputs(config);
  const auto measures = resolve_measures(config, in);
  auto report = start_report(config, measures);
  Diagnostics diag;

  if (!config.clusters.empty()) {
    for (const auto& path : expand_cluster_paths(config.clusters)) {
      const auto clustering = parse_file(path, parse_clustering);
      report.points.push_back(evaluate_point(clustering, path, in, measures, config, diag));
    }
  } else if (in.corpus) {
    if (config.ks.empty()) throw UsageError("a corpus sweep needs --ks");
    if (!std::is_sorted(config.ks.begin(), config.ks.end())) throw UsageError("--ks must be ascending");
    for (auto k : config.ks) {
      if (k < 1 || k > in.corpus->num_documents()) {
        throw UsageError("k = " + std::to_string(k) + " is outside [1, " + std::to_string(in.corpus->num_documents()) + "]");
      }
      KMeansOptions opts;
      opts.k = k;
      opts.seed = mix_seed(config.seed, k);
      opts.max_iter = config.max_iter;
      opts.threads = config.threads;
      const auto km = kmeans(*in.corpus, opts);
      if (!km.converged) diag.warn("k-means at k = " + std::to_string(k) + " stopped at max-iter before converging");
      report.points.push_back(evaluate_point(km.clustering, "kmeans", in, measures, config, diag));
      report.points.back().k = k;
    }
  } else {
    throw UsageError("sweep needs --clusters files/directories or a --corpus with --ks");
  }
  finish_report(report, diag);
  if (config.timings) {
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  return report;
}

void cmd_generate(const RunConfig& config) {
  const auto& shape = config.shape;
  std::string text;
  if (shape == "giant" || shape == "singletons" || shape == "uniform-random-k") {
    const auto docs = documents_for_generate(config);
    std::optional<Clustering> c;
    if (shape == "giant") {
      c = synthetic::giant_clustering(docs, config.giant_fraction);
    } else if (shape == "singletons") {
      c = synthetic::singleton_clustering(docs);
    } else {
      if (config.k == 0) throw UsageError("uniform-random-k needs --k");
      c = synthetic::uniform_random_clustering(docs, config.k, config.seed);
    }
    text = render([&](std::ostream& o) { write_clustering(o, *c); });
  } else if (shape == "size-matched-random") {
    if (config.clusters.size() != 1) throw UsageError("size-matched-random needs exactly one --clusters file");
    const auto source = parse_file(config.clusters.front(), parse_clustering);
    text = render([&](std::ostream& o) { write_clustering(o, generate_baseline(source, config.seed)); });
  } else if (shape == "labels") {
    if (config.k == 0) throw UsageError("labels needs --k categories");
    const auto truth = synthetic::uniform_labels(documents_for_generate(config), config.k, config.seed);
    text = render([&](std::ostream& o) { write_labels(o, truth); });
  } else if (shape == "qrels") {
    const auto j = synthetic::random_judgments(documents_for_generate(config), config.topics, config.per_topic, config.seed);
    text = render([&](std::ostream& o) { write_qrels(o, j); });
  } else if (shape == "mixture-corpus") {
    synthetic::MixtureOptions opts;
    if (config.n != 0) opts.documents = config.n;
    opts.topics = config.topics;
    opts.seed = config.seed;
    const auto mix = synthetic::mixture_corpus(opts);
    text = render([&](std::ostream& o) { write_corpus(o, mix.corpus); });
    if (!config.labels_out.empty()) {
      write_text(config.labels_out, render([&](std::ostream& o) { write_labels(o, mix.topics); }), std::cout);
    }
  } else {
    throw UsageError("unknown shape '" + shape + "'");
  }
  write_text(config.out, text, std::cout);
}

std::string cmd_kmeans(const RunConfig& config) {
  if (config.corpus.empty()) throw UsageError("kmeans needs --corpus");
  if (config.k == 0) throw UsageError("kmeans needs --k");
  const auto corpus = load_corpus(config);
  KMeansOptions opts;
  opts.k = config.k;
  opts.seed = config.seed;
  opts.max_iter = config.max_iter;
  opts.threads = config.threads;
  const auto km = kmeans(corpus, opts);
  write_text(config.out, render([&](std::ostream& o) { write_clustering(o, km.clustering); }), std::cout);
  std::ostringstream summary;
  summary << "k=" << config.k << " seed=" << config.seed << " iterations=" << km.iterations
          << " converged=" << (km.converged ? "true" : "false") << " mean_cosine="
          << shortest(km.objective_history.empty() ? 0.0 : km.objective_history.back()) << '\n';
  return summary.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster quality evaluation with divergence from a size-matched random baseline", "cluster_judge"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig config;
  std::optional<std::uint64_t> seed;
  std::string measures;
  std::string ks;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Root seed (default: $CLUSTER_JUDGE_SEED, else random; always echoed)");
    sub->add_option("--threads", config.threads, "Worker threads (0 = all cores); results do not depend on it")
        ->default_val(1);
    sub->add_option("--out", config.out, "Output file (default stdout)");
  };
  auto add_eval_inputs = [&](CLI::App* sub) {
    sub->add_option("--labels", config.labels, "Ground-truth labels (doc<TAB>category)");
    sub->add_option("--qrels", config.qrels, "Relevance judgments (TREC qrels)");
    sub->add_option("--corpus", config.corpus, "Term counts (doc<TAB>term<TAB>count)");
    sub->add_option("--measures", measures, "Comma-separated: purity,purity_macro,entropy,entropy_macro,f1,nmi,nccg,rmse");
    sub->add_option("--baseline-samples", config.samples, "Random baselines per score (R)")->default_val(10);
    sub->add_option("--format", config.format, "json or csv")->default_val("json")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timings", config.timings, "Include elapsed time in the report");
  };
  auto add_weighting = [&](CLI::App* sub) {
    sub->add_option("--weighting", config.weighting, "tfidf, bm25 or none (corpus values used as given)")
        ->default_val("tfidf")
        ->check(CLI::IsMember({"tfidf", "bm25", "none"}));
    sub->add_option("--k1", config.k1, "BM25 k1")->default_val(1.2);
    sub->add_option("--b", config.b, "BM25 b")->default_val(0.75);
    sub->add_option("--max-iter", config.max_iter, "k-means iteration cap")->default_val(100);
  };

  auto* eval = app.add_subcommand("eval", "Score one clustering against a random baseline");
  eval->add_option("--clusters", config.clusters, "Clustering file (doc<TAB>cluster)")->required();
  add_eval_inputs(eval);
  add_weighting(eval);
  add_common(eval);

  auto* sweep = app.add_subcommand("sweep", "Score several clusterings, or k-means over a corpus at several k");
  sweep->add_option("--clusters", config.clusters, "Clustering files or directories (repeatable)");
  sweep->add_option("--ks", ks, "Comma-separated ascending cluster counts for a corpus sweep");
  add_eval_inputs(sweep);
  add_weighting(sweep);
  add_common(sweep);

  auto* generate = app.add_subcommand("generate", "Write synthetic clusterings, labels, qrels or corpora");
  generate->add_option("--shape", config.shape,
                       "giant, singletons, uniform-random-k, size-matched-random, labels, qrels, mixture-corpus")
      ->required();
  generate->add_option("--n", config.n, "Number of documents");
  generate->add_option("--k", config.k, "Clusters (uniform-random-k) or categories (labels)");
  generate->add_option("--giant-fraction", config.giant_fraction, "Share of documents in the giant cluster")->default_val(0.6);
  generate->add_option("--topics", config.topics, "Topics (qrels, mixture-corpus)")->default_val(20);
  generate->add_option("--per-topic", config.per_topic, "Relevant documents per topic (qrels)")->default_val(5);
  generate->add_option("--clusters", config.clusters, "Source clustering (size-matched-random)");
  generate->add_option("--labels", config.labels, "Take document ids from this labels file");
  generate->add_option("--corpus", config.corpus, "Take document ids from this corpus file");
  generate->add_option("--labels-out", config.labels_out, "Topic labels of a mixture corpus");
  add_common(generate);

  auto* km = app.add_subcommand("kmeans", "Cluster a corpus with seeded spherical k-means");
  km->add_option("--corpus", config.corpus, "Term counts (doc<TAB>term<TAB>count)")->required();
  km->add_option("--k", config.k, "Number of clusters")->required();
  add_weighting(km);
  add_common(km);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    config.seed = resolve_seed(seed);
    config.threads = resolve_threads(config.threads);
    std::stringstream ms(measures);
    for (std::string m; std::getline(ms, m, ',');) {
      if (!m.empty()) config.measures.push_back(m);
    }
    std::stringstream ks_stream(ks);
    for (std::string k; std::getline(ks_stream, k, ',');) {
      if (k.empty()) continue;
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), v);
      if (ec != std::errc() || ptr != k.data() + k.size()) throw UsageError("--ks entry '" + k + "' is not an integer");
      config.ks.push_back(v);
    }

    if (eval->parsed() || sweep->parsed()) {
      config.command = eval->parsed() ? "eval" : "sweep";
      const auto report = eval->parsed() ? cmd_eval(config) : cmd_sweep(config);
      for (const auto& d : report.diagnostics) err << "warning: " << d << '\n';
      write_text(config.out, write_report(report, parse_report_format(config.format)), out);
      return report.all_succeeded() ? 0 : 1;
    }
    if (generate->parsed()) {
      config.command = "generate";
      cmd_generate(config);
      err << "seed=" << config.seed << '\n';
      return 0;
    }
    config.command = "kmeans";
    err << cmd_kmeans(config);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cluster_judge
