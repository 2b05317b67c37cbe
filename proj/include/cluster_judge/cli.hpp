#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cluster_judge/report.hpp"

namespace cluster_judge {

inline constexpr const char* kVersion = "0.1.0";

// Effective configuration of one invocation.
struct RunConfig {
  std::string command;
  std::vector<std::string> clusters;  // files or directories
  std::string labels;
  std::string qrels;
  std::string corpus;
  std::vector<std::string> measures;  // empty: every measure the inputs allow
  std::uint32_t samples = 10;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::vector<std::size_t> ks;
  std::size_t k = 0;
  std::string weighting = "tfidf";
  double k1 = 1.2;
  double b = 0.75;
  std::uint32_t max_iter = 100;
  unsigned threads = 1;
  std::string out;
  bool timings = false;

  // generate
  std::string shape;
  std::size_t n = 0;
  double giant_fraction = 0.6;
  std::size_t topics = 20;
  std::size_t per_topic = 5;
  std::string labels_out;
};

// Measures known to eval/sweep, in canonical order.
const std::vector<std::string>& known_measures();

// Evaluates one clustering file (config.clusters must name exactly one).
EvalReport cmd_eval(const RunConfig& config);

// One point per clustering file, or per k for a corpus-driven k-means sweep.
EvalReport cmd_sweep(const RunConfig& config);

// Writes synthetic inputs to config.out.
void cmd_generate(const RunConfig& config);

// Clusters config.corpus with k-means and writes the clustering to
// config.out. Returns a one-line summary.
std::string cmd_kmeans(const RunConfig& config);

// Entry point shared by the executable and the tests. Returns the process
// exit code: 0 when every requested measure succeeded, 1 when some failed,
// 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cluster_judge
