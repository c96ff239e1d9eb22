#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "motiflp/baselines.hpp"
#include "motiflp/cross_validation.hpp"
#include "motiflp/dataset.hpp"
#include "motiflp/graph.hpp"
#include "motiflp/io.hpp"
#include "motiflp/stats.hpp"

namespace motiflp {

struct FeatureConfig {
  std::vector<int> ks = {3};
  bool motifs = true;                   // include motif count columns
  std::vector<BaselineKind> baselines;  // extra score columns, in this order
  BaselineOptions baseline_options;     // nmf seed derives from dataset seed
  Normalization normalization = Normalization::kL1PerK;
  int workers = 1;
  std::size_t checkpoint_every = 0;  // forwarded to the counting batch
  std::string checkpoint_path;
  std::ostream* progress = nullptr;
};

// Feature columns for an existing dataset: motif counts on the protocol-
// modified graph plus baseline scores under the graph policy above.
FeatureMatrix extract_features(const Graph& g, const Dataset& dataset,
                               const FeatureConfig& config,
                               double* count_seconds = nullptr);

struct PipelineConfig {
  Protocol protocol = Protocol::kInsert;
  std::uint64_t seed = 0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  double fraction_d2 = 0.5;
  NegativeSampler sampler = NegativeSampler::kNodeFirst;
  std::vector<int> ks = {3};
  bool motifs = true;
  std::vector<BaselineKind> baselines;
  BaselineOptions baseline_options;
  Normalization normalization = Normalization::kL1PerK;
  int workers = 1;
};

struct PipelineResult {
  Dataset dataset;
  FeatureMatrix features;
  double count_seconds = 0.0;
};

// Dataset sampling, protocol-modified counting, and feature assembly in one
// deterministic step. Neighborhood baselines score on the original graph,
// path baselines (katz, rpr) on the graph with the sampled negatives
// inserted, and nmf on the graph with the positives removed, independent of
// which protocol shapes the motif counts.
PipelineResult run_pipeline(const Graph& g, const PipelineConfig& config);

struct ExperimentConfig {
  PipelineConfig pipeline;
  ModelSpec model;
  int folds = 10;
};

struct ExperimentResult {
  PipelineResult pipeline;
  EvalReport report;
};

ExperimentResult run_experiment(const Graph& g, const ExperimentConfig& config);

Matrix to_dense_matrix(const FeatureMatrix& features);

// Feature rows bundled with the pairs they describe, as written by `extract`
// and consumed by `train`.
struct FeatureTable {
  KvConfig config;
  std::vector<NodePair> pairs;
  std::vector<int> labels;
  std::vector<int> distances;
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> rows;
};

FeatureTable make_feature_table(const Dataset& dataset,
                                const FeatureMatrix& features,
                                KvConfig extra = {});
void write_feature_table(const FeatureTable& table, std::ostream& out);
FeatureTable read_feature_table(std::istream& in);
FeatureTable read_feature_table_file(const std::string& path);

struct SweepRow {
  double fraction_d2 = 0.0;
  EvalReport report;
};

// Reruns the full experiment once per negative-distance mix. Every other
// config field stays fixed, so the 0.5 row reproduces the standard run.
std::vector<SweepRow> distance_sweep(const Graph& g,
                                     const ExperimentConfig& base,
                                     std::span<const double> fractions);

std::string sweep_csv(const std::vector<SweepRow>& rows);

struct ProtocolComparison {
  EvalReport insert_report;  // first repetition under each protocol
  EvalReport remove_report;
  std::vector<double> insert_accuracies;  // mean CV accuracy per repetition
  std::vector<double> remove_accuracies;
  TTestResult accuracy_ttest;  // p_greater tests insertion > removal
};

// Builds one feature table per protocol from the same sampled pairs, then
// evaluates the model across `repetitions` derived seeds and compares
// the two protocols with a pooled t-test.
ProtocolComparison compare_protocols(const Graph& g,
                                     const ExperimentConfig& base,
                                     int repetitions);

std::string protocol_comparison_csv(const ProtocolComparison& comparison);

}  // namespace motiflp
