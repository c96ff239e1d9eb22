#include "motiflp/pipeline.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "motiflp/errors.hpp"
#include "motiflp/random.hpp"

namespace motiflp {

namespace {

std::vector<NodePair> pairs_with_label(const Dataset& dataset, int label) {
  std::vector<NodePair> out;
  for (const LabeledExample& ex : dataset.examples)
    if (ex.label == label) out.push_back(ex.pair);
  return out;
}

// Baselines read from three views of the data: the untouched graph for
// neighborhood scores, the inserted view for path scores, and the removed
// view for the factorization.
struct BaselineGraphs {
  const Graph* original = nullptr;
  Graph inserted;
  Graph removed;
  bool inserted_ready = false;
  bool removed_ready = false;

  const Graph& for_kind(BaselineKind kind, const Graph& g,
                        const Dataset& dataset) {
    switch (kind) {
      case BaselineKind::kKatz:
      case BaselineKind::kRootedPageRank:
        if (!inserted_ready) {
          inserted =
              with_edges_modified(g, {}, pairs_with_label(dataset, -1));
          inserted_ready = true;
        }
        return inserted;
      case BaselineKind::kNmf:
        if (!removed_ready) {
          removed = with_edges_modified(g, pairs_with_label(dataset, 1), {});
          removed_ready = true;
        }
        return removed;
      default:
        return g;
    }
  }
};

}  // namespace

FeatureMatrix extract_features(const Graph& g, const Dataset& dataset,
                               const FeatureConfig& config,
                               double* count_seconds) {
  if (!config.motifs && config.baselines.empty())
    throw UsageError("pipeline needs motif columns, baseline columns, or both");
  const std::vector<NodePair> pairs = dataset.pairs();

  FeatureMatrix features;
  if (config.motifs) {
    const Graph counting = counting_graph(g, dataset);
    const AnchorMode mode[1] = {anchor_mode_for(dataset.protocol)};
    BatchOptions options;
    options.workers = config.workers;
    options.checkpoint_every = config.checkpoint_every;
    options.checkpoint_path = config.checkpoint_path;
    options.progress = config.progress;
    const BatchResult batch =
        count_batch(counting, pairs, mode, config.ks, options);
    if (count_seconds) *count_seconds = batch.elapsed_seconds;
    features = assemble_features(batch.rows, config.ks, config.normalization);
  } else {
    features.normalization = config.normalization;
    features.rows.assign(pairs.size(), {});
  }

  if (!config.baselines.empty()) {
    BaselineOptions options = config.baseline_options;
    options.nmf.seed = derive_seed(dataset.seed, "nmf");
    BaselineGraphs views;
    for (BaselineKind kind : config.baselines) {
      const std::vector<double> column = baseline_column(
          views.for_kind(kind, g, dataset), kind, pairs, options);
      features.column_names.push_back(to_string(kind));
      for (std::size_t i = 0; i < pairs.size(); ++i)
        features.rows[i].push_back(column[i]);
    }
  }
  return features;
}

PipelineResult run_pipeline(const Graph& g, const PipelineConfig& config) {
  PipelineResult result;
  result.dataset =
      build_dataset(g, config.protocol, config.n_pos, config.n_neg,
                    config.fraction_d2, config.seed, config.sampler);

  FeatureConfig features;
  features.ks = config.ks;
  features.motifs = config.motifs;
  features.baselines = config.baselines;
  features.baseline_options = config.baseline_options;
  features.normalization = config.normalization;
  features.workers = config.workers;
  result.features =
      extract_features(g, result.dataset, features, &result.count_seconds);
  return result;
}

Matrix to_dense_matrix(const FeatureMatrix& features) {
  const std::size_t rows = features.rows.size();
  const std::size_t cols = features.column_names.size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (features.rows[i].size() != cols)
      throw DataError("feature row width does not match column names");
    std::copy(features.rows[i].begin(), features.rows[i].end(), m.row(i));
  }
  return m;
}

ExperimentResult run_experiment(const Graph& g,
                                const ExperimentConfig& config) {
  ExperimentResult result;
  result.pipeline = run_pipeline(g, config.pipeline);
  const Matrix x = to_dense_matrix(result.pipeline.features);
  const std::vector<int> labels = result.pipeline.dataset.labels();
  result.report = cross_validate(config.model, x, labels,
                                 result.pipeline.features.column_names,
                                 config.folds);
  return result;
}

FeatureTable make_feature_table(const Dataset& dataset,
                                const FeatureMatrix& features,
                                KvConfig extra) {
  if (features.rows.size() != dataset.examples.size())
    throw UsageError("feature rows do not match dataset examples");
  FeatureTable table;
  table.config.add("protocol", to_string(dataset.protocol));
  table.config.add("seed", dataset.seed);
  table.config.add("n_pos", dataset.positive_count());
  table.config.add("n_neg", dataset.negative_count());
  table.config.add("fraction_d2", dataset.fraction_d2);
  table.config.add("sampler", to_string(dataset.sampler));
  table.config.add("normalization", to_string(features.normalization));
  for (const auto& [key, value] : extra.items()) table.config.add(key, value);
  for (const LabeledExample& ex : dataset.examples) {
    table.pairs.push_back(ex.pair);
    table.labels.push_back(ex.label);
    table.distances.push_back(ex.distance);
  }
  table.column_names = features.column_names;
  table.rows = features.rows;
  return table;
}

void write_feature_table(const FeatureTable& table, std::ostream& out) {
  out << "# link prediction features\n";
  write_config_comments(table.config, out);
  out << "u,v,label,distance";
  for (const std::string& name : table.column_names) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out << table.pairs[i].u << "," << table.pairs[i].v << ","
        << table.labels[i] << "," << table.distances[i];
    for (double v : table.rows[i]) out << "," << format_double(v);
    out << "\n";
  }
}

FeatureTable read_feature_table(std::istream& in) {
  const CsvFile csv = read_csv(in);
  if (csv.header.size() < 5 || csv.header[0] != "u" || csv.header[1] != "v" ||
      csv.header[2] != "label" || csv.header[3] != "distance")
    throw DataError("feature table header must start with u,v,label,distance");

  FeatureTable table;
  table.config = csv.config;
  table.column_names.assign(csv.header.begin() + 4, csv.header.end());
  for (const std::vector<std::string>& row : csv.rows) {
    table.pairs.emplace_back(static_cast<NodeId>(parse_uint(row[0])),
                             static_cast<NodeId>(parse_uint(row[1])));
    const int label = parse_int(row[2]);
    if (label != 1 && label != -1)
      throw DataError("feature table labels must be +1 or -1");
    table.labels.push_back(label);
    table.distances.push_back(parse_int(row[3]));
    std::vector<double> values;
    values.reserve(row.size() - 4);
    for (std::size_t c = 4; c < row.size(); ++c)
      values.push_back(parse_double(row[c]));
    table.rows.push_back(std::move(values));
  }
  return table;
}

FeatureTable read_feature_table_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_feature_table(in);
}

std::vector<SweepRow> distance_sweep(const Graph& g,
                                     const ExperimentConfig& base,
                                     std::span<const double> fractions) {
  if (fractions.empty()) throw UsageError("sweep needs at least one fraction");
  std::vector<SweepRow> rows;
  for (double fraction : fractions) {
    if (!(fraction >= 0.0) || !(fraction <= 1.0))
      throw UsageError("fraction of distance-2 negatives must be in [0, 1]");
    ExperimentConfig config = base;
    config.pipeline.fraction_d2 = fraction;
    SweepRow row;
    row.fraction_d2 = fraction;
    row.report = run_experiment(g, config).report;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out;
  out += "# negative distance sweep\n";
  out += "fraction_d2,accuracy_mean,accuracy_std,auc_mean,auc_std,fpr_mean,"
         "fpr_std\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.fraction_d2) + "," +
           format_double(row.report.accuracy_mean) + "," +
           format_double(row.report.accuracy_std) + "," +
           format_double(row.report.auc_mean) + "," +
           format_double(row.report.auc_std) + "," +
           format_double(row.report.fpr_mean) + "," +
           format_double(row.report.fpr_std) + "\n";
  }
  return out;
}

ProtocolComparison compare_protocols(const Graph& g,
                                     const ExperimentConfig& base,
                                     int repetitions) {
  if (repetitions < 2)
    throw UsageError("protocol comparison needs at least two repetitions");

  // The heavy feature extraction runs once per protocol; the repetitions
  // reshuffle folds and model randomness only.
  ProtocolComparison comparison;
  Matrix x[2];
  std::vector<int> labels[2];
  std::vector<std::string> names[2];
  const Protocol protocols[2] = {Protocol::kInsert, Protocol::kRemove};
  for (int s = 0; s < 2; ++s) {
    PipelineConfig config = base.pipeline;
    config.protocol = protocols[s];
    PipelineResult result = run_pipeline(g, config);
    x[s] = to_dense_matrix(result.features);
    labels[s] = result.dataset.labels();
    names[s] = result.features.column_names;
  }

  for (int rep = 0; rep < repetitions; ++rep) {
    ModelSpec spec = base.model;
    spec.seed = derive_seed(base.model.seed, "protocol-rep",
                            static_cast<std::uint64_t>(rep));
    for (int s = 0; s < 2; ++s) {
      EvalReport report =
          cross_validate(spec, x[s], labels[s], names[s], base.folds);
      auto& accs = s == 0 ? comparison.insert_accuracies
                          : comparison.remove_accuracies;
      accs.push_back(report.accuracy_mean);
      if (rep == 0) {
        (s == 0 ? comparison.insert_report : comparison.remove_report) =
            std::move(report);
      }
    }
  }
  comparison.accuracy_ttest = students_t_test(comparison.insert_accuracies,
                                              comparison.remove_accuracies);
  return comparison;
}

std::string protocol_comparison_csv(const ProtocolComparison& comparison) {
  std::string out;
  out += "# protocol comparison\n";
  out += "# t=" + format_double(comparison.accuracy_ttest.t) + "\n";
  out += "# p_two_sided=" +
         format_double(comparison.accuracy_ttest.p_two_sided) + "\n";
  out += "# p_insert_greater=" +
         format_double(comparison.accuracy_ttest.p_greater) + "\n";
  out += "protocol,repetition,accuracy_mean\n";
  for (std::size_t i = 0; i < comparison.insert_accuracies.size(); ++i)
    out += "ins," + std::to_string(i) + "," +
           format_double(comparison.insert_accuracies[i]) + "\n";
  for (std::size_t i = 0; i < comparison.remove_accuracies.size(); ++i)
    out += "rmv," + std::to_string(i) + "," +
           format_double(comparison.remove_accuracies[i]) + "\n";
  return out;
}

}  // namespace motiflp
