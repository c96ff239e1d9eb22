#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "motiflp/analysis.hpp"
#include "motiflp/catalog.hpp"
#include "motiflp/cross_validation.hpp"
#include "motiflp/dataset.hpp"
#include "motiflp/errors.hpp"
#include "motiflp/graph.hpp"
#include "motiflp/io.hpp"
#include "motiflp/pipeline.hpp"

using namespace motiflp;

namespace {

std::vector<int> parse_ks(const std::string& spec) {
  if (spec == "all") return {3, 4, 5};
  std::vector<int> ks;
  for (const std::string& tok : split_csv(spec)) {
    const long long k = parse_int(tok);
    if (k < 3 || k > 5) throw UsageError("motif size must be 3, 4, or 5");
    ks.push_back(static_cast<int>(k));
  }
  if (ks.empty()) throw UsageError("no motif sizes given");
  return ks;
}

std::vector<double> parse_fractions(const std::string& spec) {
  std::vector<double> out;
  for (const std::string& tok : split_csv(spec)) out.push_back(parse_double(tok));
  return out;
}

std::map<std::string, double> parse_hyper(const std::vector<std::string>& kvs) {
  std::map<std::string, double> hyper;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("hyperparameters take the form name=value");
    hyper[kv.substr(0, eq)] = parse_double(kv.substr(eq + 1));
  }
  return hyper;
}

std::string ks_csv(std::span<const int> ks) {
  std::string out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ks[i]);
  }
  return out;
}

std::string baselines_csv(std::span<const BaselineKind> kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) out += ",";
    out += to_string(kinds[i]);
  }
  return out.empty() ? "none" : out;
}

Graph load_graph(const std::string& path, ParseResult* full = nullptr) {
  ParseResult parsed = parse_edge_list_file(path);
  if (full) *full = parsed;
  return std::move(parsed.graph);
}

void emit(const std::string& out_path, const std::string& content,
          const std::string& what) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  write_file_atomic(out_path, content);
  std::cout << "wrote " << what << " to " << out_path << "\n";
}

std::string config_comments(const KvConfig& config) {
  std::ostringstream out;
  write_config_comments(config, out);
  return out.str();
}

// Options shared by the commands that sample datasets and extract features.
struct SamplingOptions {
  std::string protocol = "ins";
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  double fraction_d2 = 0.5;
  std::uint64_t seed = 0;
  std::string sampler = "node";
};

struct FeatureOptions {
  std::string ks = "3";
  bool no_motifs = false;
  std::string baselines = "none";
  std::string normalization = "l1k";
  int workers = 1;
  double katz_beta = 0.1;
  int katz_max_len = 4;
  double pagerank_alpha = 0.85;
  double pagerank_tol = 1e-8;
  int nmf_rank = 100;
  int nmf_iterations = 200;
  int nmf_budget = 20000;
};

struct ModelOptions {
  std::string model = "rf";
  int folds = 10;
  std::vector<std::string> hyper;
};

void add_sampling_options(CLI::App* cmd, SamplingOptions& o,
                          bool with_protocol = true) {
  if (with_protocol)
    cmd->add_option("--protocol", o.protocol,
                    "edge modification protocol: ins or rmv");
  cmd->add_option("--n-pos", o.n_pos, "positive examples (existing edges)")
      ->required();
  cmd->add_option("--n-neg", o.n_neg, "negative examples (sampled non-edges)")
      ->required();
  cmd->add_option("--frac-d2", o.fraction_d2,
                  "share of negatives at distance 2, rest at 3");
  cmd->add_option("--seed", o.seed, "master sampling seed");
  cmd->add_option("--neg-sampler", o.sampler,
                  "negative sampling strategy: node or pair");
}

void add_feature_options(CLI::App* cmd, FeatureOptions& o) {
  cmd->add_option("--k", o.ks, "motif sizes, e.g. 3,4 or all");
  cmd->add_flag("--no-motifs", o.no_motifs, "skip motif count columns");
  cmd->add_option("--baselines", o.baselines,
                  "baseline columns: none, all, or a list like cn,katz");
  cmd->add_option("--normalization", o.normalization,
                  "motif count normalization: raw, l1k, or l1g");
  cmd->add_option("--workers", o.workers, "counting threads");
  cmd->add_option("--katz-beta", o.katz_beta, "katz damping");
  cmd->add_option("--katz-max-len", o.katz_max_len, "katz walk length cap");
  cmd->add_option("--pagerank-alpha", o.pagerank_alpha,
                  "rooted pagerank restart weight");
  cmd->add_option("--pagerank-tol", o.pagerank_tol,
                  "rooted pagerank convergence tolerance");
  cmd->add_option("--nmf-rank", o.nmf_rank, "nmf factor rank");
  cmd->add_option("--nmf-iterations", o.nmf_iterations, "nmf update steps");
  cmd->add_option("--nmf-budget", o.nmf_budget,
                  "largest node count the factorization accepts");
}

void add_model_options(CLI::App* cmd, ModelOptions& o) {
  cmd->add_option("--model", o.model, "nb, lr, dt, knn, gb, or rf");
  cmd->add_option("--folds", o.folds, "cross-validation folds");
  cmd->add_option("--hyper", o.hyper,
                  "model hyperparameter overrides, name=value");
}

FeatureConfig to_feature_config(const FeatureOptions& o) {
  FeatureConfig config;
  config.ks = parse_ks(o.ks);
  config.motifs = !o.no_motifs;
  if (o.baselines != "none")
    config.baselines = parse_baseline_list(o.baselines);
  config.baseline_options.katz_beta = o.katz_beta;
  config.baseline_options.katz_max_len = o.katz_max_len;
  config.baseline_options.pagerank_alpha = o.pagerank_alpha;
  config.baseline_options.pagerank_tol = o.pagerank_tol;
  config.baseline_options.nmf.rank = o.nmf_rank;
  config.baseline_options.nmf.iterations = o.nmf_iterations;
  config.baseline_options.nmf.node_budget =
      static_cast<NodeId>(o.nmf_budget);
  config.normalization = normalization_from_string(o.normalization);
  config.workers = o.workers;
  return config;
}

PipelineConfig to_pipeline_config(const SamplingOptions& s,
                                  const FeatureOptions& f) {
  const FeatureConfig features = to_feature_config(f);
  PipelineConfig config;
  config.protocol = protocol_from_string(s.protocol);
  config.seed = s.seed;
  config.n_pos = s.n_pos;
  config.n_neg = s.n_neg;
  config.fraction_d2 = s.fraction_d2;
  config.sampler = negative_sampler_from_string(s.sampler);
  config.ks = features.ks;
  config.motifs = features.motifs;
  config.baselines = features.baselines;
  config.baseline_options = features.baseline_options;
  config.normalization = features.normalization;
  config.workers = features.workers;
  return config;
}

// One master seed per command. Every random stream downstream (sampling,
// folds, per-fold models, forest trees, nmf init) is derived from it with a
// distinct purpose string, so passing the same seed everywhere is safe and
// each stage stays replayable on its own.
ModelSpec to_model_spec(const ModelOptions& o, std::uint64_t master_seed,
                        int workers) {
  ModelSpec spec;
  spec.kind = model_kind_from_string(o.model);
  spec.seed = master_seed;
  spec.workers = workers;
  spec.hyper = parse_hyper(o.hyper);
  return spec;
}

KvConfig experiment_config_header(const std::string& graph_path,
                                  const SamplingOptions& s,
                                  const FeatureOptions& f,
                                  const ModelOptions& m) {
  KvConfig config;
  config.add("graph", graph_path);
  config.add("protocol", s.protocol);
  config.add("n_pos", s.n_pos);
  config.add("n_neg", s.n_neg);
  config.add("fraction_d2", s.fraction_d2);
  config.add("seed", s.seed);
  config.add("sampler", s.sampler);
  config.add("ks", f.ks);
  config.add("motifs", f.no_motifs ? "false" : "true");
  config.add("baselines", f.baselines);
  config.add("normalization", f.normalization);
  config.add("model", m.model);
  config.add("folds", m.folds);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "link prediction with anchored motif counts on modified graphs"};
  app.require_subcommand(1);

  // stats ------------------------------------------------------------------
  std::string stats_graph;
  unsigned stats_budget = 2000;
  auto* stats = app.add_subcommand("stats", "summarize an edge list");
  stats->add_option("--graph", stats_graph, "edge list file")->required();
  stats->add_option("--diameter-budget", stats_budget,
                    "largest node count for exact diameter");
  stats->callback([&] {
    ParseResult parsed;
    const Graph g = load_graph(stats_graph, &parsed);
    const DiameterEstimate diameter = estimate_diameter(g, stats_budget);
    std::cout << "nodes " << g.node_count() << "\n";
    std::cout << "edges " << g.edge_count() << "\n";
    std::cout << "avg_degree "
              << format_double(g.node_count() == 0
                                   ? 0.0
                                   : 2.0 * static_cast<double>(g.edge_count()) /
                                         static_cast<double>(g.node_count()))
              << "\n";
    std::cout << "diameter " << diameter.value << "\n";
    std::cout << "diameter_exact " << (diameter.exact ? "true" : "false")
              << "\n";
    std::cout << "dropped_duplicate_edges " << parsed.dropped_duplicate_edges
              << "\n";
    std::cout << "dropped_self_loops " << parsed.dropped_self_loops << "\n";
  });

  // catalog ----------------------------------------------------------------
  std::string catalog_ks = "all";
  std::string catalog_out;
  auto* catalog =
      app.add_subcommand("catalog", "list the anchored motif classes");
  catalog->add_option("--k", catalog_ks, "motif sizes, e.g. 3,4 or all");
  catalog->add_option("--out", catalog_out, "output csv (default stdout)");
  catalog->callback([&] {
    const std::vector<int> ks = parse_ks(catalog_ks);
    KvConfig config;
    config.add("ks", ks_csv(ks));
    std::ostringstream out;
    out << "# motif catalog\n" << config_comments(config);
    write_catalog_csv(ks, out);
    emit(catalog_out, out.str(), "catalog");
  });

  // dataset ----------------------------------------------------------------
  std::string dataset_graph;
  std::string dataset_out;
  SamplingOptions dataset_sampling;
  auto* dataset =
      app.add_subcommand("dataset", "sample a labeled link prediction dataset");
  dataset->add_option("--graph", dataset_graph, "edge list file")->required();
  add_sampling_options(dataset, dataset_sampling);
  dataset->add_option("--out", dataset_out, "output csv (default stdout)");
  dataset->callback([&] {
    const Graph g = load_graph(dataset_graph);
    const Dataset ds = build_dataset(
        g, protocol_from_string(dataset_sampling.protocol),
        dataset_sampling.n_pos, dataset_sampling.n_neg,
        dataset_sampling.fraction_d2, dataset_sampling.seed,
        negative_sampler_from_string(dataset_sampling.sampler));
    std::ostringstream out;
    write_dataset_csv(ds, out);
    emit(dataset_out, out.str(), "dataset");
  });

  // extract ----------------------------------------------------------------
  std::string extract_graph;
  std::string extract_dataset;
  std::string extract_out;
  std::string extract_checkpoint;
  std::size_t extract_checkpoint_every = 0;
  bool extract_progress = false;
  FeatureOptions extract_features_opt;
  auto* extract = app.add_subcommand(
      "extract", "count motifs and score baselines for a dataset");
  extract->add_option("--graph", extract_graph, "edge list file")->required();
  extract->add_option("--dataset", extract_dataset, "dataset csv")->required();
  add_feature_options(extract, extract_features_opt);
  extract->add_option("--checkpoint", extract_checkpoint,
                      "progress file for resumable counting");
  extract->add_option("--checkpoint-every", extract_checkpoint_every,
                      "pairs between checkpoint writes");
  extract->add_flag("--progress", extract_progress,
                    "print counting rate lines to stderr");
  extract->add_option("--out", extract_out, "output csv (default stdout)");
  extract->callback([&] {
    const Graph g = load_graph(extract_graph);
    const Dataset ds = read_dataset_csv_file(extract_dataset);
    FeatureConfig config = to_feature_config(extract_features_opt);
    config.checkpoint_path = extract_checkpoint;
    if (extract_checkpoint_every > 0 && extract_checkpoint.empty()) {
      if (extract_out.empty()) {
        throw UsageError(
            "--checkpoint-every needs --checkpoint or --out to name the file");
      }
      config.checkpoint_path = extract_out + ".checkpoint";
    }
    config.checkpoint_every =
        config.checkpoint_path.empty() ? 0 : std::max<std::size_t>(
            extract_checkpoint_every, 1);
    if (extract_progress) config.progress = &std::cerr;
    double count_seconds = 0.0;
    const FeatureMatrix features = extract_features(g, ds, config,
                                                    &count_seconds);
    if (config.motifs && count_seconds > 0.0) {
      const double per_hour =
          static_cast<double>(ds.examples.size()) * 3600.0 / count_seconds;
      std::cerr << "counted " << ds.examples.size() << " pairs in "
                << format_double(count_seconds) << "s ("
                << format_double(per_hour) << " pairs/hour)\n";
    }

    KvConfig extra;
    extra.add("graph", extract_graph);
    extra.add("ks", ks_csv(config.ks));
    extra.add("motifs", config.motifs ? "true" : "false");
    extra.add("baselines", baselines_csv(config.baselines));
    const FeatureTable table = make_feature_table(ds, features, extra);
    std::ostringstream out;
    write_feature_table(table, out);
    emit(extract_out, out.str(), "features");
  });

  // train ------------------------------------------------------------------
  std::string train_features;
  std::string train_out;
  std::uint64_t train_seed = 0;
  int train_workers = 1;
  ModelOptions train_model;
  auto* train =
      app.add_subcommand("train", "cross-validate a model on feature rows");
  train->add_option("--features", train_features, "feature csv from extract")
      ->required();
  add_model_options(train, train_model);
  train->add_option("--seed", train_seed, "master seed (folds, model)");
  train->add_option("--workers", train_workers, "forest fitting threads");
  train->add_option("--out", train_out, "report json (default stdout)");
  train->callback([&] {
    const FeatureTable table = read_feature_table_file(train_features);
    const Matrix x = [&] {
      FeatureMatrix fm;
      fm.column_names = table.column_names;
      fm.rows = table.rows;
      return to_dense_matrix(fm);
    }();
    const EvalReport report = cross_validate(
        to_model_spec(train_model, train_seed, train_workers), x,
        table.labels, table.column_names, train_model.folds);
    KvConfig resolved;
    resolved.add("features", train_features);
    resolved.add("model", train_model.model);
    resolved.add("folds", train_model.folds);
    resolved.add("seed", train_seed);
    if (!train_model.hyper.empty()) {
      std::string joined;
      for (const std::string& kv : train_model.hyper) {
        if (!joined.empty()) joined += ',';
        joined += kv;
      }
      resolved.add("hyper", joined);
    }
    emit(train_out, eval_report_json(report, &resolved), "report");
    std::cerr << "cross-validation took "
              << format_double(report.total_seconds) << "s\n";
    if (!train_out.empty()) {
      std::cout << report.model << " folds=" << report.folds
                << " accuracy=" << format_double(report.accuracy_mean)
                << "+/-" << format_double(report.accuracy_std)
                << " auc=" << format_double(report.auc_mean) << "+/-"
                << format_double(report.auc_std) << "\n";
    }
  });

  // analyze-dist -----------------------------------------------------------
  std::string dist_graph;
  std::string dist_graph_b;
  std::string dist_dataset;
  std::string dist_ks = "3,4";
  std::string dist_out;
  int dist_workers = 1;
  auto* dist = app.add_subcommand(
      "analyze-dist", "motif distribution drift between two graphs");
  dist->add_option("--graph", dist_graph, "edge list file")->required();
  auto* dist_b =
      dist->add_option("--graph-b", dist_graph_b, "second edge list file");
  auto* dist_ds = dist->add_option(
      "--dataset", dist_dataset,
      "dataset csv; drift is original vs its protocol-modified graph");
  dist_b->excludes(dist_ds);
  dist->add_option("--k", dist_ks, "motif sizes, e.g. 3,4 or all");
  dist->add_option("--workers", dist_workers, "counting threads");
  dist->add_option("--out", dist_out, "output csv (default stdout)");
  dist->callback([&] {
    const Graph g = load_graph(dist_graph);
    const std::vector<int> ks = parse_ks(dist_ks);
    KvConfig config;
    config.add("graph", dist_graph);
    config.add("ks", ks_csv(ks));

    DistributionReport report;
    if (!dist_dataset.empty()) {
      const Dataset ds = read_dataset_csv_file(dist_dataset);
      const Graph modified = counting_graph(g, ds);
      config.add("dataset", dist_dataset);
      config.add("protocol", to_string(ds.protocol));
      report = compare_distributions(g, modified, ks, dist_workers,
                                     "original", "modified");
    } else if (!dist_graph_b.empty()) {
      const Graph b = load_graph(dist_graph_b);
      config.add("graph_b", dist_graph_b);
      report = compare_distributions(g, b, ks, dist_workers, "first",
                                     "second");
    } else {
      throw UsageError("analyze-dist needs --dataset or --graph-b");
    }
    emit(dist_out, config_comments(config) + distribution_report_csv(report),
         "drift report");
  });

  // sweep ------------------------------------------------------------------
  std::string sweep_graph;
  std::string sweep_fractions = "0,0.25,0.5,0.75,1";
  std::string sweep_out;
  SamplingOptions sweep_sampling;
  FeatureOptions sweep_features;
  ModelOptions sweep_model;
  auto* sweep = app.add_subcommand(
      "sweep", "rerun the experiment across negative distance mixes");
  sweep->add_option("--graph", sweep_graph, "edge list file")->required();
  sweep->add_option("--fractions", sweep_fractions,
                    "comma list of distance-2 shares");
  add_sampling_options(sweep, sweep_sampling);
  add_feature_options(sweep, sweep_features);
  add_model_options(sweep, sweep_model);
  sweep->add_option("--out", sweep_out, "output csv (default stdout)");
  sweep->callback([&] {
    const Graph g = load_graph(sweep_graph);
    ExperimentConfig config;
    config.pipeline = to_pipeline_config(sweep_sampling, sweep_features);
    config.model = to_model_spec(sweep_model, sweep_sampling.seed,
                                 sweep_features.workers);
    config.folds = sweep_model.folds;
    const std::vector<double> fractions = parse_fractions(sweep_fractions);
    const std::vector<SweepRow> rows = distance_sweep(g, config, fractions);
    const KvConfig header = experiment_config_header(
        sweep_graph, sweep_sampling, sweep_features, sweep_model);
    emit(sweep_out, config_comments(header) + sweep_csv(rows), "sweep");
  });

  // compare-protocols ------------------------------------------------------
  std::string compare_graph;
  int compare_seeds = 100;
  std::string compare_out;
  SamplingOptions compare_sampling;
  FeatureOptions compare_features;
  ModelOptions compare_model;
  auto* compare = app.add_subcommand(
      "compare-protocols",
      "evaluate insertion vs removal on the same sampled pairs");
  compare->add_option("--graph", compare_graph, "edge list file")->required();
  compare->add_option("--seeds", compare_seeds,
                      "model seed repetitions per protocol");
  add_sampling_options(compare, compare_sampling, /*with_protocol=*/false);
  add_feature_options(compare, compare_features);
  add_model_options(compare, compare_model);
  compare->add_option("--out", compare_out, "output csv (default stdout)");
  compare->callback([&] {
    const Graph g = load_graph(compare_graph);
    ExperimentConfig config;
    config.pipeline = to_pipeline_config(compare_sampling, compare_features);
    config.model = to_model_spec(compare_model, compare_sampling.seed,
                                 compare_features.workers);
    config.folds = compare_model.folds;
    const ProtocolComparison comparison =
        compare_protocols(g, config, compare_seeds);
    KvConfig header = experiment_config_header(
        compare_graph, compare_sampling, compare_features, compare_model);
    header.add("repetitions", compare_seeds);
    emit(compare_out,
         config_comments(header) + protocol_comparison_csv(comparison),
         "comparison");
    std::cout << "insert_mean "
              << format_double(comparison.accuracy_ttest.mean_a) << "\n"
              << "remove_mean "
              << format_double(comparison.accuracy_ttest.mean_b) << "\n"
              << "p_insert_greater "
              << format_double(comparison.accuracy_ttest.p_greater) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
