#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "motiflp/io.hpp"
#include "motiflp/models.hpp"

namespace motiflp {

struct FoldMetrics {
  double accuracy = 0.0;
  double auc = 0.0;
  double false_positive_rate = 0.0;
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
};

struct EvalReport {
  std::string model;
  std::uint64_t seed = 0;
  int folds = 0;
  std::size_t examples = 0;
  std::vector<std::string> feature_names;
  std::vector<FoldMetrics> fold_metrics;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double auc_mean = 0.0;
  double auc_std = 0.0;
  double fpr_mean = 0.0;
  double fpr_std = 0.0;
  // Mean impurity importances across folds; empty for models without them.
  std::vector<double> feature_importances;
  double total_seconds = 0.0;
};

// Shuffles each class with a derived stream and deals examples round-robin,
// so every fold carries the same class balance give or take one example.
std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const int> labels, int folds, std::uint64_t seed);

// K-fold evaluation. Fold assignment and per-fold model seeds both derive
// from spec.seed, so a rerun with the same spec is bit-identical.
EvalReport cross_validate(const ModelSpec& spec, const Matrix& x,
                          std::span<const int> labels,
                          std::span<const std::string> feature_names,
                          int folds);

// Optional `config` is emitted as a "config" object of string values, so a
// report names the exact invocation that produced it.
std::string eval_report_json(const EvalReport& report,
                             const KvConfig* config = nullptr);

}  // namespace motiflp
