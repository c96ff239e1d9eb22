#include "motiflp/cross_validation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>

#include "motiflp/errors.hpp"
#include "motiflp/io.hpp"
#include "motiflp/metrics.hpp"
#include "motiflp/random.hpp"
#include "motiflp/stats.hpp"

namespace motiflp {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

template <typename T, typename Fn>
void append_json_array(std::string& out, const std::vector<T>& xs, Fn&& fn) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    fn(out, xs[i]);
  }
  out += ']';
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const int> labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw UsageError("cross-validation needs at least 2 folds");
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1)
      pos.push_back(i);
    else if (labels[i] == -1)
      neg.push_back(i);
    else
      throw DataError("labels must be +1 or -1");
  }
  if (pos.size() < static_cast<std::size_t>(folds) ||
      neg.size() < static_cast<std::size_t>(folds))
    throw DataError("each class needs at least one example per fold");

  Rng rng(derive_seed(seed, "folds"));
  rng.shuffle(pos.begin(), pos.end());
  rng.shuffle(neg.begin(), neg.end());

  std::vector<std::vector<std::size_t>> out(
      static_cast<std::size_t>(folds));
  for (std::size_t i = 0; i < pos.size(); ++i)
    out[i % static_cast<std::size_t>(folds)].push_back(pos[i]);
  for (std::size_t i = 0; i < neg.size(); ++i)
    out[i % static_cast<std::size_t>(folds)].push_back(neg[i]);
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

EvalReport cross_validate(const ModelSpec& spec, const Matrix& x,
                          std::span<const int> labels,
                          std::span<const std::string> feature_names,
                          int folds) {
  if (x.rows != labels.size())
    throw UsageError("feature rows and labels differ in length");
  if (!feature_names.empty() && feature_names.size() != x.cols)
    throw UsageError("feature name count does not match feature columns");

  const auto t_start = std::chrono::steady_clock::now();
  const auto fold_sets = stratified_folds(labels, folds, spec.seed);

  EvalReport report;
  report.model = to_string(spec.kind);
  report.seed = spec.seed;
  report.folds = folds;
  report.examples = x.rows;
  report.feature_names.assign(feature_names.begin(), feature_names.end());

  std::vector<double> importance_sum;
  std::size_t importance_folds = 0;

  for (std::size_t f = 0; f < fold_sets.size(); ++f) {
    const std::vector<std::size_t>& test_idx = fold_sets[f];
    std::vector<char> in_test(x.rows, 0);
    for (std::size_t i : test_idx) in_test[i] = 1;

    Matrix train(x.rows - test_idx.size(), x.cols);
    std::vector<int> train_labels;
    train_labels.reserve(train.rows);
    std::size_t r = 0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      if (in_test[i]) continue;
      std::copy(x.row(i), x.row(i) + x.cols, train.row(r));
      train_labels.push_back(labels[i]);
      ++r;
    }
    Matrix test(test_idx.size(), x.cols);
    std::vector<int> test_labels;
    test_labels.reserve(test.rows);
    for (std::size_t i = 0; i < test_idx.size(); ++i) {
      std::copy(x.row(test_idx[i]), x.row(test_idx[i]) + x.cols, test.row(i));
      test_labels.push_back(labels[test_idx[i]]);
    }

    ModelSpec fold_spec = spec;
    fold_spec.seed = derive_seed(spec.seed, "fold-model", f);
    std::unique_ptr<Model> model = make_model(fold_spec);

    FoldMetrics fm;
    auto t_fit = std::chrono::steady_clock::now();
    model->fit(train, train_labels);
    fm.fit_seconds = seconds_since(t_fit);

    auto t_predict = std::chrono::steady_clock::now();
    const std::vector<double> scores = model->predict_scores(test);
    fm.predict_seconds = seconds_since(t_predict);

    fm.accuracy = accuracy(test_labels, scores);
    fm.auc = auc_score(test_labels, scores);
    fm.false_positive_rate = false_positive_rate(test_labels, scores);
    report.fold_metrics.push_back(fm);

    const std::vector<double> imp = model->feature_importances();
    if (!imp.empty()) {
      if (importance_sum.empty()) importance_sum.assign(x.cols, 0.0);
      for (std::size_t c = 0; c < x.cols; ++c) importance_sum[c] += imp[c];
      ++importance_folds;
    }
  }

  std::vector<double> accs, aucs, fprs;
  for (const FoldMetrics& fm : report.fold_metrics) {
    accs.push_back(fm.accuracy);
    aucs.push_back(fm.auc);
    fprs.push_back(fm.false_positive_rate);
  }
  report.accuracy_mean = mean_of(accs);
  report.accuracy_std = population_std(accs);
  report.auc_mean = mean_of(aucs);
  report.auc_std = population_std(aucs);
  report.fpr_mean = mean_of(fprs);
  report.fpr_std = population_std(fprs);

  if (importance_folds > 0) {
    report.feature_importances = importance_sum;
    for (double& v : report.feature_importances)
      v /= static_cast<double>(importance_folds);
  }
  report.total_seconds = seconds_since(t_start);
  return report;
}

std::string eval_report_json(const EvalReport& report,
                             const KvConfig* config) {
  std::string out;
  out += "{\n";
  if (config != nullptr) {
    out += "  \"config\": {";
    bool first = true;
    for (const auto& [key, value] : config->items()) {
      if (!first) out += ", ";
      first = false;
      append_json_string(out, key);
      out += ": ";
      append_json_string(out, value);
    }
    out += "},\n";
  }
  out += "  \"model\": ";
  append_json_string(out, report.model);
  out += ",\n  \"seed\": " + std::to_string(report.seed);
  out += ",\n  \"folds\": " + std::to_string(report.folds);
  out += ",\n  \"examples\": " + std::to_string(report.examples);
  out += ",\n  \"accuracy_mean\": " + format_double(report.accuracy_mean);
  out += ",\n  \"accuracy_std\": " + format_double(report.accuracy_std);
  out += ",\n  \"auc_mean\": " + format_double(report.auc_mean);
  out += ",\n  \"auc_std\": " + format_double(report.auc_std);
  out += ",\n  \"fpr_mean\": " + format_double(report.fpr_mean);
  out += ",\n  \"fpr_std\": " + format_double(report.fpr_std);
  // timings stay out of the artifact so identical configs rewrite identical
  // bytes
  out += ",\n  \"fold_metrics\": ";
  append_json_array(out, report.fold_metrics,
                    [](std::string& o, const FoldMetrics& fm) {
                      o += "{\"accuracy\": " + format_double(fm.accuracy);
                      o += ", \"auc\": " + format_double(fm.auc);
                      o += ", \"false_positive_rate\": " +
                           format_double(fm.false_positive_rate);
                      o += "}";
                    });
  out += ",\n  \"feature_names\": ";
  append_json_array(out, report.feature_names,
                    [](std::string& o, const std::string& s) {
                      append_json_string(o, s);
                    });
  out += ",\n  \"feature_importances\": ";
  append_json_array(out, report.feature_importances,
                    [](std::string& o, double v) { o += format_double(v); });
  out += "\n}\n";
  return out;
}

}  // namespace motiflp
