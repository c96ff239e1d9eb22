#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace motiflp {

// Dense row-major feature matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
  double* row(std::size_t r) { return data.data() + r * cols; }
};

enum class ModelKind {
  kNaiveBayes,
  kLogisticRegression,
  kDecisionTree,
  kKnn,
  kGradientBoosting,
  kRandomForest,
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct ModelSpec {
  ModelKind kind = ModelKind::kRandomForest;
  std::uint64_t seed = 0;
  // workers controls fitting parallelism for the forest; results do not
  // depend on it.
  int workers = 1;
  std::map<std::string, double> hyper;

  double hyper_or(const std::string& name, double fallback) const;
};

// A fitted binary classifier. Labels are +1/-1, scores in [0, 1], and a
// score >= 0.5 reads as +1.
class Model {
 public:
  virtual ~Model() = default;
  virtual void fit(const Matrix& x, std::span<const int> labels) = 0;
  virtual std::vector<double> predict_scores(const Matrix& x) const = 0;
  // Impurity-based importances summing to 1 for tree models, empty otherwise.
  virtual std::vector<double> feature_importances() const { return {}; }
};

std::unique_ptr<Model> make_model(const ModelSpec& spec);

std::vector<int> scores_to_labels(std::span<const double> scores,
                                  double threshold = 0.5);

}  // namespace motiflp
