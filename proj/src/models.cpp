#include "motiflp/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "motiflp/errors.hpp"
#include "motiflp/parallel.hpp"
#include "motiflp/random.hpp"

namespace motiflp {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kNaiveBayes: return "nb";
    case ModelKind::kLogisticRegression: return "lr";
    case ModelKind::kDecisionTree: return "dt";
    case ModelKind::kKnn: return "knn";
    case ModelKind::kGradientBoosting: return "gb";
    case ModelKind::kRandomForest: return "rf";
  }
  throw UsageError("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "nb") return ModelKind::kNaiveBayes;
  if (name == "lr") return ModelKind::kLogisticRegression;
  if (name == "dt") return ModelKind::kDecisionTree;
  if (name == "knn") return ModelKind::kKnn;
  if (name == "gb") return ModelKind::kGradientBoosting;
  if (name == "rf") return ModelKind::kRandomForest;
  throw UsageError("unknown model '" + name +
                   "' (expected nb, lr, dt, knn, gb, or rf)");
}

double ModelSpec::hyper_or(const std::string& name, double fallback) const {
  auto it = hyper.find(name);
  return it == hyper.end() ? fallback : it->second;
}

std::vector<int> scores_to_labels(std::span<const double> scores,
                                  double threshold) {
  std::vector<int> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    out[i] = scores[i] >= threshold ? 1 : -1;
  return out;
}

namespace {

constexpr double kEps = 1e-12;

void validate_training_data(const Matrix& x, std::span<const int> labels) {
  if (x.rows != labels.size())
    throw UsageError("feature rows and labels differ in length");
  if (x.rows < 2) throw DataError("training needs at least two examples");
  if (x.cols == 0) throw DataError("training needs at least one feature");
  for (double v : x.data)
    if (!std::isfinite(v)) throw DataError("non-finite feature value");
  bool has_pos = false;
  bool has_neg = false;
  for (int y : labels) {
    if (y == 1)
      has_pos = true;
    else if (y == -1)
      has_neg = true;
    else
      throw DataError("labels must be +1 or -1");
  }
  if (!has_pos || !has_neg)
    throw DataError("training needs both classes present");
}

double stable_sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// ---------------------------------------------------------------------------
// CART tree shared by the single tree, the forest, and the boosted ensemble.

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct TreeParams {
  bool use_gini = true;          // false: squared-error splits
  int max_depth = -1;            // -1: unlimited
  std::size_t min_leaf = 1;
  std::size_t max_features = 0;  // 0: all features
};

class Tree {
 public:
  // targets are 0/1 for classification leaves or arbitrary reals for
  // regression. indices may repeat (bootstrap).
  void fit(const Matrix& x, std::span<const double> targets,
           std::vector<std::size_t> indices, const TreeParams& params,
           Rng* rng) {
    x_ = &x;
    targets_ = targets;
    params_ = params;
    rng_ = rng;
    nodes_.clear();
    raw_importance_.assign(x.cols, 0.0);
    root_size_ = static_cast<double>(indices.size());
    feature_pool_.resize(x.cols);
    std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
    build(indices.begin(), indices.end(), 0);
    x_ = nullptr;
    rng_ = nullptr;
  }

  double predict_row(const double* row) const {
    return nodes_[leaf_of(row)].value;
  }

  int leaf_of(const double* row) const {
    int node = 0;
    while (nodes_[node].feature >= 0) {
      node = row[nodes_[node].feature] < nodes_[node].threshold
                 ? nodes_[node].left
                 : nodes_[node].right;
    }
    return node;
  }

  std::vector<TreeNode>& nodes() { return nodes_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  // Weighted impurity decreases per feature, divided by the root sample count.
  const std::vector<double>& raw_importance() const { return raw_importance_; }

 private:
  using Iter = std::vector<std::size_t>::iterator;

  // Weighted impurity: sum of squared errors for regression, n * gini for
  // classification with 0/1 targets (where sum counts the positives).
  double weighted_impurity(double count, double sum, double sumsq) const {
    if (params_.use_gini) return 2.0 * sum * (count - sum) / count;
    return sumsq - sum * sum / count;
  }

  int build(Iter begin, Iter end, int depth) {
    const std::size_t n = static_cast<std::size_t>(end - begin);
    double sum = 0.0;
    double sumsq = 0.0;
    for (Iter it = begin; it != end; ++it) {
      const double t = targets_[*it];
      sum += t;
      sumsq += t * t;
    }
    const double count = static_cast<double>(n);
    const double node_imp = weighted_impurity(count, sum, sumsq);

    const int node_id = static_cast<int>(nodes_.size());
    nodes_.push_back(TreeNode{});
    nodes_[node_id].value = sum / count;

    const bool depth_ok =
        params_.max_depth < 0 || depth < params_.max_depth;
    if (!depth_ok || n < 2 * params_.min_leaf || node_imp <= kEps)
      return node_id;

    // Candidate features: either all of them, or a fresh random subset drawn
    // without replacement for this node.
    std::size_t n_features = x_->cols;
    if (params_.max_features > 0 && params_.max_features < x_->cols) {
      n_features = params_.max_features;
      for (std::size_t i = 0; i < n_features; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng_->below(x_->cols - i));
        std::swap(feature_pool_[i], feature_pool_[j]);
      }
    }

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_improvement = -1.0;
    for (std::size_t fi = 0; fi < n_features; ++fi) {
      const std::size_t f = feature_pool_[fi];
      scratch_.clear();
      for (Iter it = begin; it != end; ++it)
        scratch_.emplace_back(x_->at(*it, f), targets_[*it]);
      std::sort(scratch_.begin(), scratch_.end());
      double left_sum = 0.0;
      double left_sumsq = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = scratch_[i].second;
        left_sum += t;
        left_sumsq += t * t;
        if (scratch_[i].first == scratch_[i + 1].first) continue;
        const std::size_t n_left = i + 1;
        const std::size_t n_right = n - n_left;
        if (n_left < params_.min_leaf || n_right < params_.min_leaf) continue;
        const double children =
            weighted_impurity(static_cast<double>(n_left), left_sum,
                              left_sumsq) +
            weighted_impurity(static_cast<double>(n_right), sum - left_sum,
                              sumsq - left_sumsq);
        const double improvement = node_imp - children;
        if (improvement > best_improvement) {
          best_improvement = improvement;
          best_feature = static_cast<int>(f);
          // The midpoint of two adjacent doubles can round back onto the
          // lower one, which would send every row to the right child and
          // recurse forever. Snap to the upper value in that case; the
          // `< threshold` partition then still separates the two.
          double split =
              0.5 * scratch_[i].first + 0.5 * scratch_[i + 1].first;
          if (!(scratch_[i].first < split)) split = scratch_[i + 1].first;
          best_threshold = split;
        }
      }
    }
    if (best_feature < 0) return node_id;

    raw_importance_[static_cast<std::size_t>(best_feature)] +=
        best_improvement / root_size_;

    Iter mid = std::partition(begin, end, [&](std::size_t idx) {
      return x_->at(idx, static_cast<std::size_t>(best_feature)) <
             best_threshold;
    });
    nodes_[node_id].feature = best_feature;
    nodes_[node_id].threshold = best_threshold;
    const int left = build(begin, mid, depth + 1);
    nodes_[node_id].left = left;
    const int right = build(mid, end, depth + 1);
    nodes_[node_id].right = right;
    return node_id;
  }

  const Matrix* x_ = nullptr;
  std::span<const double> targets_;
  TreeParams params_;
  Rng* rng_ = nullptr;
  std::vector<TreeNode> nodes_;
  std::vector<double> raw_importance_;
  std::vector<std::size_t> feature_pool_;
  std::vector<std::pair<double, double>> scratch_;
  double root_size_ = 1.0;
};

std::vector<double> normalized_or_empty(std::vector<double> raw) {
  double total = 0.0;
  for (double v : raw) total += v;
  if (total <= 0.0) return std::vector<double>(raw.size(), 0.0);
  for (double& v : raw) v /= total;
  return raw;
}

std::vector<double> targets01(std::span<const int> labels) {
  std::vector<double> t(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    t[i] = labels[i] == 1 ? 1.0 : 0.0;
  return t;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

// ---------------------------------------------------------------------------

class NaiveBayesModel final : public Model {
 public:
  void fit(const Matrix& x, std::span<const int> labels) override {
    validate_training_data(x, labels);
    cols_ = x.cols;
    mean_.assign(2 * cols_, 0.0);
    var_.assign(2 * cols_, 0.0);
    std::size_t counts[2] = {0, 0};
    for (std::size_t i = 0; i < x.rows; ++i) {
      const std::size_t c = labels[i] == 1 ? 1 : 0;
      ++counts[c];
      for (std::size_t f = 0; f < cols_; ++f)
        mean_[c * cols_ + f] += x.at(i, f);
    }
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t f = 0; f < cols_; ++f)
        mean_[c * cols_ + f] /= static_cast<double>(counts[c]);
    for (std::size_t i = 0; i < x.rows; ++i) {
      const std::size_t c = labels[i] == 1 ? 1 : 0;
      for (std::size_t f = 0; f < cols_; ++f) {
        const double d = x.at(i, f) - mean_[c * cols_ + f];
        var_[c * cols_ + f] += d * d;
      }
    }
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t f = 0; f < cols_; ++f)
        var_[c * cols_ + f] = std::max(
            var_[c * cols_ + f] / static_cast<double>(counts[c]), kVarFloor);
    const double total = static_cast<double>(x.rows);
    log_prior_[0] = std::log(static_cast<double>(counts[0]) / total);
    log_prior_[1] = std::log(static_cast<double>(counts[1]) / total);
  }

  std::vector<double> predict_scores(const Matrix& x) const override {
    std::vector<double> scores(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
      double lp[2];
      for (std::size_t c = 0; c < 2; ++c) {
        double acc = log_prior_[c];
        for (std::size_t f = 0; f < cols_; ++f) {
          const double v = var_[c * cols_ + f];
          const double d = x.at(i, f) - mean_[c * cols_ + f];
          acc += -0.5 * std::log(2.0 * kPi * v) - d * d / (2.0 * v);
        }
        lp[c] = acc;
      }
      const double hi = std::max(lp[0], lp[1]);
      const double z0 = std::exp(lp[0] - hi);
      const double z1 = std::exp(lp[1] - hi);
      scores[i] = z1 / (z0 + z1);
    }
    return scores;
  }

 private:
  static constexpr double kVarFloor = 1e-9;
  static constexpr double kPi = 3.14159265358979323846;
  std::size_t cols_ = 0;
  std::vector<double> mean_;  // class-major, negatives first
  std::vector<double> var_;
  double log_prior_[2] = {0.0, 0.0};
};

class LogisticRegressionModel final : public Model {
 public:
  explicit LogisticRegressionModel(const ModelSpec& spec)
      : lr_(spec.hyper_or("lr", 0.1)),
        l2_(spec.hyper_or("l2", 1e-4)),
        iterations_(
            static_cast<int>(spec.hyper_or("iterations", 1000.0))) {}

  void fit(const Matrix& x, std::span<const int> labels) override {
    validate_training_data(x, labels);
    const std::vector<double> y = targets01(labels);
    w_.assign(x.cols, 0.0);
    b_ = 0.0;
    const double n = static_cast<double>(x.rows);
    std::vector<double> grad(x.cols);
    for (int it = 0; it < iterations_; ++it) {
      std::fill(grad.begin(), grad.end(), 0.0);
      double grad_b = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) {
        const double err = stable_sigmoid(margin(x.row(i))) - y[i];
        const double* row = x.row(i);
        for (std::size_t f = 0; f < x.cols; ++f) grad[f] += err * row[f];
        grad_b += err;
      }
      for (std::size_t f = 0; f < x.cols; ++f)
        w_[f] -= lr_ * (grad[f] / n + l2_ * w_[f]);
      b_ -= lr_ * grad_b / n;
    }
  }

  std::vector<double> predict_scores(const Matrix& x) const override {
    std::vector<double> scores(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
      scores[i] = stable_sigmoid(margin(x.row(i)));
    return scores;
  }

 private:
  double margin(const double* row) const {
    double z = b_;
    for (std::size_t f = 0; f < w_.size(); ++f) z += w_[f] * row[f];
    return z;
  }

  double lr_;
  double l2_;
  int iterations_;
  std::vector<double> w_;
  double b_ = 0.0;
};

class DecisionTreeModel final : public Model {
 public:
  explicit DecisionTreeModel(const ModelSpec& spec)
      : max_depth_(static_cast<int>(spec.hyper_or("depth", -1.0))),
        min_leaf_(static_cast<std::size_t>(spec.hyper_or("min_leaf", 1.0))) {}

  void fit(const Matrix& x, std::span<const int> labels) override {
    validate_training_data(x, labels);
    targets_ = targets01(labels);
    TreeParams params;
    params.use_gini = true;
    params.max_depth = max_depth_;
    params.min_leaf = std::max<std::size_t>(min_leaf_, 1);
    tree_.fit(x, targets_, all_indices(x.rows), params, nullptr);
    importances_ = normalized_or_empty(tree_.raw_importance());
  }

  std::vector<double> predict_scores(const Matrix& x) const override {
    std::vector<double> scores(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
      scores[i] = tree_.predict_row(x.row(i));
    return scores;
  }

  std::vector<double> feature_importances() const override {
    return importances_;
  }

 private:
  int max_depth_;
  std::size_t min_leaf_;
  std::vector<double> targets_;
  Tree tree_;
  std::vector<double> importances_;
};

class KnnModel final : public Model {
 public:
  explicit KnnModel(const ModelSpec& spec)
      : k_(static_cast<std::size_t>(spec.hyper_or("k", 5.0))) {
    if (k_ == 0) throw UsageError("knn needs k >= 1");
  }

  void fit(const Matrix& x, std::span<const int> labels) override {
    validate_training_data(x, labels);
    train_ = x;
    targets_ = targets01(labels);
  }

  std::vector<double> predict_scores(const Matrix& x) const override {
    const std::size_t k = std::min(k_, train_.rows);
    std::vector<double> scores(x.rows);
    std::vector<std::pair<double, std::size_t>> dist(train_.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
      const double* q = x.row(i);
      for (std::size_t j = 0; j < train_.rows; ++j) {
        const double* r = train_.row(j);
        double d = 0.0;
        for (std::size_t f = 0; f < train_.cols; ++f) {
          const double diff = q[f] - r[f];
          d += diff * diff;
        }
        dist[j] = {d, j};
      }
      // Tie on distance falls back to training order so results never depend
      // on sort internals.
      std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k),
                        dist.end());
      double votes = 0.0;
      for (std::size_t t = 0; t < k; ++t) votes += targets_[dist[t].second];
      scores[i] = votes / static_cast<double>(k);
    }
    return scores;
  }

 private:
  std::size_t k_;
  Matrix train_;
  std::vector<double> targets_;
};

class GradientBoostingModel final : public Model {
 public:
  explicit GradientBoostingModel(const ModelSpec& spec)
      : n_trees_(static_cast<std::size_t>(spec.hyper_or("trees", 100.0))),
        depth_(static_cast<int>(spec.hyper_or("depth", 3.0))),
        shrinkage_(spec.hyper_or("shrinkage", 0.1)) {}

  void fit(const Matrix& x, std::span<const int> labels) override {
    validate_training_data(x, labels);
    const std::vector<double> y = targets01(labels);
    const std::size_t n = x.rows;

    double p_mean = 0.0;
    for (double v : y) p_mean += v;
    p_mean /= static_cast<double>(n);
    f0_ = std::log(p_mean / (1.0 - p_mean));

    std::vector<double> margin(n, f0_);
    std::vector<double> residual(n);
    std::vector<double> raw_importance(x.cols, 0.0);
    trees_.clear();
    trees_.reserve(n_trees_);

    TreeParams params;
    params.use_gini = false;
    params.max_depth = depth_;
    params.min_leaf = 1;

    const std::vector<std::size_t> idx = all_indices(n);
    for (std::size_t t = 0; t < n_trees_; ++t) {
      std::vector<double> prob(n);
      for (std::size_t i = 0; i < n; ++i) prob[i] = stable_sigmoid(margin[i]);
      for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - prob[i];

      Tree tree;
      tree.fit(x, residual, idx, params, nullptr);

      // Newton step per leaf: sum of residuals over sum of p(1-p).
      std::vector<double> num(tree.nodes().size(), 0.0);
      std::vector<double> den(tree.nodes().size(), 0.0);
      std::vector<int> leaf(n);
      for (std::size_t i = 0; i < n; ++i) {
        leaf[i] = tree.leaf_of(x.row(i));
        num[static_cast<std::size_t>(leaf[i])] += residual[i];
        den[static_cast<std::size_t>(leaf[i])] +=
            prob[i] * (1.0 - prob[i]);
      }
      for (std::size_t node = 0; node < tree.nodes().size(); ++node) {
        if (tree.nodes()[node].feature >= 0) continue;
        tree.nodes()[node].value = num[node] / std::max(den[node], kEps);
      }
      for (std::size_t i = 0; i < n; ++i)
        margin[i] +=
            shrinkage_ * tree.nodes()[static_cast<std::size_t>(leaf[i])].value;
      for (std::size_t f = 0; f < x.cols; ++f)
        raw_importance[f] += tree.raw_importance()[f];
      trees_.push_back(std::move(tree));
    }
    importances_ = normalized_or_empty(std::move(raw_importance));
  }

  std::vector<double> predict_scores(const Matrix& x) const override {
    std::vector<double> scores(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
      double z = f0_;
      for (const Tree& tree : trees_)
        z += shrinkage_ * tree.predict_row(x.row(i));
      scores[i] = stable_sigmoid(z);
    }
    return scores;
  }

  std::vector<double> feature_importances() const override {
    return importances_;
  }

 private:
  std::size_t n_trees_;
  int depth_;
  double shrinkage_;
  double f0_ = 0.0;
  std::vector<Tree> trees_;
  std::vector<double> importances_;
};

class RandomForestModel final : public Model {
 public:
  explicit RandomForestModel(const ModelSpec& spec)
      : n_trees_(static_cast<std::size_t>(spec.hyper_or("trees", 100.0))),
        seed_(spec.seed),
        workers_(std::max(spec.workers, 1)) {}

  void fit(const Matrix& x, std::span<const int> labels) override {
    validate_training_data(x, labels);
    targets_ = targets01(labels);
    trees_.assign(n_trees_, Tree{});

    TreeParams params;
    params.use_gini = true;
    params.max_depth = -1;
    params.min_leaf = 1;
    params.max_features = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(x.cols))));

    const std::size_t n = x.rows;
    // Each tree gets its own derived stream and output slot, so fitting is
    // identical for any worker count.
    parallel_indices(0, n_trees_, workers_, [&](int, std::size_t t) {
      Rng rng(derive_seed(seed_, "tree", t));
      std::vector<std::size_t> boot(n);
      for (std::size_t i = 0; i < n; ++i)
        boot[i] = static_cast<std::size_t>(rng.below(n));
      trees_[t].fit(x, targets_, std::move(boot), params, &rng);
    });

    std::vector<double> avg(x.cols, 0.0);
    for (const Tree& tree : trees_) {
      const std::vector<double> norm =
          normalized_or_empty(tree.raw_importance());
      for (std::size_t f = 0; f < x.cols; ++f) avg[f] += norm[f];
    }
    importances_ = normalized_or_empty(std::move(avg));
  }

  std::vector<double> predict_scores(const Matrix& x) const override {
    std::vector<double> scores(x.rows, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
      double acc = 0.0;
      for (const Tree& tree : trees_) acc += tree.predict_row(x.row(i));
      scores[i] = acc / static_cast<double>(trees_.size());
    }
    return scores;
  }

  std::vector<double> feature_importances() const override {
    return importances_;
  }

 private:
  std::size_t n_trees_;
  std::uint64_t seed_;
  int workers_;
  std::vector<double> targets_;
  std::vector<Tree> trees_;
  std::vector<double> importances_;
};

}  // namespace

std::unique_ptr<Model> make_model(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::kNaiveBayes:
      return std::make_unique<NaiveBayesModel>();
    case ModelKind::kLogisticRegression:
      return std::make_unique<LogisticRegressionModel>(spec);
    case ModelKind::kDecisionTree:
      return std::make_unique<DecisionTreeModel>(spec);
    case ModelKind::kKnn:
      return std::make_unique<KnnModel>(spec);
    case ModelKind::kGradientBoosting:
      return std::make_unique<GradientBoostingModel>(spec);
    case ModelKind::kRandomForest:
      return std::make_unique<RandomForestModel>(spec);
  }
  throw UsageError("unknown model kind");
}

}  // namespace motiflp
