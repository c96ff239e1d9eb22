#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "motiflp/cross_validation.hpp"
#include "motiflp/errors.hpp"
#include "motiflp/metrics.hpp"
#include "motiflp/models.hpp"
#include "motiflp/random.hpp"
#include "motiflp/stats.hpp"

using namespace motiflp;

namespace {

// Two Gaussian blobs, well separated along every axis.
struct Blobs {
  Matrix x;
  std::vector<int> y;
};

Blobs make_blobs(std::size_t per_class, std::size_t dims, double gap,
                 std::uint64_t seed) {
  Blobs b;
  b.x = Matrix(2 * per_class, dims);
  Rng rng(seed);
  auto noise = [&] { return rng.real() - 0.5; };
  for (std::size_t i = 0; i < per_class; ++i) {
    for (std::size_t f = 0; f < dims; ++f) {
      b.x.at(i, f) = noise();
      b.x.at(per_class + i, f) = gap + noise();
    }
  }
  b.y.assign(per_class, -1);
  b.y.insert(b.y.end(), per_class, 1);
  return b;
}

// Class is the XOR of the signs of the first two features: linear models sit
// at chance, trees carve it exactly.
Blobs make_xor(std::size_t n, std::uint64_t seed) {
  Blobs b;
  b.x = Matrix(n, 2);
  b.y.resize(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.real() * 2.0 - 1.0;
    const double v = rng.real() * 2.0 - 1.0;
    b.x.at(i, 0) = u;
    b.x.at(i, 1) = v;
    b.y[i] = (u > 0.0) == (v > 0.0) ? 1 : -1;
  }
  return b;
}

double train_accuracy(Model& model, const Blobs& b) {
  model.fit(b.x, b.y);
  return accuracy(b.y, model.predict_scores(b.x));
}

}  // namespace

TEST_CASE("confusion counts and accuracy at the 0.5 threshold") {
  const std::vector<int> y = {1, 1, -1, -1, 1};
  const std::vector<double> s = {0.9, 0.5, 0.5, 0.1, 0.2};
  const Confusion c = confusion_counts(y, s);
  CHECK(c.tp == 2);  // 0.5 itself predicts +1
  CHECK(c.fp == 1);
  CHECK(c.tn == 1);
  CHECK(c.fn == 1);
  CHECK(accuracy(y, s) == doctest::Approx(3.0 / 5.0));
  CHECK(false_positive_rate(y, s) == doctest::Approx(0.5));
}

TEST_CASE("auc matches the hand-counted pair statistic") {
  const std::vector<int> y = {1, 1, -1, -1};
  const std::vector<double> s = {0.8, 0.4, 0.6, 0.2};
  CHECK(std::fabs(auc_score(y, s) - 0.75) < 1e-12);

  // perfect and inverted orderings
  CHECK(auc_score(std::vector<int>{1, 1, -1}, std::vector<double>{0.9, 0.8, 0.1}) ==
        doctest::Approx(1.0));
  CHECK(auc_score(std::vector<int>{1, -1}, std::vector<double>{0.1, 0.9}) ==
        doctest::Approx(0.0));
}

TEST_CASE("auc gives ties half credit") {
  const std::vector<int> y = {1, -1};
  const std::vector<double> s = {0.5, 0.5};
  CHECK(auc_score(y, s) == doctest::Approx(0.5));

  // one tie among four comparisons: 2 wins + 0.5 out of 4... laid out by hand:
  // positives {0.7, 0.4}, negatives {0.4, 0.1}
  // pairs: .7>.4 (1), .7>.1 (1), .4=.4 (0.5), .4>.1 (1) -> 3.5/4
  const std::vector<int> y2 = {1, 1, -1, -1};
  const std::vector<double> s2 = {0.7, 0.4, 0.4, 0.1};
  CHECK(auc_score(y2, s2) == doctest::Approx(3.5 / 4.0));
}

TEST_CASE("auc on random scores sits near one half") {
  Rng rng(20260816);
  const std::size_t n = 10000;
  std::vector<int> y(n);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = rng.below(2) == 1 ? 1 : -1;
    s[i] = rng.real();
  }
  CHECK(std::fabs(auc_score(y, s) - 0.5) < 0.02);
}

TEST_CASE("metric input validation") {
  CHECK_THROWS_AS(auc_score(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2}),
                  NumericError);
  CHECK_THROWS_AS(auc_score(std::vector<int>{1}, std::vector<double>{0.1, 0.2}),
                  UsageError);
  CHECK_THROWS_AS(auc_score(std::vector<int>{2, -1}, std::vector<double>{0.1, 0.2}),
                  DataError);
  CHECK_THROWS_AS(
      false_positive_rate(std::vector<int>{1, 1}, std::vector<double>{0.9, 0.1}),
      NumericError);
}

TEST_CASE("population std and mean") {
  const std::vector<double> xs = {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  CHECK(mean_of(xs) == doctest::Approx(5.0));
  CHECK(population_std(xs) == doctest::Approx(2.0));
}

TEST_CASE("regularized incomplete beta against reference values") {
  CHECK(regularized_incomplete_beta(2.5, 0.5, 0.3) ==
        doctest::Approx(0.0189271240719457).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(5.0, 0.5, 0.9) ==
        doctest::Approx(0.316642915020012).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(0.5, 0.5, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(9.0, 0.5, 0.36) ==
        doctest::Approx(2.29288719944e-05).epsilon(1e-8));
  CHECK(regularized_incomplete_beta(3.0, 2.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(3.0, 2.0, 1.0) == 1.0);

  // complement identity across a grid
  for (double a : {0.5, 1.0, 2.5, 7.0}) {
    for (double b : {0.5, 1.5, 4.0}) {
      for (double x : {0.05, 0.3, 0.77}) {
        const double lhs = regularized_incomplete_beta(a, b, x);
        const double rhs = 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pooled t-test matches reference software") {
  const std::vector<double> a = {68.2, 67.5, 69.1, 68.8, 67.9, 68.4};
  const std::vector<double> b = {57.0, 58.2, 57.9, 56.8, 58.5, 57.3};
  const TTestResult r = students_t_test(a, b);
  CHECK(r.df == doctest::Approx(10.0));
  CHECK(r.t == doctest::Approx(29.0977724498763).epsilon(1e-10));
  CHECK(r.p_two_sided == doctest::Approx(5.35956583702327e-11).epsilon(1e-6));
  CHECK(r.p_greater == doctest::Approx(2.67978291851164e-11).epsilon(1e-6));

  const std::vector<double> a2 = {0.52, 0.49, 0.51, 0.50, 0.53};
  const std::vector<double> b2 = {0.50, 0.51, 0.49, 0.52, 0.48};
  const TTestResult r2 = students_t_test(a2, b2);
  CHECK(r2.t == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r2.p_two_sided == doctest::Approx(0.346593507087334).epsilon(1e-10));
  CHECK(r2.p_greater == doctest::Approx(0.5 * 0.346593507087334).epsilon(1e-10));
}

TEST_CASE("t-test handles identical constant groups and rejects degenerate ones") {
  const std::vector<double> same = {0.5, 0.5, 0.5};
  const TTestResult r = students_t_test(same, same);
  CHECK(r.t == 0.0);
  CHECK(r.p_two_sided == 1.0);

  // exactly representable values keep the pooled variance at exactly zero
  const std::vector<double> other = {0.75, 0.75, 0.75};
  CHECK_THROWS_AS(students_t_test(same, other), NumericError);
  CHECK_THROWS_AS(students_t_test(std::vector<double>{1.0}, same), UsageError);
}

TEST_CASE("every model separates two clean blobs") {
  const Blobs b = make_blobs(60, 3, 4.0, 71);
  for (ModelKind kind :
       {ModelKind::kNaiveBayes, ModelKind::kLogisticRegression,
        ModelKind::kDecisionTree, ModelKind::kKnn,
        ModelKind::kGradientBoosting, ModelKind::kRandomForest}) {
    ModelSpec spec;
    spec.kind = kind;
    spec.seed = 5;
    if (kind == ModelKind::kGradientBoosting ||
        kind == ModelKind::kRandomForest)
      spec.hyper["trees"] = 25;  // plenty for a toy problem
    auto model = make_model(spec);
    const double acc = train_accuracy(*model, b);
    INFO("model ", to_string(kind));
    CHECK(acc >= 0.98);
  }
}

TEST_CASE("trees crack xor while linear models stay near chance") {
  const Blobs b = make_xor(400, 99);

  ModelSpec lr;
  lr.kind = ModelKind::kLogisticRegression;
  auto linear = make_model(lr);
  const double lr_acc = train_accuracy(*linear, b);
  CHECK(lr_acc < 0.66);

  ModelSpec dt;
  dt.kind = ModelKind::kDecisionTree;
  auto tree = make_model(dt);
  const double dt_acc = train_accuracy(*tree, b);
  CHECK(dt_acc == doctest::Approx(1.0));

  ModelSpec gb;
  gb.kind = ModelKind::kGradientBoosting;
  gb.hyper["trees"] = 50;
  auto boosted = make_model(gb);
  CHECK(train_accuracy(*boosted, b) >= 0.95);
}

TEST_CASE("trees split between adjacent doubles without losing a child") {
  // The midpoint of these two values rounds back onto the lower one, so a
  // naive `< midpoint` split would leave one child empty. The tree has to
  // terminate anyway and still separate the classes.
  const double lo = 1.0;
  const double hi = std::nextafter(1.0, 2.0);
  CHECK(0.5 * lo + 0.5 * hi == lo);

  Matrix x(8, 1);
  std::vector<int> y;
  for (std::size_t i = 0; i < 8; ++i) {
    x.at(i, 0) = i < 4 ? lo : hi;
    y.push_back(i < 4 ? -1 : 1);
  }

  for (ModelKind kind :
       {ModelKind::kDecisionTree, ModelKind::kRandomForest,
        ModelKind::kGradientBoosting}) {
    ModelSpec spec;
    spec.kind = kind;
    spec.seed = 3;
    auto model = make_model(spec);
    model->fit(x, y);
    const std::vector<double> scores = model->predict_scores(x);
    INFO("model ", to_string(kind));
    for (double s : scores) CHECK(std::isfinite(s));
    CHECK(scores.front() < scores.back());
  }
}

TEST_CASE("naive bayes tolerates a constant feature") {
  Blobs b = make_blobs(30, 2, 3.0, 7);
  for (std::size_t i = 0; i < b.x.rows; ++i) b.x.at(i, 1) = 2.5;
  ModelSpec spec;
  spec.kind = ModelKind::kNaiveBayes;
  auto model = make_model(spec);
  const double acc = train_accuracy(*model, b);
  CHECK(acc >= 0.98);
  for (double s : model->predict_scores(b.x)) CHECK(std::isfinite(s));
}

TEST_CASE("training rejects degenerate inputs") {
  Matrix x(4, 2);
  const std::vector<int> one_class = {1, 1, 1, 1};
  const std::vector<int> ok = {1, 1, -1, -1};

  ModelSpec spec;
  spec.kind = ModelKind::kDecisionTree;
  CHECK_THROWS_AS(make_model(spec)->fit(x, one_class), DataError);

  Matrix bad = x;
  bad.at(2, 1) = std::nan("");
  CHECK_THROWS_AS(make_model(spec)->fit(bad, ok), DataError);

  const std::vector<int> short_labels = {1, -1};
  CHECK_THROWS_AS(make_model(spec)->fit(x, short_labels), UsageError);
}

TEST_CASE("decision tree importances concentrate on the informative feature") {
  // feature 0 fully determines the class, feature 1 is uniform noise
  const std::size_t n = 200;
  Matrix x(n, 2);
  std::vector<int> y(n);
  Rng rng(11);
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    x.at(i, 0) = pos ? 1.0 + rng.real() : -1.0 - rng.real();
    x.at(i, 1) = rng.real();
    y[i] = pos ? 1 : -1;
  }
  ModelSpec spec;
  spec.kind = ModelKind::kDecisionTree;
  auto model = make_model(spec);
  model->fit(x, y);
  const std::vector<double> imp = model->feature_importances();
  REQUIRE(imp.size() == 2);
  CHECK(imp[0] + imp[1] == doctest::Approx(1.0));
  CHECK(imp[0] > 0.99);
}

TEST_CASE("forest importances are normalized and favour signal over noise") {
  const std::size_t n = 300;
  Matrix x(n, 4);
  std::vector<int> y(n);
  Rng rng(13);
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = rng.below(2) == 1;
    x.at(i, 0) = (pos ? 2.0 : -2.0) + rng.real();
    for (std::size_t f = 1; f < 4; ++f) x.at(i, f) = rng.real();
    y[i] = pos ? 1 : -1;
  }
  // both classes are guaranteed by construction only probabilistically; pin it
  y[0] = 1;
  y[1] = -1;
  x.at(0, 0) = 2.5;
  x.at(1, 0) = -2.5;

  ModelSpec spec;
  spec.kind = ModelKind::kRandomForest;
  spec.seed = 400;
  spec.hyper["trees"] = 40;
  auto model = make_model(spec);
  model->fit(x, y);
  const std::vector<double> imp = model->feature_importances();
  REQUIRE(imp.size() == 4);
  double total = 0.0;
  for (double v : imp) total += v;
  CHECK(total == doctest::Approx(1.0));
  CHECK(imp[0] > imp[1]);
  CHECK(imp[0] > imp[2]);
  CHECK(imp[0] > imp[3]);
  CHECK(imp[0] > 0.5);
}

TEST_CASE("forest fits are identical across seeds and worker counts") {
  const Blobs b = make_blobs(50, 3, 1.0, 123);  // overlapping blobs, harder
  Matrix query(7, 3);
  Rng rng(5);
  for (double& v : query.data) v = rng.real() * 2.0;

  auto scores_with = [&](std::uint64_t seed, int workers) {
    ModelSpec spec;
    spec.kind = ModelKind::kRandomForest;
    spec.seed = seed;
    spec.workers = workers;
    spec.hyper["trees"] = 30;
    auto model = make_model(spec);
    model->fit(b.x, b.y);
    return model->predict_scores(query);
  };

  const std::vector<double> base = scores_with(42, 1);
  CHECK(scores_with(42, 2) == base);
  CHECK(scores_with(42, 8) == base);
  CHECK(scores_with(43, 1) != base);
}

TEST_CASE("knn uses the vote fraction of the nearest neighbours") {
  // 1-d layout: query at 0, three +1 at 1,2,3 and two -1 at -1,-2; with k=5
  // the score is exactly 3/5.
  Matrix x(5, 1);
  x.at(0, 0) = 1.0;
  x.at(1, 0) = 2.0;
  x.at(2, 0) = 3.0;
  x.at(3, 0) = -1.0;
  x.at(4, 0) = -2.0;
  const std::vector<int> y = {1, 1, 1, -1, -1};
  ModelSpec spec;
  spec.kind = ModelKind::kKnn;
  auto model = make_model(spec);
  model->fit(x, y);
  Matrix q(1, 1);
  q.at(0, 0) = 0.0;
  CHECK(model->predict_scores(q)[0] == doctest::Approx(0.6));

  // k=1 picks the single closest point
  ModelSpec k1 = spec;
  k1.hyper["k"] = 1;
  auto nn = make_model(k1);
  nn->fit(x, y);
  q.at(0, 0) = 0.9;
  CHECK(nn->predict_scores(q)[0] == doctest::Approx(1.0));
  q.at(0, 0) = -0.9;
  CHECK(nn->predict_scores(q)[0] == doctest::Approx(0.0));
}

TEST_CASE("scores_to_labels uses the half threshold") {
  const std::vector<double> s = {0.49, 0.5, 0.51};
  const std::vector<int> lab = scores_to_labels(s);
  CHECK(lab == std::vector<int>{-1, 1, 1});
}

TEST_CASE("stratified folds balance both classes") {
  std::vector<int> y;
  for (int i = 0; i < 73; ++i) y.push_back(1);
  for (int i = 0; i < 41; ++i) y.push_back(-1);
  const auto folds = stratified_folds(y, 10, 99);
  REQUIRE(folds.size() == 10);

  std::vector<char> seen(y.size(), 0);
  for (const auto& fold : folds) {
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (std::size_t i : fold) {
      CHECK(!seen[i]);
      seen[i] = 1;
      (y[i] == 1 ? pos : neg)++;
    }
    CHECK(pos >= 7);
    CHECK(pos <= 8);
    CHECK(neg >= 4);
    CHECK(neg <= 5);
  }
  CHECK(std::count(seen.begin(), seen.end(), 1) ==
        static_cast<long>(y.size()));

  // same seed reproduces, different seed moves examples around
  CHECK(stratified_folds(y, 10, 99) == folds);
  CHECK(stratified_folds(y, 10, 100) != folds);
  CHECK_THROWS_AS(stratified_folds(y, 1, 0), UsageError);
  CHECK_THROWS_AS(stratified_folds(y, 50, 0), DataError);
}

TEST_CASE("cross_validate reports per-fold metrics and their aggregates") {
  const Blobs b = make_blobs(40, 2, 4.0, 17);
  std::vector<std::string> names = {"f0", "f1"};
  ModelSpec spec;
  spec.kind = ModelKind::kDecisionTree;
  spec.seed = 7;
  const EvalReport report = cross_validate(spec, b.x, b.y, names, 5);

  CHECK(report.model == "dt");
  CHECK(report.folds == 5);
  CHECK(report.examples == 80);
  REQUIRE(report.fold_metrics.size() == 5);
  CHECK(report.accuracy_mean >= 0.95);
  CHECK(report.auc_mean >= 0.95);

  std::vector<double> accs;
  for (const auto& fm : report.fold_metrics) accs.push_back(fm.accuracy);
  CHECK(report.accuracy_mean == doctest::Approx(mean_of(accs)));
  CHECK(report.accuracy_std == doctest::Approx(population_std(accs)));

  REQUIRE(report.feature_importances.size() == 2);
  CHECK(report.feature_importances[0] + report.feature_importances[1] ==
        doctest::Approx(1.0));

  // non-tree models come back without importances
  ModelSpec nb;
  nb.kind = ModelKind::kNaiveBayes;
  nb.seed = 7;
  CHECK(cross_validate(nb, b.x, b.y, names, 5).feature_importances.empty());
}

TEST_CASE("cross_validate is deterministic and sensitive to its seed") {
  const Blobs b = make_blobs(30, 3, 1.2, 922);
  ModelSpec spec;
  spec.kind = ModelKind::kRandomForest;
  spec.seed = 31;
  spec.hyper["trees"] = 15;

  const EvalReport r1 = cross_validate(spec, b.x, b.y, {}, 4);
  const EvalReport r2 = cross_validate(spec, b.x, b.y, {}, 4);
  CHECK(r1.accuracy_mean == r2.accuracy_mean);
  CHECK(r1.auc_mean == r2.auc_mean);
  CHECK(r1.feature_importances == r2.feature_importances);

  spec.workers = 6;
  const EvalReport r3 = cross_validate(spec, b.x, b.y, {}, 4);
  CHECK(r3.auc_mean == r1.auc_mean);
  CHECK(r3.feature_importances == r1.feature_importances);

  // a different seed reshuffles folds and bootstraps, which shows up in the
  // averaged importances even when the AUC saturates
  spec.workers = 1;
  spec.seed = 32;
  const EvalReport r4 = cross_validate(spec, b.x, b.y, {}, 4);
  CHECK(r4.feature_importances != r1.feature_importances);
}

TEST_CASE("cross_validate on pure noise hovers near chance") {
  const std::size_t n = 400;
  Matrix x(n, 3);
  std::vector<int> y(n);
  Rng rng(2718);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < 3; ++f) x.at(i, f) = rng.real();
    y[i] = i % 2 == 0 ? 1 : -1;
  }
  ModelSpec spec;
  spec.kind = ModelKind::kNaiveBayes;
  spec.seed = 1;
  const EvalReport report = cross_validate(spec, x, y, {}, 10);
  CHECK(report.auc_mean > 0.35);
  CHECK(report.auc_mean < 0.65);
}

TEST_CASE("eval report serializes to well-formed json") {
  const Blobs b = make_blobs(20, 2, 4.0, 3);
  std::vector<std::string> names = {"alpha", "beta"};
  ModelSpec spec;
  spec.kind = ModelKind::kDecisionTree;
  spec.seed = 2;
  const EvalReport report = cross_validate(spec, b.x, b.y, names, 4);
  const std::string json = eval_report_json(report);

  CHECK(json.find("\"model\": \"dt\"") != std::string::npos);
  CHECK(json.find("\"folds\": 4") != std::string::npos);
  CHECK(json.find("\"alpha\"") != std::string::npos);
  CHECK(json.find("\"fold_metrics\": [") != std::string::npos);
  // crude balance check
  CHECK(std::count(json.begin(), json.end(), '{') ==
        std::count(json.begin(), json.end(), '}'));
  CHECK(std::count(json.begin(), json.end(), '[') ==
        std::count(json.begin(), json.end(), ']'));
}

TEST_CASE("model names round-trip") {
  for (ModelKind kind :
       {ModelKind::kNaiveBayes, ModelKind::kLogisticRegression,
        ModelKind::kDecisionTree, ModelKind::kKnn,
        ModelKind::kGradientBoosting, ModelKind::kRandomForest}) {
    CHECK(model_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(model_kind_from_string("svm"), UsageError);
}
