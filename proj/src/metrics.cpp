#include "motiflp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "motiflp/errors.hpp"

namespace motiflp {

namespace {

void check_inputs(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size())
    throw UsageError("labels and scores differ in length");
  if (labels.empty()) throw UsageError("empty label vector");
  for (int y : labels)
    if (y != 1 && y != -1) throw DataError("labels must be +1 or -1");
  for (double s : scores)
    if (!std::isfinite(s)) throw NumericError("non-finite score");
}

}  // namespace

Confusion confusion_counts(std::span<const int> labels,
                           std::span<const double> scores, double threshold) {
  check_inputs(labels, scores);
  Confusion c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted_pos = scores[i] >= threshold;
    if (labels[i] == 1) {
      if (predicted_pos)
        ++c.tp;
      else
        ++c.fn;
    } else {
      if (predicted_pos)
        ++c.fp;
      else
        ++c.tn;
    }
  }
  return c;
}

double accuracy(std::span<const int> labels, std::span<const double> scores) {
  const Confusion c = confusion_counts(labels, scores);
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(labels.size());
}

double false_positive_rate(std::span<const int> labels,
                           std::span<const double> scores) {
  const Confusion c = confusion_counts(labels, scores);
  const std::size_t negatives = c.fp + c.tn;
  if (negatives == 0) throw NumericError("false positive rate needs negatives");
  return static_cast<double>(c.fp) / static_cast<double>(negatives);
}

double auc_score(std::span<const int> labels, std::span<const double> scores) {
  check_inputs(labels, scores);
  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Sum average ranks of the positives (ranks are 1-based, ties share the
  // mean rank of their run), then AUC = (R+ - n+(n+ + 1)/2) / (n+ * n-).
  double rank_sum_pos = 0.0;
  std::size_t n_pos = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // (i+1 + j)/2
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) {
        rank_sum_pos += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw NumericError("auc needs both classes present");
  const double expected_min =
      static_cast<double>(n_pos) * static_cast<double>(n_pos + 1) / 2.0;
  return (rank_sum_pos - expected_min) /
         (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace motiflp
