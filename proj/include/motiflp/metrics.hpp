#pragma once

#include <cstddef>
#include <span>

namespace motiflp {

// Labels are +1/-1; scores live in [0, 1] and a score >= 0.5 predicts +1.

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

Confusion confusion_counts(std::span<const int> labels,
                           std::span<const double> scores,
                           double threshold = 0.5);

double accuracy(std::span<const int> labels, std::span<const double> scores);

// fp / (fp + tn); NumericError when there are no negatives
double false_positive_rate(std::span<const int> labels,
                           std::span<const double> scores);

// Rank statistic: probability a random positive outscores a random negative,
// ties counting half. NumericError when either class is absent.
double auc_score(std::span<const int> labels, std::span<const double> scores);

}  // namespace motiflp
