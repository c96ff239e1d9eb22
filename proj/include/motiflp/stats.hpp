#pragma once

#include <span>

namespace motiflp {

double mean_of(std::span<const double> xs);

// Population standard deviation (divides by n, not n-1).
double population_std(std::span<const double> xs);

// I_x(a, b) evaluated with a Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

struct TTestResult {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
  // One-sided p for the alternative mean_a > mean_b.
  double p_greater = 0.5;
};

// Two-sample Student t-test with pooled variance.
TTestResult students_t_test(std::span<const double> a,
                            std::span<const double> b);

}  // namespace motiflp
