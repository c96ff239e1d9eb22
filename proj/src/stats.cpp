#include "motiflp/stats.hpp"

#include <cmath>

#include "motiflp/errors.hpp"

namespace motiflp {

double mean_of(std::span<const double> xs) {
  if (xs.empty()) throw UsageError("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double population_std(std::span<const double> xs) {
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

namespace {

// Continued fraction for I_x(a, b), modified Lentz iteration.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double md = static_cast<double>(m);
    const double m2 = 2.0 * md;
    double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw UsageError("incomplete beta needs positive shape parameters");
  if (!(x >= 0.0) || !(x <= 1.0))
    throw UsageError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  // Use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) so the fraction converges fast.
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

TTestResult students_t_test(std::span<const double> a,
                            std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw UsageError("t-test needs at least two samples per group");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  TTestResult r;
  r.mean_a = mean_of(a);
  r.mean_b = mean_of(b);
  r.df = na + nb - 2.0;

  double ssa = 0.0;
  for (double x : a) ssa += (x - r.mean_a) * (x - r.mean_a);
  double ssb = 0.0;
  for (double x : b) ssb += (x - r.mean_b) * (x - r.mean_b);
  const double pooled_var = (ssa + ssb) / r.df;
  const double denom = std::sqrt(pooled_var * (1.0 / na + 1.0 / nb));

  if (denom == 0.0) {
    if (r.mean_a == r.mean_b) {
      r.t = 0.0;
      r.p_two_sided = 1.0;
      r.p_greater = 0.5;
      return r;
    }
    throw NumericError("t-test denominator is zero with unequal means");
  }

  r.t = (r.mean_a - r.mean_b) / denom;
  const double x = r.df / (r.df + r.t * r.t);
  r.p_two_sided = regularized_incomplete_beta(r.df / 2.0, 0.5, x);
  const double half = 0.5 * r.p_two_sided;
  r.p_greater = r.t > 0.0 ? half : 1.0 - half;
  return r;
}

}  // namespace motiflp
