#include "motiflp/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "motiflp/catalog.hpp"
#include "motiflp/errors.hpp"
#include "motiflp/io.hpp"

namespace motiflp {

namespace {

constexpr double kSmoothing = 1e-10;
constexpr double kSumTolerance = 1e-9;

void validate_distribution_pair(std::span<const double> p,
                                std::span<const double> q) {
  if (p.size() != q.size())
    throw UsageError("distributions differ in length");
  if (p.empty()) throw UsageError("empty distribution");
  double sp = 0.0;
  double sq = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw UsageError("distribution has a negative entry");
    sp += v;
  }
  for (double v : q) {
    if (!(v >= 0.0)) throw UsageError("distribution has a negative entry");
    sq += v;
  }
  if (std::fabs(sp - 1.0) > kSumTolerance ||
      std::fabs(sq - 1.0) > kSumTolerance)
    throw UsageError("distribution does not sum to 1");
}

}  // namespace

double earth_movers_distance(std::span<const double> p,
                             std::span<const double> q) {
  validate_distribution_pair(p, q);
  double cdf_gap = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cdf_gap += p[i] - q[i];
    total += std::fabs(cdf_gap);
  }
  return total;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  validate_distribution_pair(p, q);
  // identical inputs have zero divergence exactly; running the smoothed
  // formula would leak the zero-bin guard into the identity
  if (std::equal(p.begin(), p.end(), q.begin())) return 0.0;
  double q_total = 0.0;
  for (double v : q) q_total += v + kSmoothing;
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    const double qi = (q[i] + kSmoothing) / q_total;
    kl += p[i] * std::log(p[i] / qi);
  }
  // Gibbs' inequality bounds the exact value below by -(sum tolerance);
  // anything in that band is accumulated rounding around zero
  return kl < 0.0 && kl >= -2e-9 ? 0.0 : kl;
}

DistributionReport compare_distributions(const Graph& a, const Graph& b,
                                         std::span<const int> ks, int workers,
                                         const std::string& name_a,
                                         const std::string& name_b) {
  if (ks.empty()) throw UsageError("no motif sizes requested");
  std::vector<int> sizes(ks.begin(), ks.end());
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (int k : sizes)
    if (k < 3 || k > 5)
      throw UsageError("motif size must be 3, 4, or 5");

  DistributionReport report;
  report.ks = sizes;
  for (int k : sizes) {
    const GlobalDistribution da = global_motif_distribution(a, k, workers);
    if (da.zero_total)
      throw DataError("the " + name_a + " graph has no connected subgraph of " +
                      std::to_string(k) + " nodes");
    const GlobalDistribution db = global_motif_distribution(b, k, workers);
    if (db.zero_total)
      throw DataError("the " + name_b + " graph has no connected subgraph of " +
                      std::to_string(k) + " nodes");

    MotifDrift drift;
    drift.k = k;
    for (const MotifClass& mc : MotifCatalog::instance().classes(k))
      drift.class_names.push_back(mc.name);
    drift.freq_a = da.freq;
    drift.freq_b = db.freq;
    drift.emd = earth_movers_distance(da.freq, db.freq);
    drift.kld = kl_divergence(da.freq, db.freq);
    report.per_k.push_back(std::move(drift));
  }

  const double weight = 1.0 / static_cast<double>(sizes.size());
  for (const MotifDrift& drift : report.per_k) {
    report.emd += weight * drift.emd;
    report.kld += weight * drift.kld;
  }
  return report;
}

std::string distribution_report_csv(const DistributionReport& report) {
  std::string out;
  out += "# motif distribution drift\n";
  out += "# aggregate_emd=" + format_double(report.emd) + "\n";
  out += "# aggregate_kld=" + format_double(report.kld) + "\n";
  out += "k,motif,freq_a,freq_b,emd_k,kld_k\n";
  for (const MotifDrift& drift : report.per_k) {
    for (std::size_t i = 0; i < drift.class_names.size(); ++i) {
      out += std::to_string(drift.k) + "," + drift.class_names[i] + "," +
             format_double(drift.freq_a[i]) + "," +
             format_double(drift.freq_b[i]) + "," + format_double(drift.emd) +
             "," + format_double(drift.kld) + "\n";
    }
  }
  return out;
}

}  // namespace motiflp
