#pragma once

#include <span>
#include <string>
#include <vector>

#include "motiflp/engine.hpp"
#include "motiflp/graph.hpp"

namespace motiflp {

// Earth mover's distance between two discrete distributions on the same
// ordered support: the L1 distance between their CDFs.
double earth_movers_distance(std::span<const double> p,
                             std::span<const double> q);

// KL(p || q) in nats. q is smoothed by adding 1e-10 to every bin and
// renormalizing, so empty q bins stay finite; p bins at zero contribute
// nothing.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct MotifDrift {
  int k = 0;
  std::vector<std::string> class_names;
  std::vector<double> freq_a;
  std::vector<double> freq_b;
  double emd = 0.0;
  double kld = 0.0;  // KL(a || b)
};

struct DistributionReport {
  std::vector<int> ks;
  std::vector<MotifDrift> per_k;
  // Per-k values averaged with equal weight per k.
  double emd = 0.0;
  double kld = 0.0;
};

// Global motif distribution drift between two graphs over the given sizes.
// A graph with no connected k-subgraph at some requested k is an error; the
// name parameters only serve that message.
DistributionReport compare_distributions(const Graph& a, const Graph& b,
                                         std::span<const int> ks,
                                         int workers = 1,
                                         const std::string& name_a = "first",
                                         const std::string& name_b = "second");

std::string distribution_report_csv(const DistributionReport& report);

}  // namespace motiflp
