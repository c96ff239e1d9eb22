#pragma once

#include <utility>
#include <vector>

#include "motiflp/graph.hpp"
#include "motiflp/random.hpp"

namespace testutil {

// Erdos-Renyi G(n, p) with the toolkit's portable rng, so test graphs are
// identical on every platform.
inline motiflp::Graph er_graph(motiflp::NodeId n, double p, std::uint64_t seed) {
  motiflp::Rng rng(seed);
  std::vector<std::pair<motiflp::NodeId, motiflp::NodeId>> edges;
  for (motiflp::NodeId i = 0; i < n; ++i)
    for (motiflp::NodeId j = i + 1; j < n; ++j)
      if (rng.real() < p) edges.emplace_back(i, j);
  return motiflp::Graph::from_edges(n, std::move(edges));
}

}  // namespace testutil
