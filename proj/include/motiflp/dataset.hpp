#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "motiflp/catalog.hpp"
#include "motiflp/engine.hpp"
#include "motiflp/graph.hpp"

namespace motiflp {

// Edge-modification protocol that turns a labeled pair sample into the graph
// the counting engine runs on:
//   kInsert: negatives are inserted, all pairs counted edge-anchored.
//   kRemove: positives are removed, all pairs counted node-anchored.
enum class Protocol { kInsert, kRemove };

const char* to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);

inline AnchorMode anchor_mode_for(Protocol p) {
  return p == Protocol::kInsert ? AnchorMode::kEdgeAnchored
                                : AnchorMode::kNodeAnchored;
}

struct LabeledExample {
  NodePair pair;
  int label;     // +1 existing edge, -1 sampled non-edge
  int distance;  // shortest-path distance in the original graph
};

enum class NegativeSampler { kNodeFirst, kPairRejection };

const char* to_string(NegativeSampler s);
NegativeSampler negative_sampler_from_string(const std::string& s);

struct SamplerConfig {
  std::size_t count = 0;
  double fraction_d2 = 0.5;  // share of negatives at distance 2, rest at 3
  std::uint64_t seed = 0;
  NegativeSampler kind = NegativeSampler::kNodeFirst;
  // give up after this many failed draws per distance class (0 = default)
  std::size_t retry_budget = 0;
};

// Distinct non-adjacent pairs at exact shortest-path distance 2 or 3 in g,
// round(count * fraction_d2) of them at distance 2. Throws DataError when a
// distance class cannot be filled within the retry budget.
std::vector<LabeledExample> sample_negative_pairs(const Graph& g,
                                                  const SamplerConfig& config);

struct Dataset {
  Protocol protocol = Protocol::kInsert;
  std::uint64_t seed = 0;
  double fraction_d2 = 0.5;
  NegativeSampler sampler = NegativeSampler::kNodeFirst;
  std::vector<LabeledExample> examples;  // positives first, then negatives
  // nodes shared between positive and negative pairs, for sampling audits
  std::size_t shared_nodes = 0;

  std::size_t positive_count() const;
  std::size_t negative_count() const;
  std::vector<NodePair> pairs() const;
  std::vector<int> labels() const;
};

// Samples n_pos existing edges uniformly and n_neg distance-controlled
// non-edges from the original graph (balance is required: n_pos == n_neg).
Dataset build_dataset(const Graph& g, Protocol protocol, std::size_t n_pos,
                      std::size_t n_neg, double fraction_d2,
                      std::uint64_t seed,
                      NegativeSampler sampler = NegativeSampler::kNodeFirst);

// The graph the engine counts on: original with the dataset's negatives
// inserted (kInsert) or its positives removed (kRemove).
Graph counting_graph(const Graph& g, const Dataset& dataset);

void write_dataset_csv(const Dataset& dataset, std::ostream& out);
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv_file(const std::string& path);

enum class Normalization { kRaw, kL1PerK, kL1Global };

const char* to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

struct FeatureMatrix {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> rows;  // aligned with dataset examples
  Normalization normalization = Normalization::kRaw;
};

// Raw motif count rows (catalog order over ks) turned into model features.
// kL1PerK normalizes each k block to sum 1 independently; kL1Global
// normalizes the whole motif part; all-zero blocks stay zero.
FeatureMatrix assemble_features(const std::vector<std::vector<std::uint64_t>>& counts,
                                std::span<const int> ks,
                                Normalization normalization);

}  // namespace motiflp
