#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "motiflp/errors.hpp"

namespace motiflp {

using NodeId = std::uint32_t;

// Unordered node pair stored with u < v.
struct NodePair {
  NodeId u;
  NodeId v;

  NodePair(NodeId a, NodeId b) : u(a), v(b) {
    if (a == b) throw DataError("node pair with identical endpoints");
    if (u > v) std::swap(u, v);
  }

  friend bool operator==(const NodePair&, const NodePair&) = default;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

// Immutable undirected simple graph in CSR form. Neighbor lists are sorted,
// which makes has_edge a binary search and keeps every traversal in the
// toolkit deterministic.
class Graph {
public:
  Graph() = default;

  // edges may be in any order; duplicates and self-loops are rejected here
  // (parse_edge_list cleans raw input before calling this).
  static Graph from_edges(NodeId node_count,
                          std::vector<std::pair<NodeId, NodeId>> edges,
                          std::vector<std::string> labels = {});

  NodeId node_count() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::size_t edge_count() const { return adj_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Edges as (u<v) pairs sorted lexicographically.
  std::vector<NodePair> edges() const;

  // Original input tokens per dense id; empty when built programmatically.
  const std::vector<std::string>& node_labels() const { return labels_; }
  std::string label_of(NodeId u) const;

  double average_degree() const {
    return node_count() == 0 ? 0.0
                             : 2.0 * static_cast<double>(edge_count()) /
                                   static_cast<double>(node_count());
  }

private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
  std::vector<std::string> labels_;
};

struct ParseResult {
  Graph graph;
  std::size_t dropped_duplicate_edges = 0;
  std::size_t dropped_self_loops = 0;
};

// Whitespace-separated "u v" lines. '#' and '%' start comments; blank lines
// are skipped. Tokens are mapped to dense ids 0..n-1 in order of first
// appearance and kept as labels.
ParseResult parse_edge_list(std::istream& in);
ParseResult parse_edge_list_file(const std::string& path);

// One "u v" line per edge (labels when present, dense ids otherwise),
// min endpoint first, sorted by (u, v).
void write_edge_list(const Graph& g, std::ostream& out);

inline constexpr int kUnreachable = -1;

// Reusable BFS workspace so repeated distance queries do not reallocate.
class BfsScratch {
public:
  void reset(NodeId n);
  // Unweighted shortest-path distance, capped: returns kUnreachable when
  // dist(u, v) > cap or the endpoints are disconnected.
  int distance(const Graph& g, NodeId u, NodeId v, int cap);
  // BFS from src up to depth cap; dist(x) valid where visited.
  void run_from(const Graph& g, NodeId src, int cap);
  bool visited(NodeId x) const { return stamp_[x] == epoch_; }
  int dist(NodeId x) const { return visited(x) ? dist_[x] : kUnreachable; }
  // Nodes at exactly depth d from the last run_from, in visit order.
  std::span<const NodeId> ring(int d) const;

private:
  std::vector<std::uint32_t> stamp_;
  std::vector<int> dist_;
  std::vector<NodeId> queue_;
  std::vector<std::size_t> ring_offsets_;
  std::uint32_t epoch_ = 0;
};

int shortest_path_distance(const Graph& g, NodeId u, NodeId v,
                           int cap = 1 << 30);

// Copy with the given edges removed and inserted, in that order. Removing an
// absent edge or inserting a present one is a DataError; labels carry over.
Graph with_edges_modified(const Graph& g, std::span<const NodePair> removals,
                          std::span<const NodePair> insertions);

// Exact diameter (largest finite eccentricity) if node_count <= exact_budget,
// otherwise a double-sweep BFS lower bound. Ignores unreachable pairs.
struct DiameterEstimate {
  int value = 0;
  bool exact = true;
};
DiameterEstimate estimate_diameter(const Graph& g, NodeId exact_budget = 2000);

}  // namespace motiflp
