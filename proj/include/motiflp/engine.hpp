#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "motiflp/catalog.hpp"
#include "motiflp/graph.hpp"

namespace motiflp {

// Counts every anchored motif occurrence around one node pair. An occurrence
// of a k-motif is a connected edge subset spanning a set of k nodes;
// edge-anchored occurrences must contain the anchor edge (u,v), node-anchored
// occurrences must span both u and v (which are not adjacent). Counting is
// non-induced: a triangle also contains three wedge occurrences.
//
// One counter holds the enumeration scratch for a fixed graph and set of
// motif sizes; reuse it across pairs, one instance per thread.
class MotifCounter {
public:
  MotifCounter(const Graph& g, std::span<const int> ks);

  // Appends nothing; writes counts for all requested ks in catalog order into
  // out (size feature_count). Preconditions: edge-anchored pairs must be
  // edges, node-anchored pairs must not be.
  void count(NodePair anchor, AnchorMode mode, std::span<std::uint64_t> out);

  // Adds whole-graph occurrence counts (no anchors) for sets rooted at
  // root_begin..root_end-1 into class_counts; the root of a set is its
  // minimum node id, so disjoint slices cover each set exactly once.
  void accumulate_global_slice(int k, NodeId root_begin, NodeId root_end,
                               std::span<std::uint64_t> class_counts);

  int feature_count() const { return feature_count_; }
  std::span<const int> ks() const { return ks_; }

private:
  void enumerate(NodePair anchor, AnchorMode mode);
  void extend(std::size_t cand_begin, std::size_t cand_end, int depth,
              std::uint32_t code, int min_dist_v, bool has_v);
  void extend_global(std::size_t cand_begin, std::size_t cand_end, int depth,
                     std::uint32_t code, NodeId root, int kfix);
  bool touch(NodeId x) {
    if (stamp_[x] == epoch_) return false;
    stamp_[x] = epoch_;
    return true;
  }
  void fresh_epoch();

  const Graph* g_;
  std::vector<int> ks_;
  int kmax_ = 0;
  int feature_count_ = 0;
  // indexed by k (3..5); sized past kmax so gcc's unrolled-recursion bound
  // analysis stays quiet
  bool want_k_[8] = {};
  int offset_[8] = {};                       // feature offset per k
  const AnchoredTable* table_[8] = {};       // per k, mode of current run
  std::array<std::vector<std::uint64_t>, 8> hist_;  // per k: code -> hits

  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> ext_;
  std::array<NodeId, 5> sub_{};
  AnchorMode mode_ = AnchorMode::kEdgeAnchored;
  NodeId target_v_ = 0;
  BfsScratch dist_v_;
  bool dist_v_ready_ = false;
};

// One-off convenience wrapper around MotifCounter.
std::vector<std::uint64_t> count_pair_motifs(const Graph& g, NodePair anchor,
                                             int k, AnchorMode mode);

struct BatchOptions {
  int workers = 1;
  std::size_t checkpoint_every = 0;   // 0 = no checkpointing
  std::string checkpoint_path;
  std::ostream* progress = nullptr;   // per-block rate lines when set
};

struct BatchResult {
  std::vector<std::vector<std::uint64_t>> rows;  // one per pair, catalog order
  std::size_t resumed_rows = 0;
  double elapsed_seconds = 0.0;
  double pairs_per_hour = 0.0;
};

// Counts motifs for a batch of pairs. modes has one entry per pair or a
// single entry broadcast to all. Preconditions are validated up front so the
// first offending pair is reported with its index. With checkpointing on,
// progress is persisted every checkpoint_every pairs and a matching file is
// resumed instead of recounted. Results are identical for any worker count.
BatchResult count_batch(const Graph& g, std::span<const NodePair> pairs,
                        std::span<const AnchorMode> modes,
                        std::span<const int> ks, const BatchOptions& options = {});

struct GlobalDistribution {
  int k = 0;
  std::vector<std::uint64_t> counts;  // per class, catalog order
  std::vector<double> freq;           // counts normalized to sum 1
  bool zero_total = false;            // no occurrence at all; freq all zero
};

GlobalDistribution global_motif_distribution(const Graph& g, int k,
                                             int workers = 1);

}  // namespace motiflp
