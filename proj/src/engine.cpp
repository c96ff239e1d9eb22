#include "motiflp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>

#include "motiflp/io.hpp"
#include "motiflp/parallel.hpp"

namespace motiflp {

namespace {
constexpr int kFar = 1 << 28;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}
}  // namespace

MotifCounter::MotifCounter(const Graph& g, std::span<const int> ks) : g_(&g) {
  const auto& cat = MotifCatalog::instance();
  feature_count_ = cat.feature_count(ks);  // validates sorted unique 3..5
  ks_.assign(ks.begin(), ks.end());
  kmax_ = ks_.back();
  int off = 0;
  for (int k : ks_) {
    want_k_[k] = true;
    offset_[k] = off;
    off += cat.class_count(k);
    hist_[k].assign(std::size_t{1} << pair_count(k), 0);
  }
  stamp_.assign(g.node_count(), 0);
  ext_.reserve(256);
}

void MotifCounter::fresh_epoch() {
  ++epoch_;
  if (epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

void MotifCounter::count(NodePair anchor, AnchorMode mode,
                         std::span<std::uint64_t> out) {
  if (static_cast<int>(out.size()) != feature_count_)
    throw UsageError("output span size does not match feature count");
  if (anchor.u >= g_->node_count() || anchor.v >= g_->node_count())
    throw DataError("anchor endpoint out of range");
  const bool adjacent = g_->has_edge(anchor.u, anchor.v);
  if (mode == AnchorMode::kEdgeAnchored && !adjacent)
    throw DataError("edge-anchored pair (" + g_->label_of(anchor.u) + ", " +
                    g_->label_of(anchor.v) + ") is not an edge");
  if (mode == AnchorMode::kNodeAnchored && adjacent)
    throw DataError("node-anchored pair (" + g_->label_of(anchor.u) + ", " +
                    g_->label_of(anchor.v) + ") is an edge");

  const auto& cat = MotifCatalog::instance();
  for (int k : ks_) {
    table_[k] = &cat.table(k, mode);
    std::fill(hist_[k].begin(), hist_[k].end(), 0);
  }
  mode_ = mode;
  enumerate(anchor, mode);

  std::fill(out.begin(), out.end(), 0);
  for (int k : ks_) {
    const auto& h = hist_[k];
    const int classes = table_[k]->class_count();
    for (std::uint32_t code = 0; code < h.size(); ++code) {
      if (!h[code]) continue;
      auto row = table_[k]->row(code);
      for (int c = 0; c < classes; ++c)
        out[offset_[k] + c] += h[code] * row[c];
    }
  }
}

void MotifCounter::enumerate(NodePair anchor, AnchorMode mode) {
  fresh_epoch();
  ext_.clear();
  if (mode == AnchorMode::kEdgeAnchored) {
    // anchors sit at positions 0 and 1; code bit 0 is the anchor edge
    sub_[0] = anchor.u;
    sub_[1] = anchor.v;
    touch(anchor.u);
    touch(anchor.v);
    for (NodeId x : g_->neighbors(anchor.u))
      if (touch(x)) ext_.push_back(x);
    for (NodeId x : g_->neighbors(anchor.v))
      if (touch(x)) ext_.push_back(x);
    extend(0, ext_.size(), 2, 1u, 0, true);
  } else {
    // grow from the lower-degree endpoint; sets must eventually take in the
    // other one, pruned by its BFS distance ring
    NodeId root = anchor.u;
    NodeId tgt = anchor.v;
    if (g_->degree(tgt) < g_->degree(root)) std::swap(root, tgt);
    target_v_ = tgt;
    dist_v_.run_from(*g_, tgt, kmax_ - 1);
    const int d0 = dist_v_.dist(root);
    if (d0 == kUnreachable) return;  // cannot span both within kmax nodes
    sub_[0] = root;
    touch(root);
    for (NodeId x : g_->neighbors(root))
      if (touch(x)) ext_.push_back(x);
    extend(0, ext_.size(), 1, 0u, d0, false);
  }
}

void MotifCounter::extend(std::size_t cand_begin, std::size_t cand_end,
                          int depth, std::uint32_t code, int min_dist_v,
                          bool has_v) {
  if (depth < 1 || depth >= 5) return;  // invariant: depth < kmax_ <= 5
  const int next_depth = depth + 1;
  const int slots_after_next = kmax_ - next_depth;
  for (std::size_t i = cand_begin; i < cand_end; ++i) {
    const NodeId w = ext_[i];
    bool next_has_v = has_v;
    int next_min = min_dist_v;
    if (mode_ == AnchorMode::kNodeAnchored && !has_v) {
      if (w == target_v_) {
        next_has_v = true;
      } else {
        const int dw = dist_v_.dist(w);
        next_min = std::min(next_min, dw == kUnreachable ? kFar : dw);
      }
      // the other anchor must still fit into the remaining slots
      if (!next_has_v && next_min > slots_after_next) continue;
    }
    std::uint32_t row = 0;
    for (int j = 0; j < depth; ++j)
      if (g_->has_edge(w, sub_[j])) row |= 1u << j;
    const std::uint32_t next_code = code | (row << pair_bit(0, depth));
    if (want_k_[next_depth] &&
        (mode_ == AnchorMode::kEdgeAnchored || next_has_v))
      ++hist_[next_depth][next_code];
    if (next_depth == kmax_) continue;  // leaf level, no expansion needed
    sub_[depth] = w;
    const std::size_t save = ext_.size();
    for (NodeId x : g_->neighbors(w))
      if (touch(x)) ext_.push_back(x);
    extend(i + 1, ext_.size(), next_depth, next_code, next_min, next_has_v);
    for (std::size_t t = save; t < ext_.size(); ++t) stamp_[ext_[t]] = 0;
    ext_.resize(save);
  }
}

void MotifCounter::accumulate_global_slice(int k, NodeId root_begin,
                                           NodeId root_end,
                                           std::span<std::uint64_t> class_counts) {
  if (!want_k_[k]) throw UsageError("counter was not built for k=" + std::to_string(k));
  const auto& cat = MotifCatalog::instance();
  const auto& tbl = cat.table(k, AnchorMode::kNodeAnchored);
  if (static_cast<int>(class_counts.size()) != tbl.class_count())
    throw UsageError("class count span mismatch");
  auto& h = hist_[k];
  std::fill(h.begin(), h.end(), 0);
  root_end = std::min(root_end, g_->node_count());
  for (NodeId root = root_begin; root < root_end; ++root) {
    fresh_epoch();
    ext_.clear();
    sub_[0] = root;
    touch(root);
    for (NodeId x : g_->neighbors(root))
      if (x > root && touch(x)) ext_.push_back(x);
    extend_global(0, ext_.size(), 1, 0u, root, k);
  }
  for (std::uint32_t code = 0; code < h.size(); ++code) {
    if (!h[code]) continue;
    auto row = tbl.row(code);
    for (int c = 0; c < tbl.class_count(); ++c)
      class_counts[c] += h[code] * row[c];
  }
}

void MotifCounter::extend_global(std::size_t cand_begin, std::size_t cand_end,
                                 int depth, std::uint32_t code, NodeId root,
                                 int kfix) {
  if (depth < 1 || depth >= 5) return;  // invariant: depth < kfix <= 5
  const int next_depth = depth + 1;
  for (std::size_t i = cand_begin; i < cand_end; ++i) {
    const NodeId w = ext_[i];
    std::uint32_t row = 0;
    for (int j = 0; j < depth; ++j)
      if (g_->has_edge(w, sub_[j])) row |= 1u << j;
    const std::uint32_t next_code = code | (row << pair_bit(0, depth));
    if (next_depth == kfix) {
      ++hist_[kfix][next_code];
      continue;
    }
    sub_[depth] = w;
    const std::size_t save = ext_.size();
    for (NodeId x : g_->neighbors(w))
      if (x > root && touch(x)) ext_.push_back(x);
    extend_global(i + 1, ext_.size(), next_depth, next_code, root, kfix);
    for (std::size_t t = save; t < ext_.size(); ++t) stamp_[ext_[t]] = 0;
    ext_.resize(save);
  }
}

std::vector<std::uint64_t> count_pair_motifs(const Graph& g, NodePair anchor,
                                             int k, AnchorMode mode) {
  const int ks[1] = {k};
  MotifCounter counter(g, ks);
  std::vector<std::uint64_t> out(counter.feature_count());
  counter.count(anchor, mode, out);
  return out;
}

namespace {

std::string checkpoint_text(std::span<const NodePair> pairs,
                            std::span<const AnchorMode> modes,
                            const std::vector<std::string>& names,
                            const std::vector<std::vector<std::uint64_t>>& rows,
                            std::size_t done, double elapsed) {
  std::ostringstream out;
  out << "# motif count checkpoint\n";
  std::string header = "u,v,mode";
  for (const auto& n : names) header += "," + n;
  out << header << '\n';
  for (std::size_t i = 0; i < done; ++i) {
    out << pairs[i].u << ',' << pairs[i].v << ','
        << to_string(modes.size() == 1 ? modes[0] : modes[i]);
    for (std::uint64_t c : rows[i]) out << ',' << c;
    out << '\n';
  }
  const double rate = elapsed > 0 ? 3600.0 * static_cast<double>(done) / elapsed
                                  : 0.0;
  out << "# progress: " << done << '/' << pairs.size()
      << " elapsed_s=" << format_double(elapsed)
      << " pairs_per_hour=" << format_double(rate) << '\n';
  return out.str();
}

// Loads a checkpoint written by checkpoint_text; returns rows filled for the
// resumed prefix. A file that does not match the request is a DataError.
std::size_t load_checkpoint(const std::string& path,
                            std::span<const NodePair> pairs,
                            std::span<const AnchorMode> modes,
                            const std::vector<std::string>& names,
                            std::vector<std::vector<std::uint64_t>>& rows) {
  CsvFile file = read_csv_file(path);
  std::vector<std::string> expect = {"u", "v", "mode"};
  expect.insert(expect.end(), names.begin(), names.end());
  if (file.header != expect)
    throw DataError("checkpoint columns do not match this request: " + path);
  if (file.rows.size() > pairs.size())
    throw DataError("checkpoint has more rows than requested pairs: " + path);
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    const auto& cells = file.rows[i];
    const auto u = static_cast<NodeId>(parse_uint(cells[0]));
    const auto v = static_cast<NodeId>(parse_uint(cells[1]));
    const AnchorMode m = anchor_mode_from_string(cells[2]);
    const AnchorMode want = modes.size() == 1 ? modes[0] : modes[i];
    if (NodePair(u, v) != pairs[i] || m != want)
      throw DataError("checkpoint row " + std::to_string(i) +
                      " does not match requested pair");
    rows[i].resize(names.size());
    for (std::size_t c = 0; c < names.size(); ++c)
      rows[i][c] = parse_uint(cells[3 + c]);
  }
  return file.rows.size();
}

}  // namespace

BatchResult count_batch(const Graph& g, std::span<const NodePair> pairs,
                        std::span<const AnchorMode> modes,
                        std::span<const int> ks, const BatchOptions& options) {
  if (modes.size() != 1 && modes.size() != pairs.size())
    throw UsageError("modes must have one entry or one per pair");
  auto mode_of = [&](std::size_t i) {
    return modes.size() == 1 ? modes[0] : modes[i];
  };
  // validate up front so the first bad pair is reported by index
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const bool adjacent = g.has_edge(pairs[i].u, pairs[i].v);
    if (mode_of(i) == AnchorMode::kEdgeAnchored && !adjacent)
      throw DataError("pair " + std::to_string(i) + " (" +
                      g.label_of(pairs[i].u) + ", " + g.label_of(pairs[i].v) +
                      ") is edge-anchored but not an edge");
    if (mode_of(i) == AnchorMode::kNodeAnchored && adjacent)
      throw DataError("pair " + std::to_string(i) + " (" +
                      g.label_of(pairs[i].u) + ", " + g.label_of(pairs[i].v) +
                      ") is node-anchored but is an edge");
  }

  const auto& cat = MotifCatalog::instance();
  const auto names = cat.feature_names(ks);
  BatchResult result;
  result.rows.assign(pairs.size(), {});

  std::size_t done = 0;
  if (!options.checkpoint_path.empty() && file_exists(options.checkpoint_path)) {
    done = load_checkpoint(options.checkpoint_path, pairs, modes, names,
                           result.rows);
    result.resumed_rows = done;
    if (options.progress)
      *options.progress << "resumed " << done << '/' << pairs.size()
                        << " pairs from " << options.checkpoint_path << '\n';
  }

  const auto t0 = std::chrono::steady_clock::now();
  const int workers = std::max(1, options.workers);
  const std::size_t block =
      options.checkpoint_every > 0 ? options.checkpoint_every : pairs.size();

  while (done < pairs.size()) {
    const std::size_t block_end = std::min(pairs.size(), done + block);
    // claim indices dynamically; rows land in disjoint slots so results do
    // not depend on the number of workers
    std::atomic<std::size_t> next{done};
    run_workers(workers, [&](int) {
      MotifCounter counter(g, ks);
      std::vector<std::uint64_t> buf(counter.feature_count());
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= block_end) break;
        counter.count(pairs[i], mode_of(i), buf);
        result.rows[i].assign(buf.begin(), buf.end());
      }
    });
    done = block_end;
    const double elapsed = seconds_since(t0);
    if (!options.checkpoint_path.empty() && done < pairs.size())
      write_file_atomic(options.checkpoint_path,
                        checkpoint_text(pairs, modes, names, result.rows, done,
                                        elapsed));
    if (options.progress) {
      const std::size_t fresh = done - result.resumed_rows;
      const double rate =
          elapsed > 0 ? 3600.0 * static_cast<double>(fresh) / elapsed : 0.0;
      *options.progress << "counted " << done << '/' << pairs.size()
                        << " pairs, elapsed " << format_double(elapsed)
                        << "s, " << format_double(rate) << " pairs/h\n";
    }
  }

  result.elapsed_seconds = seconds_since(t0);
  const std::size_t fresh = pairs.size() - result.resumed_rows;
  result.pairs_per_hour =
      result.elapsed_seconds > 0
          ? 3600.0 * static_cast<double>(fresh) / result.elapsed_seconds
          : 0.0;
  if (!options.checkpoint_path.empty())
    write_file_atomic(options.checkpoint_path,
                      checkpoint_text(pairs, modes, names, result.rows,
                                      pairs.size(), result.elapsed_seconds));
  return result;
}

GlobalDistribution global_motif_distribution(const Graph& g, int k,
                                             int workers) {
  const auto& cat = MotifCatalog::instance();
  const int classes = cat.class_count(k);
  GlobalDistribution dist;
  dist.k = k;
  dist.counts.assign(classes, 0);

  workers = std::max(1, workers);
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(classes, 0));
  const int ks[1] = {k};
  // partition roots statically; integer partial sums make the result
  // independent of the partition
  run_workers(workers, [&](int w) {
    MotifCounter counter(g, ks);
    const NodeId n = g.node_count();
    const NodeId lo = static_cast<NodeId>(
        static_cast<std::uint64_t>(n) * static_cast<unsigned>(w) /
        static_cast<unsigned>(workers));
    const NodeId hi = static_cast<NodeId>(
        static_cast<std::uint64_t>(n) * (static_cast<unsigned>(w) + 1) /
        static_cast<unsigned>(workers));
    counter.accumulate_global_slice(k, lo, hi, partial[w]);
  });
  for (const auto& p : partial)
    for (int c = 0; c < classes; ++c) dist.counts[c] += p[c];

  std::uint64_t total = 0;
  for (auto c : dist.counts) total += c;
  dist.freq.assign(classes, 0.0);
  if (total == 0) {
    dist.zero_total = true;
  } else {
    for (int c = 0; c < classes; ++c)
      dist.freq[c] =
          static_cast<double>(dist.counts[c]) / static_cast<double>(total);
  }
  return dist;
}

}  // namespace motiflp
