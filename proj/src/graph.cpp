#include "motiflp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace motiflp {

Graph Graph::from_edges(NodeId node_count,
                        std::vector<std::pair<NodeId, NodeId>> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != node_count)
    throw DataError("label count does not match node count");

  for (auto& [a, b] : edges) {
    if (a == b) throw DataError("self-loop in edge set");
    if (a >= node_count || b >= node_count)
      throw DataError("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw DataError("duplicate edge in edge set");

  Graph g;
  g.labels_ = std::move(labels);
  std::vector<std::size_t> deg(node_count, 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  g.offsets_.assign(node_count + 1, 0);
  for (NodeId i = 0; i < node_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adj_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    g.adj_[cursor[a]++] = b;
    g.adj_[cursor[b]++] = a;
  }
  // sorted (u,v) insertion order already leaves each list sorted for the
  // forward direction; the reverse direction needs a per-list sort
  for (NodeId i = 0; i < node_count; ++i) {
    auto* first = g.adj_.data() + g.offsets_[i];
    auto* last = g.adj_.data() + g.offsets_[i + 1];
    std::sort(first, last);
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u == v) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<NodePair> Graph::edges() const {
  std::vector<NodePair> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::string Graph::label_of(NodeId u) const {
  if (u < labels_.size()) return labels_[u];
  return std::to_string(u);
}

ParseResult parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  ParseResult res;

  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = ids.emplace(tok, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find_first_of("#%"); pos != std::string::npos)
      line.resize(pos);
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;  // blank or comment-only
    if (!(ls >> b))
      throw DataError("edge list line " + std::to_string(lineno) +
                      ": expected two tokens");
    std::string extra;
    if (ls >> extra)
      throw DataError("edge list line " + std::to_string(lineno) +
                      ": trailing token '" + extra + "'");
    NodeId x = intern(a);
    NodeId y = intern(b);
    if (x == y) {
      ++res.dropped_self_loops;
      continue;
    }
    edges.emplace_back(std::min(x, y), std::max(x, y));
  }

  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  res.dropped_duplicate_edges = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  const NodeId n = static_cast<NodeId>(labels.size());
  res.graph = Graph::from_edges(n, std::move(edges), std::move(labels));
  return res;
}

ParseResult parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open graph file: " + path);
  return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.neighbors(u))
      if (u < v) out << g.label_of(u) << ' ' << g.label_of(v) << '\n';
}

void BfsScratch::reset(NodeId n) {
  if (stamp_.size() < n) {
    stamp_.assign(n, 0);
    dist_.resize(n);
  }
}

void BfsScratch::run_from(const Graph& g, NodeId src, int cap) {
  reset(g.node_count());
  ++epoch_;
  if (epoch_ == 0) {  // stamp wraparound: clear and restart
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  queue_.clear();
  ring_offsets_.clear();
  queue_.push_back(src);
  stamp_[src] = epoch_;
  dist_[src] = 0;
  ring_offsets_.push_back(0);
  std::size_t head = 0;
  int depth = 0;
  while (head < queue_.size() && depth < cap) {
    const std::size_t level_end = queue_.size();
    ring_offsets_.push_back(level_end);
    while (head < level_end) {
      NodeId x = queue_[head++];
      for (NodeId y : g.neighbors(x)) {
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          dist_[y] = depth + 1;
          queue_.push_back(y);
        }
      }
    }
    ++depth;
  }
  ring_offsets_.push_back(queue_.size());
}

std::span<const NodeId> BfsScratch::ring(int d) const {
  const auto levels = ring_offsets_.size();
  if (d < 0 || static_cast<std::size_t>(d) + 1 >= levels) return {};
  std::size_t lo = ring_offsets_[d];
  std::size_t hi = ring_offsets_[d + 1];
  // ring_offsets_[d] marks where depth-d nodes start except for d=0
  if (d == 0) hi = 1;
  return {queue_.data() + lo, queue_.data() + hi};
}

int BfsScratch::distance(const Graph& g, NodeId u, NodeId v, int cap) {
  if (u == v) return 0;
  reset(g.node_count());
  ++epoch_;
  if (epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  queue_.clear();
  queue_.push_back(u);
  stamp_[u] = epoch_;
  dist_[u] = 0;
  std::size_t head = 0;
  while (head < queue_.size()) {
    NodeId x = queue_[head++];
    if (dist_[x] >= cap) return kUnreachable;
    for (NodeId y : g.neighbors(x)) {
      if (stamp_[y] == epoch_) continue;
      if (y == v) return dist_[x] + 1;
      stamp_[y] = epoch_;
      dist_[y] = dist_[x] + 1;
      queue_.push_back(y);
    }
  }
  return kUnreachable;
}

int shortest_path_distance(const Graph& g, NodeId u, NodeId v, int cap) {
  if (u >= g.node_count() || v >= g.node_count())
    throw DataError("distance query endpoint out of range");
  BfsScratch scratch;
  return scratch.distance(g, u, v, cap);
}

Graph with_edges_modified(const Graph& g, std::span<const NodePair> removals,
                          std::span<const NodePair> insertions) {
  std::vector<std::pair<NodeId, NodeId>> kept;
  kept.reserve(g.edge_count() + insertions.size());

  std::vector<NodePair> rm(removals.begin(), removals.end());
  std::sort(rm.begin(), rm.end());
  if (std::adjacent_find(rm.begin(), rm.end()) != rm.end())
    throw DataError("duplicate edge in removal set");
  for (const auto& e : rm)
    if (!g.has_edge(e.u, e.v))
      throw DataError("removal of absent edge (" + g.label_of(e.u) + ", " +
                      g.label_of(e.v) + ")");

  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.neighbors(u))
      if (u < v && !std::binary_search(rm.begin(), rm.end(), NodePair(u, v)))
        kept.emplace_back(u, v);

  for (const auto& e : insertions) {
    if (e.u >= g.node_count() || e.v >= g.node_count())
      throw DataError("insertion endpoint out of range");
    if (g.has_edge(e.u, e.v))
      throw DataError("insertion of present edge (" + g.label_of(e.u) + ", " +
                      g.label_of(e.v) + ")");
    kept.emplace_back(e.u, e.v);
  }
  // from_edges rejects duplicates, which also catches a pair inserted twice
  return Graph::from_edges(g.node_count(), std::move(kept), g.node_labels());
}

DiameterEstimate estimate_diameter(const Graph& g, NodeId exact_budget) {
  DiameterEstimate est;
  if (g.node_count() == 0 || g.edge_count() == 0) return est;
  BfsScratch scratch;
  auto eccentricity = [&](NodeId s, NodeId* far) {
    scratch.run_from(g, s, 1 << 30);
    int best = 0;
    NodeId arg = s;
    for (NodeId x = 0; x < g.node_count(); ++x) {
      if (scratch.visited(x) && scratch.dist(x) > best) {
        best = scratch.dist(x);
        arg = x;
      }
    }
    if (far) *far = arg;
    return best;
  };

  if (g.node_count() <= exact_budget) {
    for (NodeId s = 0; s < g.node_count(); ++s)
      est.value = std::max(est.value, eccentricity(s, nullptr));
    est.exact = true;
    return est;
  }
  // double sweep from the highest-degree node: lower bound, usually tight
  NodeId start = 0;
  for (NodeId x = 1; x < g.node_count(); ++x)
    if (g.degree(x) > g.degree(start)) start = x;
  NodeId far = start;
  eccentricity(start, &far);
  est.value = eccentricity(far, nullptr);
  est.exact = false;
  return est;
}

}  // namespace motiflp
