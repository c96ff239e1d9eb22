#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "motiflp/graph.hpp"
#include "motiflp/random.hpp"

using namespace motiflp;

namespace {

Graph path_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(edges));
}

std::set<std::pair<std::string, std::string>> label_pairs(const Graph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : g.edges()) {
    auto a = g.label_of(e.u);
    auto b = g.label_of(e.v);
    if (b < a) std::swap(a, b);
    out.emplace(a, b);
  }
  return out;
}

}  // namespace

TEST_CASE("parse maps tokens to dense first-appearance ids") {
  std::istringstream in("b a\nc b\n# comment line\na c  # trailing comment\n\n");
  auto res = parse_edge_list(in);
  const Graph& g = res.graph;
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.label_of(0) == "b");
  CHECK(g.label_of(1) == "a");
  CHECK(g.label_of(2) == "c");
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(1, 2));
  CHECK(res.dropped_duplicate_edges == 0);
  CHECK(res.dropped_self_loops == 0);
}

TEST_CASE("parse drops duplicates and self-loops with counts") {
  std::istringstream in("1 2\n2 1\n1 1\n2 3\n1 2\n");
  auto res = parse_edge_list(in);
  CHECK(res.graph.edge_count() == 2);
  CHECK(res.dropped_duplicate_edges == 2);
  CHECK(res.dropped_self_loops == 1);
}

TEST_CASE("parse rejects malformed lines") {
  std::istringstream one_token("12\n");
  CHECK_THROWS_AS(parse_edge_list(one_token), DataError);
  std::istringstream three_tokens("1 2 3\n");
  CHECK_THROWS_AS(parse_edge_list(three_tokens), DataError);
}

TEST_CASE("serialization round-trips through the parser") {
  std::istringstream in("n5 n1\nn1 n3\nn3 n5\nn2 n1\nn4 n2\n");
  auto first = parse_edge_list(in);
  std::ostringstream ser1;
  write_edge_list(first.graph, ser1);

  std::istringstream back(ser1.str());
  auto second = parse_edge_list(back);
  CHECK(second.graph.node_count() == first.graph.node_count());
  CHECK(second.graph.edge_count() == first.graph.edge_count());
  CHECK(label_pairs(second.graph) == label_pairs(first.graph));

  std::ostringstream ser2;
  write_edge_list(second.graph, ser2);
  std::istringstream back2(ser2.str());
  auto third = parse_edge_list(back2);
  std::ostringstream ser3;
  write_edge_list(third.graph, ser3);
  CHECK(ser2.str() == ser3.str());  // serialized form is a fixed point
}

TEST_CASE("neighbor lists are sorted and degree-consistent") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const NodeId n = 2 + static_cast<NodeId>(rng.below(30));
    std::set<std::pair<NodeId, NodeId>> picked;
    const std::uint64_t want = rng.below(1 + n * (n - 1) / 2);
    while (picked.size() < want) {
      NodeId a = static_cast<NodeId>(rng.below(n));
      NodeId b = static_cast<NodeId>(rng.below(n));
      if (a == b) continue;
      picked.emplace(std::min(a, b), std::max(a, b));
    }
    Graph g = Graph::from_edges(
        n, std::vector<std::pair<NodeId, NodeId>>(picked.begin(), picked.end()));
    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < n; ++u) {
      auto nb = g.neighbors(u);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      degree_sum += g.degree(u);
      for (NodeId v : nb) CHECK(g.has_edge(v, u));
    }
    CHECK(degree_sum == 2 * g.edge_count());
    CHECK(g.edge_count() == picked.size());
  }
}

TEST_CASE("bfs distance matches hop counts on a path") {
  Graph g = path_graph(8);
  CHECK(shortest_path_distance(g, 0, 0) == 0);
  CHECK(shortest_path_distance(g, 0, 7) == 7);
  CHECK(shortest_path_distance(g, 2, 5) == 3);
  CHECK(shortest_path_distance(g, 0, 7, 6) == kUnreachable);
  CHECK(shortest_path_distance(g, 0, 7, 7) == 7);
}

TEST_CASE("bfs reports unreachable across components") {
  Graph g = Graph::from_edges(5, {{0, 1}, {2, 3}});
  CHECK(shortest_path_distance(g, 0, 2) == kUnreachable);
  CHECK(shortest_path_distance(g, 0, 4) == kUnreachable);
  CHECK(shortest_path_distance(g, 2, 3) == 1);
}

TEST_CASE("bfs scratch rings expose nodes at exact depth") {
  // star with a pendant: 0 is center of {1,2,3}, 3-4 pendant edge
  Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  BfsScratch scratch;
  scratch.run_from(g, 0, 3);
  auto r0 = scratch.ring(0);
  auto r1 = scratch.ring(1);
  auto r2 = scratch.ring(2);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0] == 0);
  CHECK(std::vector<NodeId>(r1.begin(), r1.end()) ==
        std::vector<NodeId>{1, 2, 3});
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == 4);
  CHECK(scratch.ring(3).empty());
}

TEST_CASE("edge modification removes then inserts") {
  Graph g = path_graph(4);
  std::vector<NodePair> rm = {NodePair(1, 2)};
  std::vector<NodePair> ins = {NodePair(0, 3), NodePair(0, 2)};
  Graph h = with_edges_modified(g, rm, ins);
  CHECK(h.edge_count() == 4);
  CHECK_FALSE(h.has_edge(1, 2));
  CHECK(h.has_edge(0, 3));
  CHECK(h.has_edge(0, 2));
  CHECK(h.has_edge(0, 1));
  // original untouched
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 3));
}

TEST_CASE("edge modification rejects bad operations") {
  Graph g = path_graph(4);
  std::vector<NodePair> absent = {NodePair(0, 3)};
  CHECK_THROWS_AS(with_edges_modified(g, absent, {}), DataError);
  std::vector<NodePair> present = {NodePair(0, 1)};
  CHECK_THROWS_AS(with_edges_modified(g, {}, present), DataError);
  std::vector<NodePair> dup = {NodePair(0, 1), NodePair(0, 1)};
  CHECK_THROWS_AS(with_edges_modified(g, dup, {}), DataError);
}

TEST_CASE("node pair normalizes order and rejects loops") {
  NodePair p(5, 2);
  CHECK(p.u == 2);
  CHECK(p.v == 5);
  CHECK_THROWS_AS(NodePair(3, 3), DataError);
}

TEST_CASE("diameter exact on small graphs, lower bound on large") {
  Graph g = path_graph(10);
  auto est = estimate_diameter(g);
  CHECK(est.exact);
  CHECK(est.value == 9);
  auto approx = estimate_diameter(g, 4);  // force double-sweep
  CHECK_FALSE(approx.exact);
  CHECK(approx.value <= 9);
  CHECK(approx.value >= 5);  // double sweep on a path finds the true value
}
