#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "motiflp/graph.hpp"

namespace motiflp {

// Classical pair scores. Neighborhood measures are evaluated on whatever
// graph is passed in; the pipeline applies the convention that cn/jaccard/
// aa/pa see the original graph, katz and rooted pagerank see the graph with
// the sampled negatives inserted, and nmf sees the graph with the positives
// removed.

double common_neighbors(const Graph& g, NodePair p);
double jaccard_coefficient(const Graph& g, NodePair p);
// sum over common neighbors w (degree > 1) of 1 / ln(deg(w))
double adamic_adar(const Graph& g, NodePair p);
double preferential_attachment(const Graph& g, NodePair p);

// Truncated Katz: sum over walk lengths l = 1..max_len of beta^l times the
// number of u-v walks of length l. Walk counts come from sparse frontier
// expansion from both endpoints, meeting in the middle.
class KatzComputer {
public:
  KatzComputer(const Graph& g, double beta = 0.1, int max_len = 4);
  double score(NodePair p);

private:
  using Frontier = std::vector<std::pair<NodeId, double>>;  // sorted by node
  void expand(const Frontier& in, Frontier& out);

  const Graph* g_;
  double beta_;
  int max_len_;
  std::vector<double> acc_;
  std::vector<NodeId> touched_;
  std::vector<Frontier> from_u_, from_v_;
};

double katz_index(const Graph& g, NodePair p, double beta = 0.1,
                  int max_len = 4);

// Random-walk-with-restart stationary distribution rooted at one node;
// dangling nodes teleport back to the root. Power iteration to an L1
// residual below tol; NumericError if it fails to converge.
class PageRankComputer {
public:
  PageRankComputer(const Graph& g, double alpha = 0.85, double tol = 1e-8,
                   int max_iterations = 1000);
  // stationary vector for this root (valid until the next call)
  const std::vector<double>& from_root(NodeId root);
  // symmetrized pair score: ppr_u(v) + ppr_v(u)
  double score(NodePair p);

private:
  const Graph* g_;
  double alpha_;
  double tol_;
  int max_iterations_;
  std::vector<double> x_, next_;
};

// One solve per unique endpoint, reused across all pairs touching it.
std::vector<double> rooted_pagerank_scores(const Graph& g,
                                           std::span<const NodePair> pairs,
                                           double alpha = 0.85,
                                           double tol = 1e-8);

struct NmfOptions {
  int rank = 100;
  int iterations = 200;
  std::uint64_t seed = 0;
  NodeId node_budget = 20000;  // factorization refused above this size
  bool track_error = false;    // per-iteration Frobenius error (dense; small
                               // graphs only)
};

class NmfModel {
public:
  NmfModel(NodeId n, int rank) : n_(n), rank_(rank) {}
  // symmetrized reconstruction of the adjacency entry
  double score(NodePair p) const;

  NodeId node_count() const { return n_; }
  int rank() const { return rank_; }
  std::vector<double> w, h;                  // W is n x r, H is r x n
  std::vector<double> reconstruction_errors;  // filled when track_error

private:
  NodeId n_;
  int rank_;
};

// Multiplicative-update factorization of the adjacency matrix. Throws
// DataError when the graph exceeds the node budget.
NmfModel nmf_factorize(const Graph& g, const NmfOptions& options = {});

enum class BaselineKind {
  kCommonNeighbors,
  kJaccard,
  kAdamicAdar,
  kPreferentialAttachment,
  kKatz,
  kRootedPageRank,
  kNmf,
};

const char* to_string(BaselineKind kind);
BaselineKind baseline_from_string(const std::string& s);
// comma list, e.g. "cn,jaccard,aa,pa,katz,rpr,nmf"; "all" expands to all
std::vector<BaselineKind> parse_baseline_list(const std::string& s);

struct BaselineOptions {
  double katz_beta = 0.1;
  int katz_max_len = 4;
  double pagerank_alpha = 0.85;
  double pagerank_tol = 1e-8;
  NmfOptions nmf;
};

// One score per pair on the given graph. For kNmf the factorization runs
// once for the whole column.
std::vector<double> baseline_column(const Graph& g, BaselineKind kind,
                                    std::span<const NodePair> pairs,
                                    const BaselineOptions& options = {});

}  // namespace motiflp
