#include "motiflp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "motiflp/random.hpp"

namespace motiflp {

namespace {

// sorted-list intersection size
std::size_t intersection_size(std::span<const NodeId> a,
                              std::span<const NodeId> b) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

void check_pair(const Graph& g, NodePair p) {
  if (p.v >= g.node_count()) throw DataError("pair endpoint out of range");
}

}  // namespace

double common_neighbors(const Graph& g, NodePair p) {
  check_pair(g, p);
  return static_cast<double>(
      intersection_size(g.neighbors(p.u), g.neighbors(p.v)));
}

double jaccard_coefficient(const Graph& g, NodePair p) {
  check_pair(g, p);
  const double cn =
      static_cast<double>(intersection_size(g.neighbors(p.u), g.neighbors(p.v)));
  const double uni =
      static_cast<double>(g.degree(p.u) + g.degree(p.v)) - cn;
  return uni > 0 ? cn / uni : 0.0;
}

double adamic_adar(const Graph& g, NodePair p) {
  check_pair(g, p);
  auto a = g.neighbors(p.u);
  auto b = g.neighbors(p.v);
  std::size_t i = 0, j = 0;
  double sum = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      if (g.degree(a[i]) > 1) sum += 1.0 / std::log(static_cast<double>(g.degree(a[i])));
      ++i;
      ++j;
    }
  }
  return sum;
}

double preferential_attachment(const Graph& g, NodePair p) {
  check_pair(g, p);
  return static_cast<double>(g.degree(p.u)) *
         static_cast<double>(g.degree(p.v));
}

KatzComputer::KatzComputer(const Graph& g, double beta, int max_len)
    : g_(&g), beta_(beta), max_len_(max_len) {
  if (max_len < 1) throw UsageError("katz max_len must be >= 1");
  if (beta <= 0) throw UsageError("katz beta must be positive");
  acc_.assign(g.node_count(), 0.0);
  from_u_.resize(static_cast<std::size_t>(max_len / 2) + 1);
  from_v_.resize(static_cast<std::size_t>(max_len - max_len / 2) + 1);
}

void KatzComputer::expand(const Frontier& in, Frontier& out) {
  touched_.clear();
  for (const auto& [m, c] : in) {
    for (NodeId x : g_->neighbors(m)) {
      if (acc_[x] == 0.0) touched_.push_back(x);
      acc_[x] += c;
    }
  }
  std::sort(touched_.begin(), touched_.end());
  out.clear();
  for (NodeId x : touched_) {
    if (acc_[x] != 0.0) out.emplace_back(x, acc_[x]);
    acc_[x] = 0.0;
  }
}

double KatzComputer::score(NodePair p) {
  check_pair(*g_, p);
  from_u_[0] = {{p.u, 1.0}};
  for (std::size_t l = 1; l < from_u_.size(); ++l)
    expand(from_u_[l - 1], from_u_[l]);
  from_v_[0] = {{p.v, 1.0}};
  for (std::size_t l = 1; l < from_v_.size(); ++l)
    expand(from_v_[l - 1], from_v_[l]);

  double total = 0;
  double scale = 1.0;
  for (int l = 1; l <= max_len_; ++l) {
    scale *= beta_;
    const auto& a = from_u_[static_cast<std::size_t>(l / 2)];
    const auto& b = from_v_[static_cast<std::size_t>(l - l / 2)];
    // walks of length l = sum over meeting node of (walks from u of length
    // l/2) * (walks from v of the rest); works because walks are reversible
    std::size_t i = 0, j = 0;
    double walks = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first) {
        ++i;
      } else if (a[i].first > b[j].first) {
        ++j;
      } else {
        walks += a[i].second * b[j].second;
        ++i;
        ++j;
      }
    }
    total += scale * walks;
  }
  return total;
}

double katz_index(const Graph& g, NodePair p, double beta, int max_len) {
  KatzComputer katz(g, beta, max_len);
  return katz.score(p);
}

PageRankComputer::PageRankComputer(const Graph& g, double alpha, double tol,
                                   int max_iterations)
    : g_(&g), alpha_(alpha), tol_(tol), max_iterations_(max_iterations) {
  if (alpha <= 0 || alpha >= 1) throw UsageError("pagerank alpha must be in (0, 1)");
  if (tol <= 0) throw UsageError("pagerank tolerance must be positive");
  x_.assign(g.node_count(), 0.0);
  next_.assign(g.node_count(), 0.0);
}

const std::vector<double>& PageRankComputer::from_root(NodeId root) {
  if (root >= g_->node_count()) throw DataError("pagerank root out of range");
  const NodeId n = g_->node_count();
  std::fill(x_.begin(), x_.end(), 0.0);
  x_[root] = 1.0;
  for (int iter = 0; iter < max_iterations_; ++iter) {
    std::fill(next_.begin(), next_.end(), 0.0);
    double dangling = 0;
    for (NodeId j = 0; j < n; ++j) {
      if (x_[j] == 0.0) continue;
      const auto deg = g_->degree(j);
      if (deg == 0) {
        dangling += x_[j];
        continue;
      }
      const double share = alpha_ * x_[j] / static_cast<double>(deg);
      for (NodeId i : g_->neighbors(j)) next_[i] += share;
    }
    next_[root] += (1.0 - alpha_) + alpha_ * dangling;
    double diff = 0;
    for (NodeId i = 0; i < n; ++i) diff += std::abs(next_[i] - x_[i]);
    std::swap(x_, next_);
    if (diff <= tol_) return x_;
  }
  throw NumericError("rooted pagerank did not converge within " +
                     std::to_string(max_iterations_) + " iterations");
}

double PageRankComputer::score(NodePair p) {
  const double uv = from_root(p.u)[p.v];
  const double vu = from_root(p.v)[p.u];
  return uv + vu;
}

std::vector<double> rooted_pagerank_scores(const Graph& g,
                                           std::span<const NodePair> pairs,
                                           double alpha, double tol) {
  std::vector<NodeId> endpoints;
  endpoints.reserve(pairs.size() * 2);
  for (const auto& p : pairs) {
    endpoints.push_back(p.u);
    endpoints.push_back(p.v);
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()),
                  endpoints.end());

  PageRankComputer pr(g, alpha, tol);
  std::vector<double> scores(pairs.size(), 0.0);
  for (NodeId root : endpoints) {
    const auto& x = pr.from_root(root);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].u == root) scores[i] += x[pairs[i].v];
      if (pairs[i].v == root) scores[i] += x[pairs[i].u];
    }
  }
  return scores;
}

double NmfModel::score(NodePair p) const {
  const double* wu = w.data() + static_cast<std::size_t>(p.u) * rank_;
  const double* wv = w.data() + static_cast<std::size_t>(p.v) * rank_;
  double uv = 0, vu = 0;
  for (int f = 0; f < rank_; ++f) {
    uv += wu[f] * h[static_cast<std::size_t>(f) * n_ + p.v];
    vu += wv[f] * h[static_cast<std::size_t>(f) * n_ + p.u];
  }
  return 0.5 * (uv + vu);
}

NmfModel nmf_factorize(const Graph& g, const NmfOptions& options) {
  const NodeId n = g.node_count();
  if (n > options.node_budget)
    throw DataError("graph has " + std::to_string(n) +
                    " nodes, above the factorization budget of " +
                    std::to_string(options.node_budget));
  if (options.rank < 1) throw UsageError("nmf rank must be >= 1");
  const int r = options.rank;
  NmfModel model(n, r);
  model.w.assign(static_cast<std::size_t>(n) * r, 0.0);
  model.h.assign(static_cast<std::size_t>(r) * n, 0.0);

  // scale random init so W*H starts near the adjacency density
  const double mean =
      n > 0 ? 2.0 * static_cast<double>(g.edge_count()) /
                  (static_cast<double>(n) * static_cast<double>(n))
            : 0.0;
  const double scale = std::sqrt(std::max(mean, 1e-12) / r);
  Rng rng(options.seed);
  for (auto& x : model.w) x = scale * (rng.real() + 1e-6);
  for (auto& x : model.h) x = scale * (rng.real() + 1e-6);

  constexpr double kEps = 1e-12;
  std::vector<double> wta(static_cast<std::size_t>(r) * n);   // W^T A
  std::vector<double> gram(static_cast<std::size_t>(r) * r);  // W^T W or H H^T
  std::vector<double> denom(static_cast<std::size_t>(r) * n);
  std::vector<double> aht(static_cast<std::size_t>(n) * r);   // A H^T

  auto frobenius_error = [&]() {
    // dense pass; only used on small graphs when track_error is set
    double err = 0;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        double pred = 0;
        for (int f = 0; f < r; ++f)
          pred += model.w[static_cast<std::size_t>(i) * r + f] *
                  model.h[static_cast<std::size_t>(f) * n + j];
        const double a = (i != j && g.has_edge(i, j)) ? 1.0 : 0.0;
        err += (a - pred) * (a - pred);
      }
    }
    return err;
  };

  for (int iter = 0; iter < options.iterations; ++iter) {
    // H update: H <- H * (W^T A) / (W^T W H)
    std::fill(wta.begin(), wta.end(), 0.0);
    for (NodeId j = 0; j < n; ++j)
      for (NodeId i : g.neighbors(j))
        for (int f = 0; f < r; ++f)
          wta[static_cast<std::size_t>(f) * n + j] +=
              model.w[static_cast<std::size_t>(i) * r + f];
    std::fill(gram.begin(), gram.end(), 0.0);
    for (NodeId i = 0; i < n; ++i) {
      const double* wi = model.w.data() + static_cast<std::size_t>(i) * r;
      for (int f = 0; f < r; ++f)
        for (int gg = 0; gg < r; ++gg)
          gram[static_cast<std::size_t>(f) * r + gg] += wi[f] * wi[gg];
    }
    std::fill(denom.begin(), denom.end(), 0.0);
    for (int f = 0; f < r; ++f)
      for (int gg = 0; gg < r; ++gg) {
        const double gfg = gram[static_cast<std::size_t>(f) * r + gg];
        if (gfg == 0.0) continue;
        const double* hg = model.h.data() + static_cast<std::size_t>(gg) * n;
        double* df = denom.data() + static_cast<std::size_t>(f) * n;
        for (NodeId j = 0; j < n; ++j) df[j] += gfg * hg[j];
      }
    for (std::size_t idx = 0; idx < model.h.size(); ++idx)
      model.h[idx] *= wta[idx] / (denom[idx] + kEps);

    // W update: W <- W * (A H^T) / (W H H^T)
    std::fill(aht.begin(), aht.end(), 0.0);
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j : g.neighbors(i))
        for (int f = 0; f < r; ++f)
          aht[static_cast<std::size_t>(i) * r + f] +=
              model.h[static_cast<std::size_t>(f) * n + j];
    std::fill(gram.begin(), gram.end(), 0.0);  // now H H^T
    for (NodeId j = 0; j < n; ++j)
      for (int f = 0; f < r; ++f) {
        const double hf = model.h[static_cast<std::size_t>(f) * n + j];
        if (hf == 0.0) continue;
        for (int gg = 0; gg < r; ++gg)
          gram[static_cast<std::size_t>(f) * r + gg] +=
              hf * model.h[static_cast<std::size_t>(gg) * n + j];
      }
    for (NodeId i = 0; i < n; ++i) {
      const double* wi = model.w.data() + static_cast<std::size_t>(i) * r;
      double* di = denom.data();  // reuse first row as scratch per node
      for (int f = 0; f < r; ++f) {
        double s = 0;
        for (int gg = 0; gg < r; ++gg)
          s += wi[gg] * gram[static_cast<std::size_t>(gg) * r + f];
        di[f] = s;
      }
      double* wrow = model.w.data() + static_cast<std::size_t>(i) * r;
      const double* arow = aht.data() + static_cast<std::size_t>(i) * r;
      for (int f = 0; f < r; ++f) wrow[f] *= arow[f] / (di[f] + kEps);
    }

    if (options.track_error) model.reconstruction_errors.push_back(frobenius_error());
  }
  return model;
}

const char* to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kCommonNeighbors: return "cn";
    case BaselineKind::kJaccard: return "jaccard";
    case BaselineKind::kAdamicAdar: return "aa";
    case BaselineKind::kPreferentialAttachment: return "pa";
    case BaselineKind::kKatz: return "katz";
    case BaselineKind::kRootedPageRank: return "rpr";
    default: return "nmf";
  }
}

BaselineKind baseline_from_string(const std::string& s) {
  if (s == "cn") return BaselineKind::kCommonNeighbors;
  if (s == "jaccard") return BaselineKind::kJaccard;
  if (s == "aa") return BaselineKind::kAdamicAdar;
  if (s == "pa") return BaselineKind::kPreferentialAttachment;
  if (s == "katz") return BaselineKind::kKatz;
  if (s == "rpr") return BaselineKind::kRootedPageRank;
  if (s == "nmf") return BaselineKind::kNmf;
  throw UsageError("unknown baseline: " + s);
}

std::vector<BaselineKind> parse_baseline_list(const std::string& s) {
  if (s.empty()) return {};
  if (s == "all")
    return {BaselineKind::kCommonNeighbors, BaselineKind::kJaccard,
            BaselineKind::kAdamicAdar, BaselineKind::kPreferentialAttachment,
            BaselineKind::kKatz, BaselineKind::kRootedPageRank,
            BaselineKind::kNmf};
  std::vector<BaselineKind> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = s.find(',', start);
    const std::string tok =
        s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    if (!tok.empty()) out.push_back(baseline_from_string(tok));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> baseline_column(const Graph& g, BaselineKind kind,
                                    std::span<const NodePair> pairs,
                                    const BaselineOptions& options) {
  std::vector<double> col;
  col.reserve(pairs.size());
  switch (kind) {
    case BaselineKind::kCommonNeighbors:
      for (const auto& p : pairs) col.push_back(common_neighbors(g, p));
      break;
    case BaselineKind::kJaccard:
      for (const auto& p : pairs) col.push_back(jaccard_coefficient(g, p));
      break;
    case BaselineKind::kAdamicAdar:
      for (const auto& p : pairs) col.push_back(adamic_adar(g, p));
      break;
    case BaselineKind::kPreferentialAttachment:
      for (const auto& p : pairs) col.push_back(preferential_attachment(g, p));
      break;
    case BaselineKind::kKatz: {
      KatzComputer katz(g, options.katz_beta, options.katz_max_len);
      for (const auto& p : pairs) col.push_back(katz.score(p));
      break;
    }
    case BaselineKind::kRootedPageRank:
      col = rooted_pagerank_scores(g, pairs, options.pagerank_alpha,
                                   options.pagerank_tol);
      break;
    case BaselineKind::kNmf: {
      NmfModel model = nmf_factorize(g, options.nmf);
      for (const auto& p : pairs) col.push_back(model.score(p));
      break;
    }
  }
  return col;
}

}  // namespace motiflp
