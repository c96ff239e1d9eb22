#include "motiflp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "motiflp/io.hpp"
#include "motiflp/random.hpp"

namespace motiflp {

const char* to_string(Protocol p) {
  return p == Protocol::kInsert ? "ins" : "rmv";
}

Protocol protocol_from_string(const std::string& s) {
  if (s == "ins") return Protocol::kInsert;
  if (s == "rmv") return Protocol::kRemove;
  throw UsageError("unknown protocol: " + s + " (expected ins or rmv)");
}

const char* to_string(NegativeSampler s) {
  return s == NegativeSampler::kNodeFirst ? "node" : "pair";
}

NegativeSampler negative_sampler_from_string(const std::string& s) {
  if (s == "node") return NegativeSampler::kNodeFirst;
  if (s == "pair") return NegativeSampler::kPairRejection;
  throw UsageError("unknown negative sampler: " + s + " (expected node or pair)");
}

const char* to_string(Normalization n) {
  switch (n) {
    case Normalization::kRaw: return "raw";
    case Normalization::kL1PerK: return "l1k";
    default: return "l1g";
  }
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "raw") return Normalization::kRaw;
  if (s == "l1k") return Normalization::kL1PerK;
  if (s == "l1g") return Normalization::kL1Global;
  throw UsageError("unknown normalization: " + s + " (expected raw, l1k or l1g)");
}

namespace {

struct PairHash {
  std::size_t operator()(const NodePair& p) const {
    return std::hash<std::uint64_t>{}((std::uint64_t{p.u} << 32) | p.v);
  }
};

}  // namespace

std::vector<LabeledExample> sample_negative_pairs(const Graph& g,
                                                  const SamplerConfig& config) {
  if (config.fraction_d2 < 0.0 || config.fraction_d2 > 1.0)
    throw UsageError("fraction_d2 must be within [0, 1]");
  const std::size_t n2 = static_cast<std::size_t>(
      std::llround(static_cast<double>(config.count) * config.fraction_d2));
  const std::size_t n3 = config.count - n2;

  Rng rng(config.seed);
  BfsScratch scratch;
  std::unordered_set<NodePair, PairHash> used;
  std::vector<LabeledExample> out;
  out.reserve(config.count);
  const NodeId n = g.node_count();
  if (n < 2 && config.count > 0)
    throw DataError("graph too small to sample negative pairs");

  auto fill_class = [&](int d, std::size_t want) {
    const std::size_t budget = config.retry_budget
                                   ? config.retry_budget
                                   : std::max<std::size_t>(1000, 200 * want);
    std::size_t got = 0;
    std::size_t attempts = 0;
    while (got < want) {
      if (++attempts > budget)
        throw DataError("negative sampler exhausted after " +
                        std::to_string(attempts - 1) + " attempts at distance " +
                        std::to_string(d) + ": found " + std::to_string(got) +
                        " of " + std::to_string(want));
      if (config.kind == NegativeSampler::kNodeFirst) {
        const NodeId u = static_cast<NodeId>(rng.below(n));
        scratch.run_from(g, u, d);
        auto ring = scratch.ring(d);
        if (ring.empty()) continue;
        const NodeId v = ring[rng.below(ring.size())];
        const NodePair p(u, v);
        if (!used.insert(p).second) continue;
        out.push_back({p, -1, d});
        ++got;
      } else {
        const NodeId u = static_cast<NodeId>(rng.below(n));
        const NodeId v = static_cast<NodeId>(rng.below(n));
        if (u == v) continue;
        const NodePair p(u, v);
        if (used.contains(p)) continue;
        if (scratch.distance(g, p.u, p.v, d + 1) != d) continue;
        used.insert(p);
        out.push_back({p, -1, d});
        ++got;
      }
    }
  };

  fill_class(2, n2);
  fill_class(3, n3);
  return out;
}

std::size_t Dataset::positive_count() const {
  std::size_t c = 0;
  for (const auto& e : examples) c += e.label > 0 ? 1 : 0;
  return c;
}

std::size_t Dataset::negative_count() const {
  return examples.size() - positive_count();
}

std::vector<NodePair> Dataset::pairs() const {
  std::vector<NodePair> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back(e.pair);
  return out;
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back(e.label);
  return out;
}

Dataset build_dataset(const Graph& g, Protocol protocol, std::size_t n_pos,
                      std::size_t n_neg, double fraction_d2,
                      std::uint64_t seed, NegativeSampler sampler) {
  if (n_pos != n_neg)
    throw UsageError("dataset must be balanced: n_pos=" + std::to_string(n_pos) +
                     " n_neg=" + std::to_string(n_neg));
  if (n_pos == 0) throw UsageError("dataset must contain at least one pair");
  if (n_pos > g.edge_count())
    throw DataError("cannot sample " + std::to_string(n_pos) +
                    " positives from " + std::to_string(g.edge_count()) +
                    " edges");

  Dataset ds;
  ds.protocol = protocol;
  ds.seed = seed;
  ds.fraction_d2 = fraction_d2;
  ds.sampler = sampler;

  // positives: uniform edges without replacement (partial Fisher-Yates over
  // the sorted edge list)
  auto edges = g.edges();
  Rng pos_rng(derive_seed(seed, "positives"));
  for (std::size_t i = 0; i < n_pos; ++i) {
    const std::size_t j = i + pos_rng.below(edges.size() - i);
    std::swap(edges[i], edges[j]);
    ds.examples.push_back({edges[i], +1, 1});
  }

  SamplerConfig cfg;
  cfg.count = n_neg;
  cfg.fraction_d2 = fraction_d2;
  cfg.seed = derive_seed(seed, "negatives");
  cfg.kind = sampler;
  auto negatives = sample_negative_pairs(g, cfg);
  ds.examples.insert(ds.examples.end(), negatives.begin(), negatives.end());

  std::set<NodeId> pos_nodes, neg_nodes;
  for (const auto& e : ds.examples)
    (e.label > 0 ? pos_nodes : neg_nodes).insert({e.pair.u, e.pair.v});
  std::vector<NodeId> shared;
  std::set_intersection(pos_nodes.begin(), pos_nodes.end(), neg_nodes.begin(),
                        neg_nodes.end(), std::back_inserter(shared));
  ds.shared_nodes = shared.size();
  return ds;
}

Graph counting_graph(const Graph& g, const Dataset& dataset) {
  std::vector<NodePair> changed;
  if (dataset.protocol == Protocol::kInsert) {
    for (const auto& e : dataset.examples)
      if (e.label < 0) changed.push_back(e.pair);
    return with_edges_modified(g, {}, changed);
  }
  for (const auto& e : dataset.examples)
    if (e.label > 0) changed.push_back(e.pair);
  return with_edges_modified(g, changed, {});
}

void write_dataset_csv(const Dataset& dataset, std::ostream& out) {
  out << "# link prediction dataset\n";
  KvConfig cfg;
  cfg.add("protocol", std::string(to_string(dataset.protocol)));
  cfg.add("seed", dataset.seed);
  cfg.add("n_pos", static_cast<std::uint64_t>(dataset.positive_count()));
  cfg.add("n_neg", static_cast<std::uint64_t>(dataset.negative_count()));
  cfg.add("fraction_d2", dataset.fraction_d2);
  cfg.add("sampler", std::string(to_string(dataset.sampler)));
  cfg.add("shared_nodes", static_cast<std::uint64_t>(dataset.shared_nodes));
  write_config_comments(cfg, out);
  out << "u,v,label,distance\n";
  for (const auto& e : dataset.examples)
    out << e.pair.u << ',' << e.pair.v << ',' << e.label << ',' << e.distance
        << '\n';
}

Dataset read_dataset_csv(std::istream& in) {
  CsvFile file = read_csv(in);
  if (file.header != std::vector<std::string>{"u", "v", "label", "distance"})
    throw DataError("dataset csv must have columns u,v,label,distance");
  Dataset ds;
  ds.protocol = protocol_from_string(file.config.require("protocol"));
  ds.seed = parse_uint(file.config.require("seed"));
  ds.fraction_d2 = parse_double(file.config.require("fraction_d2"));
  if (const auto* s = file.config.find("sampler"))
    ds.sampler = negative_sampler_from_string(*s);
  if (const auto* s = file.config.find("shared_nodes"))
    ds.shared_nodes = parse_uint(*s);
  for (const auto& row : file.rows) {
    const auto u = static_cast<NodeId>(parse_uint(row[0]));
    const auto v = static_cast<NodeId>(parse_uint(row[1]));
    const long long label = parse_int(row[2]);
    if (label != 1 && label != -1)
      throw DataError("dataset label must be 1 or -1, got " + row[2]);
    const long long dist = parse_int(row[3]);
    if (dist < 1) throw DataError("dataset distance must be >= 1");
    ds.examples.push_back(
        {NodePair(u, v), static_cast<int>(label), static_cast<int>(dist)});
  }
  return ds;
}

Dataset read_dataset_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);
  return read_dataset_csv(in);
}

FeatureMatrix assemble_features(
    const std::vector<std::vector<std::uint64_t>>& counts,
    std::span<const int> ks, Normalization normalization) {
  const auto& cat = MotifCatalog::instance();
  FeatureMatrix fm;
  fm.column_names = cat.feature_names(ks);
  fm.normalization = normalization;
  const std::size_t width = fm.column_names.size();
  fm.rows.reserve(counts.size());
  for (const auto& row : counts) {
    if (row.size() != width)
      throw DataError("count row width does not match requested motif sizes");
    std::vector<double> r(row.begin(), row.end());
    if (normalization == Normalization::kL1PerK) {
      std::size_t off = 0;
      for (int k : ks) {
        const std::size_t len = static_cast<std::size_t>(cat.class_count(k));
        double sum = 0;
        for (std::size_t i = off; i < off + len; ++i) sum += r[i];
        if (sum > 0)
          for (std::size_t i = off; i < off + len; ++i) r[i] /= sum;
        off += len;
      }
    } else if (normalization == Normalization::kL1Global) {
      double sum = 0;
      for (double x : r) sum += x;
      if (sum > 0)
        for (double& x : r) x /= sum;
    }
    fm.rows.push_back(std::move(r));
  }
  return fm;
}

}  // namespace motiflp
