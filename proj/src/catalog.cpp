#include "motiflp/catalog.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>

namespace motiflp {
namespace {

void check_k(int k) {
  if (!MotifCatalog::valid_k(k))
    throw UsageError("motif size k must be 3, 4 or 5, got " + std::to_string(k));
}

std::vector<std::array<int, 5>> all_permutations(int k) {
  std::array<int, 5> p{0, 1, 2, 3, 4};
  std::vector<std::array<int, 5>> out;
  std::sort(p.begin(), p.begin() + k);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + k));
  return out;
}

// For each permutation, where each colex bit position moves.
std::vector<std::array<int, 10>> bit_maps(int k,
                                          std::span<const std::array<int, 5>> perms) {
  std::vector<std::array<int, 10>> maps(perms.size());
  for (std::size_t pi = 0; pi < perms.size(); ++pi) {
    const auto& p = perms[pi];
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        int a = p[i], b = p[j];
        if (a > b) std::swap(a, b);
        maps[pi][pair_bit(i, j)] = pair_bit(a, b);
      }
  }
  return maps;
}

std::uint32_t apply_bit_map(std::uint32_t code, const std::array<int, 10>& map,
                            int bits) {
  std::uint32_t out = 0;
  for (int b = 0; b < bits; ++b)
    if (code >> b & 1u) out |= 1u << map[b];
  return out;
}

// Row-major upper-triangle bitstring value of a colex code: pair (0,1) is the
// most significant bit, rows scanned left to right. This is the public
// identity of a canonical form; the colex packing stays engine-internal.
std::uint32_t row_major_value(int k, std::uint32_t colex_code) {
  const int bits = pair_count(k);
  std::uint32_t value = 0;
  int s = 0;  // string position, 0 = leftmost
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j, ++s)
      if (colex_code >> pair_bit(i, j) & 1u) value |= 1u << (bits - 1 - s);
  return value;
}

struct ClassMetadata {
  std::vector<MotifClass> classes;            // ordinal order
  std::vector<std::uint16_t> class_of_code;   // 1-based ordinal, 0 = disconnected
};

ClassMetadata build_class_metadata(int k) {
  const int bits = pair_count(k);
  const auto perms = all_permutations(k);
  const auto maps = bit_maps(k, perms);
  const std::uint32_t codes = 1u << bits;

  std::vector<std::uint32_t> canon(codes, 0);
  ClassMetadata meta;
  meta.class_of_code.assign(codes, 0);

  struct Bucket {
    std::uint32_t colex_min;
    std::uint32_t row_major_min;
    int labeled = 0;
  };
  std::vector<Bucket> buckets;
  std::vector<int> bucket_of(codes, -1);

  for (std::uint32_t code = 0; code < codes; ++code) {
    if (!code_is_connected(k, code)) continue;
    std::uint32_t cmin = code;
    std::uint32_t rmin = row_major_value(k, code);
    for (const auto& m : maps) {
      std::uint32_t pc = apply_bit_map(code, m, bits);
      cmin = std::min(cmin, pc);
      rmin = std::min(rmin, row_major_value(k, pc));
    }
    canon[code] = cmin;
    if (bucket_of[cmin] < 0) {
      bucket_of[cmin] = static_cast<int>(buckets.size());
      buckets.push_back({cmin, rmin, 0});
    }
    ++buckets[bucket_of[cmin]].labeled;
    bucket_of[code] = bucket_of[cmin];
  }

  // Ordinals: fewer edges first, then the more "spread out" class (more
  // labeled copies, i.e. smaller automorphism group), then the smaller
  // canonical code. Reproduces the conventional path/star/paw/cycle/diamond/
  // clique order at k=4 and pins a deterministic order at k=5.
  std::vector<int> order(buckets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int ea = std::popcount(buckets[a].colex_min);
    const int eb = std::popcount(buckets[b].colex_min);
    if (ea != eb) return ea < eb;
    if (buckets[a].labeled != buckets[b].labeled)
      return buckets[a].labeled > buckets[b].labeled;
    return buckets[a].row_major_min < buckets[b].row_major_min;
  });

  std::vector<int> ordinal_of_bucket(buckets.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const Bucket& bk = buckets[order[r]];
    MotifClass mc;
    mc.k = k;
    mc.ordinal = static_cast<int>(r) + 1;
    mc.name = "m" + std::to_string(k) + "." + std::to_string(mc.ordinal);
    mc.edge_count = std::popcount(bk.colex_min);
    mc.canonical_code = bk.row_major_min;
    mc.adjacency_bits.assign(bits, '0');
    for (int b = 0; b < bits; ++b)
      if (bk.row_major_min >> (bits - 1 - b) & 1u) mc.adjacency_bits[b] = '1';
    mc.labeled_count = bk.labeled;
    mc.colex_code = bk.colex_min;
    meta.classes.push_back(std::move(mc));
    ordinal_of_bucket[order[r]] = static_cast<int>(r) + 1;
  }
  for (std::uint32_t code = 0; code < codes; ++code)
    if (bucket_of[code] >= 0 && code_is_connected(k, code))
      meta.class_of_code[code] =
          static_cast<std::uint16_t>(ordinal_of_bucket[bucket_of[code]]);
  return meta;
}

const ClassMetadata& class_metadata(int k) {
  static const std::array<ClassMetadata, 3> cache = {
      build_class_metadata(3), build_class_metadata(4), build_class_metadata(5)};
  return cache[k - 3];
}

}  // namespace

bool code_is_connected(int k, std::uint32_t code) {
  // BFS over positions; isolated positions make the graphlet disconnected
  std::uint32_t adj[5] = {0, 0, 0, 0, 0};
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i)
      if (code >> pair_bit(i, j) & 1u) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
  std::uint32_t seen = 1;
  std::uint32_t frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    while (frontier) {
      int x = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= adj[x] & ~seen;
    }
    seen |= next;
    frontier = next;
  }
  return seen == (1u << k) - 1;
}

const char* to_string(AnchorMode mode) {
  return mode == AnchorMode::kEdgeAnchored ? "edge" : "node";
}

AnchorMode anchor_mode_from_string(const std::string& s) {
  if (s == "edge") return AnchorMode::kEdgeAnchored;
  if (s == "node") return AnchorMode::kNodeAnchored;
  throw UsageError("unknown anchor mode: " + s);
}

AnchoredTable::AnchoredTable(int k, AnchorMode mode) : k_(k), mode_(mode) {
  check_k(k);
  const auto& meta = class_metadata(k);
  class_count_ = static_cast<int>(meta.classes.size());
  const int bits = pair_count(k);
  const std::uint32_t codes = 1u << bits;
  data_.assign(static_cast<std::size_t>(codes) * class_count_, 0);

  // class of each connected spanning edge subset, by its own code
  const auto& class_of = meta.class_of_code;
  for (std::uint32_t code = 0; code < codes; ++code) {
    auto* row = data_.data() + static_cast<std::size_t>(code) * class_count_;
    // iterate submasks of code, including code itself, excluding 0
    for (std::uint32_t sub = code; sub != 0; sub = (sub - 1) & code) {
      if (mode == AnchorMode::kEdgeAnchored && !(sub & 1u)) continue;
      const std::uint16_t cls = class_of[sub];
      if (cls == 0) continue;  // not connected-spanning
      ++row[cls - 1];
    }
  }
}

std::vector<std::uint32_t> AnchoredTable::lookup(std::uint32_t code, int i,
                                                 int j) const {
  if (i == j || i < 0 || j < 0 || i >= k_ || j >= k_)
    throw UsageError("anchor positions out of range");
  std::array<int, 5> perm{};  // old position -> new position
  perm[i] = 0;
  perm[j] = 1;
  int next = 2;
  for (int p = 0; p < k_; ++p)
    if (p != i && p != j) perm[p] = next++;
  std::uint32_t mapped = 0;
  for (int b = 1; b < k_; ++b)
    for (int a = 0; a < b; ++a)
      if (code >> pair_bit(a, b) & 1u) {
        int x = perm[a], y = perm[b];
        if (x > y) std::swap(x, y);
        mapped |= 1u << pair_bit(x, y);
      }
  auto r = row(mapped);
  return {r.begin(), r.end()};
}

const MotifCatalog& MotifCatalog::instance() {
  static const MotifCatalog catalog;
  return catalog;
}

MotifCatalog::MotifCatalog() {
  for (int k = 3; k <= 5; ++k) {
    classes_[k - 3] = class_metadata(k).classes;
    class_of_code_[k - 3] = class_metadata(k).class_of_code;
    tables_[k - 3].emplace_back(k, AnchorMode::kEdgeAnchored);
    tables_[k - 3].emplace_back(k, AnchorMode::kNodeAnchored);
  }
}

std::span<const MotifClass> MotifCatalog::classes(int k) const {
  check_k(k);
  return classes_[k - 3];
}

int MotifCatalog::classify(int k, std::uint32_t colex_code) const {
  check_k(k);
  if (colex_code >= (1u << pair_count(k)))
    throw UsageError("graphlet code out of range");
  const std::uint16_t cls = class_of_code_[k - 3][colex_code];
  if (cls == 0) throw DataError("graphlet is disconnected; no motif class");
  return cls;
}

const AnchoredTable& MotifCatalog::table(int k, AnchorMode mode) const {
  check_k(k);
  return tables_[k - 3][mode == AnchorMode::kEdgeAnchored ? 0 : 1];
}

std::vector<std::string> MotifCatalog::feature_names(
    std::span<const int> ks) const {
  std::vector<std::string> names;
  int prev = 0;
  for (int k : ks) {
    check_k(k);
    if (k <= prev) throw UsageError("motif sizes must be strictly increasing");
    prev = k;
    for (const auto& mc : classes(k)) names.push_back(mc.name);
  }
  return names;
}

int MotifCatalog::feature_count(std::span<const int> ks) const {
  int total = 0;
  int prev = 0;
  for (int k : ks) {
    check_k(k);
    if (k <= prev) throw UsageError("motif sizes must be strictly increasing");
    prev = k;
    total += class_count(k);
  }
  return total;
}

void write_catalog_csv(std::span<const int> ks, std::ostream& out) {
  const auto& cat = MotifCatalog::instance();
  out << "k,ordinal,name,edge_count,canonical_code,adjacency_bits,labeled_count\n";
  for (int k : ks)
    for (const auto& mc : cat.classes(k))
      out << mc.k << ',' << mc.ordinal << ',' << mc.name << ','
          << mc.edge_count << ',' << mc.canonical_code << ','
          << mc.adjacency_bits << ',' << mc.labeled_count << '\n';
}

}  // namespace motiflp
