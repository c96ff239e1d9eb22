#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "motiflp/errors.hpp"

namespace motiflp {

// Motifs are connected undirected graphlets on k in {3,4,5} nodes. A labeled
// graphlet on positions 0..k-1 is packed into a code word with one bit per
// unordered position pair in colex order: bit index of (i,j), i<j, is
// j*(j-1)/2 + i. Appending a node at position j therefore appends its
// adjacency row as a contiguous bit run, which the counting engine exploits.
inline constexpr int pair_bit(int i, int j) {  // requires i < j
  return j * (j - 1) / 2 + i;
}
inline constexpr int pair_count(int k) { return k * (k - 1) / 2; }

enum class AnchorMode { kEdgeAnchored, kNodeAnchored };

const char* to_string(AnchorMode mode);
AnchorMode anchor_mode_from_string(const std::string& s);

struct MotifClass {
  int k = 0;
  int ordinal = 0;          // 1-based within k
  std::string name;         // "m3.1", "m4.2", ...
  int edge_count = 0;
  // Integer value of the lexicographically minimal upper-triangle row-major
  // adjacency bitstring over all node permutations; bit for (0,1) is the most
  // significant. The class identity reported in catalog dumps.
  std::uint32_t canonical_code = 0;
  std::string adjacency_bits;  // that bitstring, C(k,2) characters
  // Number of labeled graphs in the class (k!/|Aut|); part of the ordering.
  int labeled_count = 0;
  // Representative in the engine's colex packing (minimal over permutations).
  std::uint32_t colex_code = 0;
};

// Dense per-code lookup tables for one (k, mode). Indexed by the colex code
// of the induced subgraph on the k chosen nodes; each row holds, per motif
// class, the number of connected spanning edge subsets of that induced graph
// that count as an occurrence:
//   kEdgeAnchored: subsets required to contain the (0,1) edge, so the anchor
//     pair must sit at positions 0 and 1 (the code's bit 0 must be set).
//   kNodeAnchored: all connected spanning subsets; no positional constraint.
// Rows for disconnected codes (or edge-anchored codes without bit 0) are
// all-zero.
class AnchoredTable {
public:
  AnchoredTable(int k, AnchorMode mode);

  int k() const { return k_; }
  AnchorMode mode() const { return mode_; }
  int class_count() const { return class_count_; }

  std::span<const std::uint32_t> row(std::uint32_t code) const {
    return {data_.data() + static_cast<std::size_t>(code) * class_count_,
            static_cast<std::size_t>(class_count_)};
  }

  // Spec-shaped lookup for an anchor at arbitrary positions (i, j): permutes
  // the code so the anchors land on (0, 1) first. The hot path in the engine
  // keeps anchors at (0, 1) and calls row() directly.
  std::vector<std::uint32_t> lookup(std::uint32_t code, int i, int j) const;

private:
  int k_;
  AnchorMode mode_;
  int class_count_;
  std::vector<std::uint32_t> data_;
};

// All 29 motif classes with their deterministic ordinals, plus cached
// anchored tables. Built once on first use.
class MotifCatalog {
public:
  static const MotifCatalog& instance();

  std::span<const MotifClass> classes(int k) const;
  int class_count(int k) const { return static_cast<int>(classes(k).size()); }

  // Ordinal (1-based) of the connected labeled graphlet with the given colex
  // code; throws DataError on a disconnected code.
  int classify(int k, std::uint32_t colex_code) const;

  const AnchoredTable& table(int k, AnchorMode mode) const;

  // Feature names "m3.1..m5.21" restricted to the given ks, catalog order.
  std::vector<std::string> feature_names(std::span<const int> ks) const;
  int feature_count(std::span<const int> ks) const;

  static bool valid_k(int k) { return k >= 3 && k <= 5; }

private:
  MotifCatalog();
  std::array<std::vector<MotifClass>, 3> classes_;          // [k-3]
  std::array<std::vector<std::uint16_t>, 3> class_of_code_; // 0 = disconnected
  std::array<std::vector<AnchoredTable>, 3> tables_;        // [k-3][mode]
};

// Connectivity of a labeled graphlet given by colex code over k positions.
bool code_is_connected(int k, std::uint32_t code);

// Writes the catalog as CSV: k, ordinal, name, edge_count, canonical_code,
// adjacency_bits, labeled_count.
void write_catalog_csv(std::span<const int> ks, std::ostream& out);

}  // namespace motiflp
