#pragma once

// Finite partial orders. A Poset owns the full <= relation as a bit matrix
// and is validated on construction. Hasse diagrams, saturated-chain
// enumeration and exact chain counting live here; every structure in the
// library (set systems, lattices, product lattices) reduces to them.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latcap/common.hpp"

namespace latcap {

// Dense rows-by-cols boolean table, one bit per entry, rows padded to
// 64-bit words so that row-level subset tests are word operations.
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }

  // Row i a subset of row j, rows viewed as bit sets.
  bool row_subset(std::size_t i, std::size_t j) const;
  // Rows i and j share no set bit.
  bool rows_disjoint(std::size_t i, std::size_t j) const;
  std::size_t row_popcount(std::size_t i) const;

  BitMatrix transposed() const;

  bool operator==(const BitMatrix&) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

class Poset {
public:
  // Full relation, row a / column b set iff a <= b. Validates reflexivity,
  // antisymmetry and transitivity; the error message names a witness pair.
  static Poset from_relation(std::vector<std::string> labels, BitMatrix leq);

  // Arbitrary (lo, hi) arcs; the reflexive-transitive closure is taken
  // first, so the arcs need not be covers. Cycles are antisymmetry
  // violations.
  static Poset from_covers(
      std::vector<std::string> labels,
      const std::vector<std::pair<ElementId, ElementId>>& arcs);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(ElementId a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  ElementId index_of_label(const std::string& s) const;

  bool leq(ElementId a, ElementId b) const { return up_.get(a, b); }
  bool less(ElementId a, ElementId b) const { return a != b && up_.get(a, b); }

  const BitMatrix& relation() const { return up_; }
  std::span<const std::uint64_t> up_row(ElementId a) const { return up_.row(a); }
  std::span<const std::uint64_t> down_row(ElementId a) const { return down_.row(a); }
  std::size_t downset_size(ElementId a) const { return down_.row_popcount(a); }
  std::size_t upset_size(ElementId a) const { return up_.row_popcount(a); }

  std::vector<ElementId> minimal_elements() const;
  std::vector<ElementId> maximal_elements() const;
  // Unique minimum / maximum when one exists.
  std::optional<ElementId> bottom() const;
  std::optional<ElementId> top() const;

  // Elements ordered by down-set size, ties by index. Down-set sizes
  // strictly increase along <, so this is a linear extension.
  std::vector<ElementId> linear_extension() const;

  Poset reversed() const;

  bool operator==(const Poset& o) const {
    return labels_ == o.labels_ && up_ == o.up_;
  }

private:
  Poset(std::vector<std::string> labels, BitMatrix up);

  // No axiom checks; for callers that construct relations correct by
  // construction (canonical lattices, containment orders).
  friend Poset make_trusted_poset(std::vector<std::string>, BitMatrix);

  std::vector<std::string> labels_;
  BitMatrix up_;    // up_.get(a,b) == (a <= b)
  BitMatrix down_;  // transpose of up_
};

Poset make_trusted_poset(std::vector<std::string> labels, BitMatrix up);

struct HasseDiagram {
  std::size_t m = 0;
  // Cover pairs (lo, hi), sorted lexicographically.
  std::vector<std::pair<ElementId, ElementId>> covers;
  // Ascending neighbor lists; up_edge[a][k] is the index into covers of the
  // edge (a, up[a][k]).
  std::vector<std::vector<ElementId>> up, down;
  std::vector<std::vector<int>> up_edge;

  int edge_index(ElementId lo, ElementId hi) const;  // -1 when not a cover
};

HasseDiagram build_hasse(const Poset& p);
HasseDiagram hasse_from_covers(std::size_t m,
                               std::vector<std::pair<ElementId, ElementId>> covers);

// A saturated chain from bottom to top, listed upward.
using MaximalChain = std::vector<ElementId>;

inline constexpr std::uint64_t kDefaultChainBudget = 10'000'000;

// Depth-first over ascending cover neighbors, so the output order is
// lexicographic by element index. Throws BudgetExceeded beyond the budget.
std::vector<MaximalChain> enumerate_maximal_chains(
    const HasseDiagram& h, ElementId bottom, ElementId top,
    std::uint64_t budget = kDefaultChainBudget);

// Same walk without materializing the list.
void for_each_maximal_chain(const HasseDiagram& h, ElementId bottom,
                            ElementId top,
                            const std::function<void(const MaximalChain&)>& fn,
                            std::uint64_t budget = kDefaultChainBudget);

// Exact saturated-chain counts: below[x] counts bottom-to-x chains, above[x]
// counts x-to-top chains, and through[e] = below[lo]*above[hi] counts the
// maximal chains containing cover edge e. total = below[top] = above[bottom].
// topo_order must be a linear extension of the order the diagram reduces.
struct EdgeChainCounts {
  BigInt total;
  std::vector<BigInt> below, above;
  std::vector<BigInt> through;  // aligned with h.covers
};

EdgeChainCounts count_chains_through_edges(const HasseDiagram& h,
                                           std::span<const ElementId> topo_order,
                                           ElementId bottom, ElementId top);

// Every segment [a, b] has all its saturated a-to-b chains of equal length.
bool jordan_dedekind_holds(const Poset& p, const HasseDiagram& h);

}  // namespace latcap
