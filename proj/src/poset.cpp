#include "latcap/poset.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

namespace latcap {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

void BitMatrix::set(std::size_t i, std::size_t j, bool value) {
  std::uint64_t& w = bits_[i * words_ + (j >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (j & 63);
  if (value)
    w |= bit;
  else
    w &= ~bit;
}

bool BitMatrix::row_subset(std::size_t i, std::size_t j) const {
  const std::uint64_t* a = bits_.data() + i * words_;
  const std::uint64_t* b = bits_.data() + j * words_;
  for (std::size_t w = 0; w < words_; ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

bool BitMatrix::rows_disjoint(std::size_t i, std::size_t j) const {
  const std::uint64_t* a = bits_.data() + i * words_;
  const std::uint64_t* b = bits_.data() + j * words_;
  for (std::size_t w = 0; w < words_; ++w)
    if (a[w] & b[w]) return false;
  return true;
}

std::size_t BitMatrix::row_popcount(std::size_t i) const {
  const std::uint64_t* a = bits_.data() + i * words_;
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w]);
  return c;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) t.set(j, i);
  return t;
}

namespace {

void check_labels(const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty())
      throw InvalidPoset("element " + std::to_string(i) + " has an empty label");
    for (char c : labels[i])
      if (c == '<' || std::isspace(static_cast<unsigned char>(c)))
        throw InvalidPoset("label '" + labels[i] +
                           "' contains whitespace or '<', which the text formats reserve");
  }
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    throw InvalidPoset("duplicate label '" + *dup + "'");
}

}  // namespace

Poset::Poset(std::vector<std::string> labels, BitMatrix up)
    : labels_(std::move(labels)), up_(std::move(up)), down_(up_.transposed()) {}

Poset make_trusted_poset(std::vector<std::string> labels, BitMatrix up) {
  return Poset(std::move(labels), std::move(up));
}

Poset Poset::from_relation(std::vector<std::string> labels, BitMatrix leq) {
  const std::size_t m = labels.size();
  check_labels(labels);
  if (leq.rows() != m || leq.cols() != m)
    throw InvalidPoset("relation table is " + std::to_string(leq.rows()) + "x" +
                       std::to_string(leq.cols()) + " but there are " +
                       std::to_string(m) + " elements");
  for (std::size_t a = 0; a < m; ++a)
    if (!leq.get(a, a))
      throw InvalidPoset("reflexivity fails at '" + labels[a] + "'");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (leq.get(a, b) && leq.get(b, a))
        throw InvalidPoset("antisymmetry fails on ('" + labels[a] + "', '" +
                           labels[b] + "')");
  // a <= b forces up(b) included in up(a).
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && leq.get(a, b) && !leq.row_subset(b, a)) {
        for (std::size_t c = 0; c < m; ++c)
          if (leq.get(b, c) && !leq.get(a, c))
            throw InvalidPoset("transitivity fails on ('" + labels[a] + "' <= '" +
                               labels[b] + "' <= '" + labels[c] + "')");
      }
  return Poset(std::move(labels), std::move(leq));
}

Poset Poset::from_covers(std::vector<std::string> labels,
                         const std::vector<std::pair<ElementId, ElementId>>& arcs) {
  const std::size_t m = labels.size();
  check_labels(labels);
  std::vector<std::vector<ElementId>> adj(m);
  for (auto [lo, hi] : arcs) {
    if (lo < 0 || hi < 0 || std::size_t(lo) >= m || std::size_t(hi) >= m)
      throw InvalidPoset("arc endpoint out of range");
    if (lo == hi)
      throw InvalidPoset("self-loop at '" + labels[lo] + "'");
    adj[lo].push_back(hi);
  }
  BitMatrix up(m, m);
  // Reachability from each element; a cycle makes some x reachable from
  // itself through at least one arc, i.e. an antisymmetry violation.
  std::vector<ElementId> stack;
  std::vector<char> seen(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, ElementId(a));
    seen[a] = 1;
    while (!stack.empty()) {
      ElementId x = stack.back();
      stack.pop_back();
      for (ElementId y : adj[x]) {
        if (std::size_t(y) == a)
          throw InvalidPoset("arc cycle through '" + labels[a] + "'");
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    for (std::size_t b = 0; b < m; ++b)
      if (seen[b]) up.set(a, b);
  }
  return Poset(std::move(labels), std::move(up));
}

ElementId Poset::index_of_label(const std::string& s) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == s) return ElementId(i);
  return kNoElement;
}

std::vector<ElementId> Poset::minimal_elements() const {
  std::vector<ElementId> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (down_.row_popcount(a) == 1) out.push_back(ElementId(a));
  return out;
}

std::vector<ElementId> Poset::maximal_elements() const {
  std::vector<ElementId> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (up_.row_popcount(a) == 1) out.push_back(ElementId(a));
  return out;
}

std::optional<ElementId> Poset::bottom() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (up_.row_popcount(a) == size()) return ElementId(a);
  return std::nullopt;
}

std::optional<ElementId> Poset::top() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (down_.row_popcount(a) == size()) return ElementId(a);
  return std::nullopt;
}

std::vector<ElementId> Poset::linear_extension() const {
  std::vector<ElementId> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> depth(size());
  for (std::size_t a = 0; a < size(); ++a) depth[a] = down_.row_popcount(a);
  std::stable_sort(order.begin(), order.end(),
                   [&](ElementId a, ElementId b) { return depth[a] < depth[b]; });
  return order;
}

Poset Poset::reversed() const { return Poset(labels_, down_); }

namespace {

std::vector<std::pair<ElementId, ElementId>> compute_covers(const Poset& p) {
  const std::size_t m = p.size();
  std::vector<std::pair<ElementId, ElementId>> covers;
  // b covers a iff a < b and the strict up-set of a misses the strict
  // down-set of b.
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b || !p.leq(ElementId(a), ElementId(b))) continue;
      bool direct = true;
      auto up_a = p.up_row(ElementId(a));
      auto down_b = p.down_row(ElementId(b));
      for (std::size_t w = 0; w < up_a.size() && direct; ++w) {
        std::uint64_t between = up_a[w] & down_b[w];
        // Mask out a and b themselves.
        if (a / 64 == w) between &= ~(std::uint64_t{1} << (a & 63));
        if (b / 64 == w) between &= ~(std::uint64_t{1} << (b & 63));
        if (between) direct = false;
      }
      if (direct) covers.emplace_back(ElementId(a), ElementId(b));
    }
  std::sort(covers.begin(), covers.end());
  return covers;
}

}  // namespace

HasseDiagram hasse_from_covers(std::size_t m,
                               std::vector<std::pair<ElementId, ElementId>> covers) {
  std::sort(covers.begin(), covers.end());
  HasseDiagram h;
  h.m = m;
  h.covers = std::move(covers);
  h.up.resize(m);
  h.down.resize(m);
  h.up_edge.resize(m);
  for (std::size_t e = 0; e < h.covers.size(); ++e) {
    auto [lo, hi] = h.covers[e];
    h.up[lo].push_back(hi);
    h.up_edge[lo].push_back(int(e));
    h.down[hi].push_back(lo);
  }
  for (auto& v : h.down) std::sort(v.begin(), v.end());
  return h;
}

HasseDiagram build_hasse(const Poset& p) {
  return hasse_from_covers(p.size(), compute_covers(p));
}

int HasseDiagram::edge_index(ElementId lo, ElementId hi) const {
  auto it = std::lower_bound(covers.begin(), covers.end(), std::pair{lo, hi});
  if (it == covers.end() || *it != std::pair{lo, hi}) return -1;
  return int(it - covers.begin());
}

void for_each_maximal_chain(const HasseDiagram& h, ElementId bottom,
                            ElementId top,
                            const std::function<void(const MaximalChain&)>& fn,
                            std::uint64_t budget) {
  MaximalChain chain{bottom};
  std::uint64_t produced = 0;
  // Iterative DFS; frame k holds the position within up[chain[k]].
  std::vector<std::size_t> pos{0};
  while (!pos.empty()) {
    ElementId x = chain.back();
    if (x == top) {
      if (produced == budget)
        throw BudgetExceeded("maximal-chain budget of " + std::to_string(budget) +
                                 " exceeded",
                             produced);
      ++produced;
      fn(chain);
      chain.pop_back();
      pos.pop_back();
      continue;
    }
    std::size_t& k = pos.back();
    if (k < h.up[x].size()) {
      ElementId next = h.up[x][k];
      ++k;
      chain.push_back(next);
      pos.push_back(0);
    } else {
      chain.pop_back();
      pos.pop_back();
    }
  }
}

std::vector<MaximalChain> enumerate_maximal_chains(const HasseDiagram& h,
                                                   ElementId bottom, ElementId top,
                                                   std::uint64_t budget) {
  std::vector<MaximalChain> out;
  for_each_maximal_chain(
      h, bottom, top, [&](const MaximalChain& c) { out.push_back(c); }, budget);
  return out;
}

EdgeChainCounts count_chains_through_edges(const HasseDiagram& h,
                                           std::span<const ElementId> order,
                                           ElementId bottom, ElementId top) {
  EdgeChainCounts out;
  out.below.assign(h.m, BigInt(0));
  out.above.assign(h.m, BigInt(0));
  out.below[bottom] = 1;
  for (ElementId x : order)
    for (ElementId y : h.up[x]) out.below[y] += out.below[x];
  out.above[top] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (ElementId y : h.down[*it]) out.above[y] += out.above[*it];
  out.total = out.below[top];
  if (out.total != out.above[bottom])
    throw Error("chain-count sweep mismatch; order relation is corrupted");
  out.through.reserve(h.covers.size());
  for (auto [lo, hi] : h.covers) out.through.push_back(out.below[lo] * out.above[hi]);
  return out;
}

bool jordan_dedekind_holds(const Poset& p, const HasseDiagram& h) {
  const std::size_t m = p.size();
  const std::vector<ElementId> order = p.linear_extension();
  constexpr int kUnreached = -1;
  std::vector<int> lo(m), hi(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::fill(lo.begin(), lo.end(), kUnreached);
    std::fill(hi.begin(), hi.end(), kUnreached);
    lo[a] = hi[a] = 0;
    // Saturated chains from a stay inside [a, b], so cover-DAG relaxation
    // over the up-set of a suffices.
    for (ElementId x : order) {
      if (lo[x] == kUnreached) continue;
      for (ElementId y : h.up[x]) {
        if (lo[y] == kUnreached || lo[y] > lo[x] + 1) lo[y] = lo[x] + 1;
        if (hi[y] < hi[x] + 1) hi[y] = hi[x] + 1;
      }
    }
    for (std::size_t b = 0; b < m; ++b)
      if (lo[b] != kUnreached && lo[b] != hi[b]) return false;
  }
  return true;
}

}  // namespace latcap
