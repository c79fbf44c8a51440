#include "latcap/lattice.hpp"

#include <algorithm>
#include <bit>

namespace latcap {

BoundedLattice::BoundedLattice(Poset p, HasseDiagram h, std::vector<ElementId> join,
                               std::vector<ElementId> meet, ElementId bottom,
                               ElementId top)
    : poset_(std::move(p)),
      hasse_(std::move(h)),
      join_(std::move(join)),
      meet_(std::move(meet)),
      bottom_(bottom),
      top_(top) {}

namespace {

// Least element of the set marked in `candidates` (word-aligned over m
// elements), or kNoElement if the set has no least member.
ElementId least_of(const Poset& p, std::span<const std::uint64_t> candidates,
                   std::size_t m) {
  for (std::size_t w = 0; w < candidates.size(); ++w) {
    std::uint64_t bits = candidates[w];
    while (bits) {
      const std::size_t z = w * 64 + std::size_t(std::countr_zero(bits));
      bits &= bits - 1;
      if (z >= m) break;
      // z is least iff every candidate lies in up(z).
      auto up_z = p.up_row(ElementId(z));
      bool least = true;
      for (std::size_t v = 0; v < candidates.size() && least; ++v)
        if (candidates[v] & ~up_z[v]) least = false;
      if (least) return ElementId(z);
    }
  }
  return kNoElement;
}

// Greatest element of the marked set, or kNoElement.
ElementId greatest_of(const Poset& p, std::span<const std::uint64_t> candidates,
                      std::size_t m) {
  for (std::size_t w = 0; w < candidates.size(); ++w) {
    std::uint64_t bits = candidates[w];
    while (bits) {
      const std::size_t z = w * 64 + std::size_t(std::countr_zero(bits));
      bits &= bits - 1;
      if (z >= m) break;
      auto down_z = p.down_row(ElementId(z));
      bool greatest = true;
      for (std::size_t v = 0; v < candidates.size() && greatest; ++v)
        if (candidates[v] & ~down_z[v]) greatest = false;
      if (greatest) return ElementId(z);
    }
  }
  return kNoElement;
}

}  // namespace

BoundedLattice BoundedLattice::from_poset(Poset p, std::size_t max_elements) {
  const std::size_t m = p.size();
  if (m == 0) throw NotALattice("empty order has no bounds");
  if (m > max_elements)
    throw BudgetExceeded("lattice of " + std::to_string(m) +
                             " elements exceeds the element budget of " +
                             std::to_string(max_elements),
                         m);
  const std::size_t words = (m + 63) / 64;
  std::vector<ElementId> join(m * m, kNoElement), meet(m * m, kNoElement);
  std::vector<std::uint64_t> buf(words);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      auto ua = p.up_row(ElementId(a));
      auto ub = p.up_row(ElementId(b));
      for (std::size_t w = 0; w < words; ++w) buf[w] = ua[w] & ub[w];
      const ElementId j = least_of(p, buf, m);
      if (j == kNoElement)
        throw NotALattice("no unique least upper bound for ('" +
                          p.label(ElementId(a)) + "', '" + p.label(ElementId(b)) +
                          "')");
      auto da = p.down_row(ElementId(a));
      auto db = p.down_row(ElementId(b));
      for (std::size_t w = 0; w < words; ++w) buf[w] = da[w] & db[w];
      const ElementId mt = greatest_of(p, buf, m);
      if (mt == kNoElement)
        throw NotALattice("no unique greatest lower bound for ('" +
                          p.label(ElementId(a)) + "', '" + p.label(ElementId(b)) +
                          "')");
      join[a * m + b] = join[b * m + a] = j;
      meet[a * m + b] = meet[b * m + a] = mt;
    }
  }
  auto bottom = p.bottom();
  auto top = p.top();
  if (!bottom || !top) throw NotALattice("order lacks a unique bottom or top");
  HasseDiagram h = build_hasse(p);
  return BoundedLattice(std::move(p), std::move(h), std::move(join), std::move(meet),
                        *bottom, *top);
}

BoundedLattice BoundedLattice::from_covers(
    std::vector<std::string> labels,
    const std::vector<std::pair<ElementId, ElementId>>& arcs,
    std::size_t max_elements) {
  return from_poset(Poset::from_covers(std::move(labels), arcs), max_elements);
}

BoundedLattice assemble_lattice(Poset p, std::vector<ElementId> join,
                                std::vector<ElementId> meet) {
  const std::size_t m = p.size();
  if (join.size() != m * m || meet.size() != m * m)
    throw NotALattice("join/meet tables have the wrong shape");
  auto bottom = p.bottom();
  auto top = p.top();
  if (!bottom || !top) throw NotALattice("order lacks a unique bottom or top");
  HasseDiagram h = build_hasse(p);
  return BoundedLattice(std::move(p), std::move(h), std::move(join), std::move(meet),
                        *bottom, *top);
}

BoundedLattice BoundedLattice::reversed() const {
  BoundedLattice r(poset_.reversed(), HasseDiagram{}, meet_, join_, top_, bottom_);
  std::vector<std::pair<ElementId, ElementId>> covers;
  covers.reserve(hasse_.covers.size());
  for (auto [lo, hi] : hasse_.covers) covers.emplace_back(hi, lo);
  r.hasse_ = hasse_from_covers(size(), std::move(covers));
  return r;
}

std::vector<ElementId> join_irreducibles(const BoundedLattice& l) {
  std::vector<ElementId> out;
  for (std::size_t a = 0; a < l.size(); ++a)
    if (l.hasse().down[a].size() == 1) out.push_back(ElementId(a));
  return out;
}

std::vector<ElementId> meet_irreducibles(const BoundedLattice& l) {
  std::vector<ElementId> out;
  for (std::size_t a = 0; a < l.size(); ++a)
    if (l.hasse().up[a].size() == 1) out.push_back(ElementId(a));
  return out;
}

std::vector<IrredSet> eta_all(const BoundedLattice& l,
                              std::span<const ElementId> irreducibles) {
  if (irreducibles.size() > 64)
    throw PreconditionError("more than 64 irreducibles; eta masks do not fit a word");
  std::vector<IrredSet> out(l.size(), 0);
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t k = 0; k < irreducibles.size(); ++k)
      if (l.leq(irreducibles[k], ElementId(a))) out[a] |= IrredSet{1} << k;
  return out;
}

std::vector<IrredSet> eta_dual_all(const BoundedLattice& l,
                                   std::span<const ElementId> irreducibles) {
  if (irreducibles.size() > 64)
    throw PreconditionError("more than 64 irreducibles; eta masks do not fit a word");
  std::vector<IrredSet> out(l.size(), 0);
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t k = 0; k < irreducibles.size(); ++k)
      if (l.leq(ElementId(a), irreducibles[k])) out[a] |= IrredSet{1} << k;
  return out;
}

IrredSet eta(const BoundedLattice& l, ElementId a) {
  const auto irr = join_irreducibles(l);
  if (irr.size() > 64)
    throw PreconditionError("more than 64 irreducibles; eta masks do not fit a word");
  IrredSet s = 0;
  for (std::size_t k = 0; k < irr.size(); ++k)
    if (l.leq(irr[k], a)) s |= IrredSet{1} << k;
  return s;
}

IrredSet eta_dual(const BoundedLattice& l, ElementId a) {
  const auto irr = meet_irreducibles(l);
  if (irr.size() > 64)
    throw PreconditionError("more than 64 irreducibles; eta masks do not fit a word");
  IrredSet s = 0;
  for (std::size_t k = 0; k < irr.size(); ++k)
    if (l.leq(a, irr[k])) s |= IrredSet{1} << k;
  return s;
}

bool is_vee_minimal_regular(const BoundedLattice& l) {
  const auto irr = join_irreducibles(l);
  if (irr.size() > 64) return false;
  const auto masks = eta_all(l, irr);
  // Every cover edge lies on some maximal chain, and eta grows strictly
  // along covers, so all chains reach length |J| exactly when every edge
  // adds exactly one irreducible.
  for (auto [lo, hi] : l.hasse().covers) {
    const IrredSet gained = masks[hi] & ~masks[lo];
    if ((masks[lo] & ~masks[hi]) != 0) return false;
    if (std::popcount(gained) != 1) return false;
  }
  return true;
}

bool is_wedge_minimal_regular(const BoundedLattice& l) {
  const auto irr = meet_irreducibles(l);
  if (irr.size() > 64) return false;
  const auto masks = eta_dual_all(l, irr);
  for (auto [lo, hi] : l.hasse().covers) {
    const IrredSet lost = masks[lo] & ~masks[hi];
    if ((masks[hi] & ~masks[lo]) != 0) return false;
    if (std::popcount(lost) != 1) return false;
  }
  return true;
}

bool jordan_dedekind_holds(const BoundedLattice& l) {
  return jordan_dedekind_holds(l.poset(), l.hasse());
}

bool is_distributive(const BoundedLattice& l) {
  const std::size_t m = l.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = b; c < m; ++c) {
        const ElementId lhs = l.meet(ElementId(a), l.join(ElementId(b), ElementId(c)));
        const ElementId rhs = l.join(l.meet(ElementId(a), ElementId(b)),
                                     l.meet(ElementId(a), ElementId(c)));
        if (lhs != rhs) return false;
      }
  return true;
}

std::vector<MaximalChain> enumerate_maximal_chains(const BoundedLattice& l,
                                                   std::uint64_t budget) {
  return enumerate_maximal_chains(l.hasse(), l.bottom(), l.top(), budget);
}

BigInt count_maximal_chains(const BoundedLattice& l) {
  const auto order = l.poset().linear_extension();
  return count_chains_through_edges(l.hasse(), order, l.bottom(), l.top()).total;
}

}  // namespace latcap
