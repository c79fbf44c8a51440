#pragma once

// Bounded lattices over a validated Poset. Construction computes the full
// join/meet tables (or fails naming the first pair without a unique bound),
// so later queries are table lookups.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latcap/common.hpp"
#include "latcap/poset.hpp"

namespace latcap {

// Dense join/meet tables cost O(m^2) memory; keep explicit lattices small.
inline constexpr std::size_t kDefaultLatticeBudget = 4096;

class BoundedLattice {
public:
  static BoundedLattice from_poset(Poset p,
                                   std::size_t max_elements = kDefaultLatticeBudget);
  static BoundedLattice from_covers(
      std::vector<std::string> labels,
      const std::vector<std::pair<ElementId, ElementId>>& arcs,
      std::size_t max_elements = kDefaultLatticeBudget);

  std::size_t size() const { return poset_.size(); }
  const Poset& poset() const { return poset_; }
  const HasseDiagram& hasse() const { return hasse_; }
  const std::string& label(ElementId a) const { return poset_.label(a); }

  ElementId bottom() const { return bottom_; }
  ElementId top() const { return top_; }
  bool leq(ElementId a, ElementId b) const { return poset_.leq(a, b); }
  ElementId join(ElementId a, ElementId b) const { return join_[a * size() + b]; }
  ElementId meet(ElementId a, ElementId b) const { return meet_[a * size() + b]; }

  // Order dual: same elements, relation reversed, join and meet swapped.
  BoundedLattice reversed() const;

  bool same_order_as(const BoundedLattice& o) const {
    return poset_.relation() == o.poset_.relation();
  }

private:
  BoundedLattice(Poset p, HasseDiagram h, std::vector<ElementId> join,
                 std::vector<ElementId> meet, ElementId bottom, ElementId top);

  // Tables supplied by a builder that knows them in closed form; only cheap
  // shape checks are made. Canonical-lattice constructors use this.
  friend BoundedLattice assemble_lattice(Poset, std::vector<ElementId>,
                                         std::vector<ElementId>);

  Poset poset_;
  HasseDiagram hasse_;
  std::vector<ElementId> join_, meet_;  // m*m, row-major
  ElementId bottom_, top_;
};

BoundedLattice assemble_lattice(Poset p, std::vector<ElementId> join,
                                std::vector<ElementId> meet);

// Elements with exactly one lower cover; the bottom has none and is never
// included. Ascending by element index.
std::vector<ElementId> join_irreducibles(const BoundedLattice& l);
// Dual: exactly one upper cover.
std::vector<ElementId> meet_irreducibles(const BoundedLattice& l);

// Subsets of an irreducible list as bitmasks: bit k of the value stands for
// irreducibles[k]. Limited to 64 irreducibles.
using IrredSet = std::uint64_t;

// eta(a) = the join-irreducibles below a, over join_irreducibles(l) order.
// a <= b iff eta(a) is a subset of eta(b), and eta is injective.
IrredSet eta(const BoundedLattice& l, ElementId a);
// eta_dual(a) = the meet-irreducibles above a; antitone in a.
IrredSet eta_dual(const BoundedLattice& l, ElementId a);

// One eta value per element, with the irreducible list computed once.
std::vector<IrredSet> eta_all(const BoundedLattice& l,
                              std::span<const ElementId> irreducibles);
std::vector<IrredSet> eta_dual_all(const BoundedLattice& l,
                                   std::span<const ElementId> irreducibles);

// Every maximal chain has |J(L)|+1 members; equivalently every cover step
// grows eta by exactly one irreducible, which is what gets checked.
bool is_vee_minimal_regular(const BoundedLattice& l);
// Dual: |M(L)|+1 members, every cover step drops one from eta_dual.
bool is_wedge_minimal_regular(const BoundedLattice& l);

bool jordan_dedekind_holds(const BoundedLattice& l);

// a ^ (b v c) == (a ^ b) v (a ^ c) for all triples.
bool is_distributive(const BoundedLattice& l);

std::vector<MaximalChain> enumerate_maximal_chains(
    const BoundedLattice& l, std::uint64_t budget = kDefaultChainBudget);
BigInt count_maximal_chains(const BoundedLattice& l);

}  // namespace latcap
