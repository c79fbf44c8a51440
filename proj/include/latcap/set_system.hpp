#pragma once

// Families of player subsets containing the empty set and the ground set,
// ordered by containment. Members are bitmasks over players 1..n and the
// family is kept sorted by (cardinality, mask value), so positions are a
// canonical element order with the empty set first and the ground set last.

#include <cstdint>
#include <string>
#include <vector>

#include "latcap/common.hpp"
#include "latcap/lattice.hpp"
#include "latcap/poset.hpp"

namespace latcap {

// Families beyond this size skip the cover graph at construction; only the
// operations that address members directly by mask stay available.
inline constexpr std::size_t kCoverGraphLimit = 4096;

class SetSystem {
public:
  // Validates: 1 <= n <= kMaxPlayers, masks within range, no duplicates,
  // empty set and ground set present.
  static SetSystem from_members(int n, std::vector<Mask> family);
  // All 2^n subsets; n <= 20.
  static SetSystem full_powerset(int n);

  int ground_size() const { return n_; }
  std::size_t size() const { return family_.size(); }
  const std::vector<Mask>& family() const { return family_; }
  Mask member(ElementId i) const { return family_[i]; }
  ElementId index_of(Mask m) const;  // kNoElement if absent

  bool is_full_powerset() const { return family_.size() == (std::size_t{1} << n_); }
  ElementId bottom() const { return 0; }
  ElementId top() const { return ElementId(family_.size()) - 1; }

  // Cover graph of the containment order. Computed at construction for
  // families of at most kCoverGraphLimit members; beyond that this throws.
  const HasseDiagram& hasse() const;
  bool has_hasse() const { return family_.size() <= kCoverGraphLimit; }

  // Containment order with canonical subset labels.
  Poset containment_poset() const;

  std::string member_label(ElementId i) const;

  bool operator==(const SetSystem& o) const {
    return n_ == o.n_ && family_ == o.family_;
  }

private:
  SetSystem(int n, std::vector<Mask> family);

  int n_ = 0;
  std::vector<Mask> family_;
  HasseDiagram hasse_;
};

// Complement family { N \ A : A in s }.
SetSystem dualize(const SetSystem& s);

// Every maximal chain has n+1 members; equivalently every cover step in the
// containment order adds exactly one player.
bool is_regular(const SetSystem& s);

// Closed under intersection, and every proper member extends by one player
// inside the family. (The empty set and ground set are present by the type
// invariant.)
bool is_convex_geometry(const SetSystem& s);

// Complements of the members of a convex geometry.
bool is_antimatroid(const SetSystem& s);

// The containment image of a lattice through eta: player k+1 stands for the
// k-th join-irreducible, and each element maps to the set of irreducibles
// below it. Fails if the image is not injective (corrupted input).
struct LatticeImage {
  SetSystem system;
  std::vector<ElementId> irreducibles;  // J(L), ascending; defines players
  std::vector<Mask> eta_of;             // per lattice element
  std::vector<ElementId> element_of;    // family position -> lattice element
};
LatticeImage from_lattice(const BoundedLattice& l);

std::vector<MaximalChain> enumerate_maximal_chains(
    const SetSystem& s, std::uint64_t budget = kDefaultChainBudget);
BigInt count_maximal_chains(const SetSystem& s);

// "-" for the empty set; players as concatenated digits for n <= 9 and as
// "{1,5,12}" beyond.
std::string subset_label(Mask m, int n);
Mask parse_subset_label(const std::string& text, int n);

}  // namespace latcap
