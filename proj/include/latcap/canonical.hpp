#pragma once

// Stock structures with closed-form combinatorics: the Boolean lattice, the
// bipolar pair lattice over disjoint subset pairs, and products of player
// level chains. Each constructor also carries the id layout needed to
// address elements directly, and the per-edge coefficient formulas are
// exposed as exact rationals so tests can compare them with literal chain
// enumeration.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latcap/capacity.hpp"
#include "latcap/common.hpp"
#include "latcap/lattice.hpp"
#include "latcap/set_system.hpp"

namespace latcap {

BigInt factorial(int n);
BigInt binomial(int n, int k);  // 0 outside 0 <= k <= n

// All 2^n subsets ordered by containment, as an explicit lattice with
// subset labels; join is union, meet is intersection. n <= 12, the dense
// table budget. Larger player counts stay on SetSystem::full_powerset.
BoundedLattice boolean_lattice(int n);

// All 2^n subsets as a set system; n <= 20.
SetSystem powerset_system(int n);

// Pairs (A, B) of disjoint player subsets, ordered by growing A and
// shrinking B: bottom (empty, N), top (N, empty). Distributive; its
// join-irreducibles are the pairs (empty, N\i) and ({i}, N\i).
struct BicapacityLattice {
  LatticePtr lattice;
  int players = 0;
  std::vector<std::pair<Mask, Mask>> pair_of;  // per element id

  ElementId id_of(Mask a, Mask b) const;
};

BicapacityLattice bicapacity_lattice(int n);  // 1 <= n <= 6

// (2n)!/2^n, the number of maximal chains of the pair lattice.
BigInt bicapacity_chain_count(int n);

// Bipolar values raw[e] per element, monotone, raw = -1 at bottom, 0 at
// (empty, empty), 1 at top; returns the capacity (raw+1)/2.
Capacity bicapacity_normalize(const BicapacityLattice& q,
                              std::span<const double> raw);

// Fraction of maximal chains through an edge that adds one player to a
// positive side of size k against a negative side of size l:
// (n-k+l-1)! (n+k-l)! 2^(n-k-l) / (2n)!. Requires k, l >= 0 and
// k + l <= n-1, the reachable index range.
Rational gamma_bicap(int n, int k, int l);

struct BipolarShapley {
  std::vector<double> positive;  // per player 1..n
  std::vector<double> negative;
  std::vector<double> total;     // positive + negative
};

// Closed-form double sums over disjoint (A, B) pairs; v must live on
// q.lattice. positive[i-1] is the share of the irreducible ({i}, N\i),
// negative[i-1] that of (empty, N\i).
BipolarShapley bicapacity_shapley(const BicapacityLattice& q,
                                  const Capacity& v);
// Closed-form entropy over the same sums, in bits.
double bicapacity_entropy(const BicapacityLattice& q, const Capacity& v);

// Product of chains 0..levels[i] per player, ordered componentwise; join
// and meet are componentwise max and min. Element ids are the mixed-radix
// encoding with the last player fastest.
struct MultichoiceLattice {
  LatticePtr lattice;
  std::vector<int> levels;
  std::vector<std::vector<int>> point_of;  // per element id

  ElementId id_of(std::span<const int> point) const;
};

// levels[i] >= 1 each; product of (levels[i]+1) within the lattice budget.
MultichoiceLattice multichoice_lattice(std::vector<int> levels);

// (sum levels)! / prod(levels[i]!), the number of maximal chains.
BigInt multichoice_chain_count(std::span<const int> levels);

// Fraction of maximal chains through the edge that raises player i (1-based)
// by one step into point: prod_k C(levels[k], point[k]) /
// C(sum levels, sum point) * point[i-1] / sum point.
// Requires 1 <= i <= n and point[i-1] >= 1.
Rational xi_coefficient(std::span<const int> levels, std::span<const int> point,
                        int i);

struct MultichoiceShapley {
  // per_level[i-1][j-1] = share of player i stepping from level j-1 to j.
  std::vector<std::vector<double>> per_level;
  std::vector<double> total;  // per player, summed over its levels
};

MultichoiceShapley multichoice_shapley(const MultichoiceLattice& l,
                                       const Capacity& v);
double multichoice_entropy(const MultichoiceLattice& l, const Capacity& v);

// Transfers v across the pair-to-profile bijection (level 0 = negative,
// 1 = absent, 2 = positive) and checks that both closed-form Shapley
// vectors and both entropies agree within tol.
bool bicap_as_multichoice_check(const BicapacityLattice& q, const Capacity& v,
                                double tol = 1e-12);

}  // namespace latcap
