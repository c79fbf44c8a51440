#pragma once

// Shapley values and entropies. Every chain-average quantity here is a
// weighted sum over cover edges: the weight of an edge is the fraction of
// maximal chains passing through it, computed exactly from the two-sided
// path counts. The per-edge sum and the per-chain average are the same
// total grouped differently.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latcap/capacity.hpp"
#include "latcap/common.hpp"

namespace latcap {

// -x log2 x, zero at and below zero.
double entropy_term(double x);
// x log2 (x/y); zero when x is zero, +infinity when y vanishes under a
// positive x.
double relative_entropy_term(double x, double y);

// Shannon entropy of a probability vector (entries >= 0, sum 1 up to 1e-9).
double shannon_entropy(std::span<const double> p);
// Relative entropy D(p || q); +infinity when q lacks mass somewhere p has it.
double shannon_relative(std::span<const double> p, std::span<const double> q);

struct ShapleyVector {
  enum class Index { players, join_irreducibles, meet_irreducibles };
  Index index_kind = Index::players;
  // For players: 1..n. For irreducibles: lattice element ids.
  std::vector<int> ids;
  std::vector<std::string> labels;
  std::vector<double> phi;

  double sum() const;
};

// Weighted-marginal form on the full powerset; O(n 2^n), n <= 20.
ShapleyVector shapley_classical(const Capacity& v);
// Chain-average form on a regular set system, indexed by players.
ShapleyVector shapley_chain(const Capacity& v);
// Chain-average form on a lattice graded by eta, indexed by the
// join-irreducible introduced at each step.
ShapleyVector shapley_lattice(const Capacity& v);
// Dual form, indexed by the meet-irreducible dropped at each step.
ShapleyVector shapley_lattice_dual(const Capacity& v);

// Entropy as the expected per-step entropy term over all subsets, on the
// full powerset; O(n 2^n), n <= 20.
double marichal_entropy_direct(const Capacity& v);

struct EntropyOptions {
  bool per_chain = false;
  std::uint64_t chain_budget = kDefaultChainBudget;
};

struct EntropyReport {
  double bits = 0;
  BigInt chain_count;
  // (chain, Shannon entropy of its increments); filled on request. The mean
  // of these equals bits.
  std::vector<std::pair<MaximalChain, double>> per_chain;
};

// Mean Shannon entropy of the chain increments over all maximal chains.
// Structure must be a regular set system or a lattice graded by eta or its
// dual.
EntropyReport entropy(const Capacity& v, const EntropyOptions& opts = {});

// Mean relative entropy of v's chain increments against u's; +infinity when
// u's increments vanish somewhere v's do not.
double relative_entropy(const Capacity& v, const Capacity& u);

// One cover edge with its exact chain fraction.
struct EdgeTerm {
  ElementId lo = kNoElement, hi = kNoElement;
  Rational weight;
};

// H(v) = sum of weight * entropy_term(v(hi) - v(lo)); same preconditions as
// entropy().
std::vector<EdgeTerm> entropy_expansion(const StructureRef& s);

// phi[k] = sum of that index's terms, weight * (v(hi) - v(lo)).
struct ShapleyExpansion {
  ShapleyVector::Index index_kind = ShapleyVector::Index::players;
  std::vector<int> ids;
  std::vector<std::string> labels;
  std::vector<std::vector<EdgeTerm>> terms;  // per index
};

ShapleyExpansion shapley_chain_expansion(const SetSystem& s);
ShapleyExpansion shapley_lattice_expansion(const BoundedLattice& l);
ShapleyExpansion shapley_lattice_dual_expansion(const BoundedLattice& l);

// Exact evaluation against element values given as rationals.
std::vector<Rational> evaluate_exact(const ShapleyExpansion& e,
                                     std::span<const Rational> values);

}  // namespace latcap
