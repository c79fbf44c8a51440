#pragma once

// Brute-force reference implementations and the randomized property
// harness. Everything here recomputes from first principles: chains by
// recursion over minimal strict upper bounds of the raw order (no cover
// graph reuse), averages by literally walking every chain, irreducibles by
// their defining quantifiers. Agreement with the main implementations is
// the library's primary correctness evidence.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "latcap/capacity.hpp"
#include "latcap/common.hpp"
#include "latcap/measures.hpp"
#include "latcap/set_system.hpp"

namespace latcap::oracle {

inline constexpr std::uint64_t kOracleChainBudget = 1'000'000;

std::vector<MaximalChain> oracle_chains(
    const SetSystem& s, std::uint64_t budget = kOracleChainBudget);
std::vector<MaximalChain> oracle_chains(
    const BoundedLattice& l, std::uint64_t budget = kOracleChainBudget);

// Chain-walk averages. Set systems index by player; lattices by the
// join-irreducible gained per step (dual: meet-irreducible dropped), with
// irreducibility decided by the no-two-smaller-elements-join-to-it test.
ShapleyVector oracle_shapley(const Capacity& v,
                             std::uint64_t budget = kOracleChainBudget);
ShapleyVector oracle_shapley_dual(const Capacity& v,
                                  std::uint64_t budget = kOracleChainBudget);

double oracle_entropy(const Capacity& v,
                      std::uint64_t budget = kOracleChainBudget);
double oracle_relative_entropy(const Capacity& v, const Capacity& u,
                               std::uint64_t budget = kOracleChainBudget);

// Sorted uniform draws assigned along a linear extension, monotonicity
// repaired by a pointwise max over lower elements, bottom 0 and top 1.
// Deterministic per seed.
Capacity random_capacity(const StructureRef& s, std::uint64_t seed);

// Random family closed under intersection with one-point augmentation
// repaired greedily until stable. 1 <= n <= 8; deterministic per seed.
SetSystem random_convex_geometry(int n, std::uint64_t seed);

struct HarnessOptions {
  std::uint64_t seed = 20260816;
  int trials = 200;
  std::ostream* log = nullptr;  // progress lines when set
};

struct HarnessCheck {
  std::string name;
  int trials = 0;
  int failures = 0;
  int skipped = 0;  // vacuous cases (hypothesis not met)
  std::string detail;  // first failure
};

struct HarnessReport {
  std::vector<HarnessCheck> checks;
  // Structure and capacity of the first failing trial in the file format,
  // for replay.
  std::string artifact;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.failures) return false;
    return true;
  }
};

HarnessReport proposition_harness(const HarnessOptions& opts = {});

}  // namespace latcap::oracle
