#pragma once

// Set functions on a shared structure: capacities (normalized, monotone)
// and games (zero at bottom, otherwise unconstrained). Values are indexed
// by the structure's canonical element order.

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "latcap/common.hpp"
#include "latcap/lattice.hpp"
#include "latcap/set_system.hpp"

namespace latcap {

using SetSystemPtr = std::shared_ptr<const SetSystem>;
using LatticePtr = std::shared_ptr<const BoundedLattice>;
using StructureRef = std::variant<SetSystemPtr, LatticePtr>;

std::size_t structure_size(const StructureRef& s);
ElementId structure_bottom(const StructureRef& s);
ElementId structure_top(const StructureRef& s);
const HasseDiagram& structure_hasse(const StructureRef& s);
std::string structure_label(const StructureRef& s, ElementId a);
// A linear extension of the structure's order.
std::vector<ElementId> structure_linear_extension(const StructureRef& s);
// Same object or equal value.
bool same_structure(const StructureRef& a, const StructureRef& b);

inline const SetSystemPtr* as_set_system(const StructureRef& s) {
  return std::get_if<SetSystemPtr>(&s);
}
inline const LatticePtr* as_lattice(const StructureRef& s) {
  return std::get_if<LatticePtr>(&s);
}

enum class SetFunctionKind { capacity, game };

struct ValidationIssue {
  std::string message;
  ElementId a = kNoElement, b = kNoElement;  // offending pair, when one exists
};

inline constexpr double kValueTolerance = 1e-12;

// Empty result means the values form a valid capacity (or game) on the
// structure under the given tolerance. The first violation found is named.
std::optional<ValidationIssue> check_set_function(
    const StructureRef& s, std::span<const double> values, SetFunctionKind kind,
    double tol = kValueTolerance);

class Capacity {
public:
  // Throws InvalidCapacity with the violation message.
  static Capacity create(StructureRef s, std::vector<double> values,
                         SetFunctionKind kind = SetFunctionKind::capacity,
                         double tol = kValueTolerance);

  double operator[](ElementId a) const { return values_[a]; }
  std::span<const double> values() const { return values_; }
  const StructureRef& structure() const { return structure_; }
  SetFunctionKind kind() const { return kind_; }
  bool is_game() const { return kind_ == SetFunctionKind::game; }
  std::size_t size() const { return values_.size(); }

private:
  Capacity(StructureRef s, std::vector<double> v, SetFunctionKind k)
      : structure_(std::move(s)), values_(std::move(v)), kind_(k) {}

  StructureRef structure_;
  std::vector<double> values_;
  SetFunctionKind kind_;
};

// v*(x) = rank(x)/n, rank being |A| on a set system and |eta(x)| on a
// lattice. Requires a regular set system or a lattice whose chains are
// graded by eta (otherwise rejected).
Capacity additive_uniform(StructureRef s);

// v(x) = levels[rank(x)]; levels must run from 0 to 1 nondecreasing, one
// entry per rank.
Capacity cardinality_based(StructureRef s, std::span<const double> levels);

// Increments of a capacity along one maximal chain; a probability vector.
struct ChainDistribution {
  MaximalChain chain;
  std::vector<double> probs;
};
ChainDistribution chain_distribution(const Capacity& v, const MaximalChain& chain);

// (1-lambda) v + lambda v*.
Capacity blend_with_uniform(const Capacity& v, double lambda);
// (1-lambda) v + lambda u on the same structure.
Capacity blend(const Capacity& v, const Capacity& u, double lambda);

}  // namespace latcap
