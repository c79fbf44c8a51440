#include "latcap/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace latcap {

std::size_t structure_size(const StructureRef& s) {
  if (auto* ss = as_set_system(s)) return (*ss)->size();
  return std::get<LatticePtr>(s)->size();
}

ElementId structure_bottom(const StructureRef& s) {
  if (auto* ss = as_set_system(s)) return (*ss)->bottom();
  return std::get<LatticePtr>(s)->bottom();
}

ElementId structure_top(const StructureRef& s) {
  if (auto* ss = as_set_system(s)) return (*ss)->top();
  return std::get<LatticePtr>(s)->top();
}

const HasseDiagram& structure_hasse(const StructureRef& s) {
  if (auto* ss = as_set_system(s)) return (*ss)->hasse();
  return std::get<LatticePtr>(s)->hasse();
}

std::string structure_label(const StructureRef& s, ElementId a) {
  if (auto* ss = as_set_system(s)) return (*ss)->member_label(a);
  return std::get<LatticePtr>(s)->label(a);
}

std::vector<ElementId> structure_linear_extension(const StructureRef& s) {
  if (auto* ss = as_set_system(s)) {
    // Canonical (cardinality, value) order is already a linear extension.
    std::vector<ElementId> order((*ss)->size());
    std::iota(order.begin(), order.end(), 0);
    return order;
  }
  return std::get<LatticePtr>(s)->poset().linear_extension();
}

bool same_structure(const StructureRef& a, const StructureRef& b) {
  if (auto* sa = as_set_system(a)) {
    auto* sb = as_set_system(b);
    if (!sb) return false;
    return *sa == *sb || **sa == **sb;
  }
  auto* la = as_lattice(a);
  auto* lb = as_lattice(b);
  if (!lb) return false;
  return *la == *lb || (*la)->same_order_as(**lb);
}

std::optional<ValidationIssue> check_set_function(const StructureRef& s,
                                                  std::span<const double> values,
                                                  SetFunctionKind kind, double tol) {
  const std::size_t m = structure_size(s);
  if (values.size() != m)
    return ValidationIssue{"expected " + std::to_string(m) + " values, got " +
                           std::to_string(values.size())};
  for (std::size_t i = 0; i < m; ++i)
    if (!std::isfinite(values[i]))
      return ValidationIssue{"value at '" + structure_label(s, ElementId(i)) +
                                 "' is not finite",
                             ElementId(i)};
  const ElementId bottom = structure_bottom(s);
  if (std::abs(values[bottom]) > tol)
    return ValidationIssue{"bottom must carry 0, got " +
                               std::to_string(values[bottom]),
                           bottom};
  if (kind == SetFunctionKind::game) return std::nullopt;
  const ElementId top = structure_top(s);
  if (std::abs(values[top] - 1.0) > tol)
    return ValidationIssue{"top must carry 1, got " + std::to_string(values[top]),
                           top};
  for (std::size_t i = 0; i < m; ++i)
    if (values[i] < -tol || values[i] > 1.0 + tol)
      return ValidationIssue{"value " + std::to_string(values[i]) + " at '" +
                                 structure_label(s, ElementId(i)) +
                                 "' outside [0, 1]",
                             ElementId(i)};
  // Monotone along covers is monotone along the order.
  if (auto* ss = as_set_system(s); ss && (*ss)->is_full_powerset()) {
    const int n = (*ss)->ground_size();
    for (std::size_t i = 0; i < m; ++i) {
      const Mask a = (*ss)->member(ElementId(i));
      for (int p = 0; p < n; ++p) {
        if (a >> p & 1u) continue;
        const ElementId j = (*ss)->index_of(a | (Mask{1} << p));
        if (values[i] > values[j] + tol)
          return ValidationIssue{"monotonicity fails: v('" +
                                     structure_label(s, ElementId(i)) + "') > v('" +
                                     structure_label(s, j) + "')",
                                 ElementId(i), j};
      }
    }
    return std::nullopt;
  }
  for (auto [lo, hi] : structure_hasse(s).covers)
    if (values[lo] > values[hi] + tol)
      return ValidationIssue{"monotonicity fails: v('" + structure_label(s, lo) +
                                 "') > v('" + structure_label(s, hi) + "')",
                             lo, hi};
  return std::nullopt;
}

Capacity Capacity::create(StructureRef s, std::vector<double> values,
                          SetFunctionKind kind, double tol) {
  if (auto issue = check_set_function(s, values, kind, tol))
    throw InvalidCapacity(issue->message);
  return Capacity(std::move(s), std::move(values), kind);
}

namespace {

// rank(x): |A| on a set system, |eta(x)| on a lattice. The lattice caller
// needs the irreducible count as well.
std::pair<std::vector<int>, int> structure_ranks(const StructureRef& s) {
  if (auto* ss = as_set_system(s)) {
    std::vector<int> ranks((*ss)->size());
    for (std::size_t i = 0; i < ranks.size(); ++i)
      ranks[i] = std::popcount((*ss)->member(ElementId(i)));
    return {std::move(ranks), (*ss)->ground_size()};
  }
  const auto& l = *std::get<LatticePtr>(s);
  const auto irr = join_irreducibles(l);
  const auto masks = eta_all(l, irr);
  std::vector<int> ranks(l.size());
  for (std::size_t i = 0; i < ranks.size(); ++i)
    ranks[i] = std::popcount(masks[i]);
  return {std::move(ranks), int(irr.size())};
}

bool structure_graded(const StructureRef& s) {
  if (auto* ss = as_set_system(s)) return is_regular(**ss);
  return is_vee_minimal_regular(*std::get<LatticePtr>(s));
}

}  // namespace

Capacity additive_uniform(StructureRef s) {
  if (!structure_graded(s))
    throw PreconditionError(
        "uniform capacity needs a regular set system or an eta-graded lattice");
  auto [ranks, n] = structure_ranks(s);
  std::vector<double> values(ranks.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = double(ranks[i]) / double(n);
  return Capacity::create(std::move(s), std::move(values));
}

Capacity cardinality_based(StructureRef s, std::span<const double> levels) {
  auto [ranks, n] = structure_ranks(s);
  if (levels.size() != std::size_t(n) + 1)
    throw PreconditionError("expected " + std::to_string(n + 1) + " levels, got " +
                            std::to_string(levels.size()));
  if (std::abs(levels[0]) > kValueTolerance ||
      std::abs(levels[n] - 1.0) > kValueTolerance)
    throw PreconditionError("levels must run from 0 to 1");
  for (std::size_t k = 1; k < levels.size(); ++k)
    if (levels[k] < levels[k - 1] - kValueTolerance)
      throw PreconditionError("levels must be nondecreasing");
  std::vector<double> values(ranks.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = levels[ranks[i]];
  return Capacity::create(std::move(s), std::move(values));
}

ChainDistribution chain_distribution(const Capacity& v, const MaximalChain& chain) {
  const auto& s = v.structure();
  const auto& h = structure_hasse(s);
  if (chain.empty() || chain.front() != structure_bottom(s) ||
      chain.back() != structure_top(s))
    throw PreconditionError("chain must run from bottom to top");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (h.edge_index(chain[i], chain[i + 1]) < 0)
      throw PreconditionError("step ('" + structure_label(s, chain[i]) + "', '" +
                              structure_label(s, chain[i + 1]) +
                              "') is not a cover");
  ChainDistribution d{chain, {}};
  d.probs.reserve(chain.size() - 1);
  double sum = 0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const double p = v[chain[i + 1]] - v[chain[i]];
    if (p < -kValueTolerance)
      throw InvalidCapacity("negative increment at step '" +
                            structure_label(s, chain[i + 1]) + "'");
    d.probs.push_back(p);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidCapacity("chain increments sum to " + std::to_string(sum));
  return d;
}

Capacity blend(const Capacity& v, const Capacity& u, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw PreconditionError("lambda must lie in [0, 1]");
  if (!same_structure(v.structure(), u.structure()))
    throw PreconditionError("blend needs both capacities on the same structure");
  if (v.is_game() || u.is_game())
    throw PreconditionError("blend is defined for capacities");
  std::vector<double> values(v.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = (1.0 - lambda) * v[ElementId(i)] + lambda * u[ElementId(i)];
  // Floating blends drift; validate at a looser tolerance.
  return Capacity::create(v.structure(), std::move(values),
                          SetFunctionKind::capacity, 1e-9);
}

Capacity blend_with_uniform(const Capacity& v, double lambda) {
  return blend(v, additive_uniform(v.structure()), lambda);
}

}  // namespace latcap
