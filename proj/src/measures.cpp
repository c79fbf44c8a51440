#include "latcap/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "latcap/lattice.hpp"
#include "latcap/set_system.hpp"

namespace latcap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_double(const Rational& r) { return r.convert_to<double>(); }

// Index of every powerset member by its mask; members are not stored in mask
// order.
std::vector<ElementId> mask_index(const SetSystem& s) {
  std::vector<ElementId> idx(std::size_t{1} << s.ground_size(), kNoElement);
  for (ElementId e = 0; e < ElementId(s.size()); ++e) idx[s.member(e)] = e;
  return idx;
}

void require_classical(const Capacity& v, const char* what) {
  const auto* sys = as_set_system(v.structure());
  if (sys == nullptr || !(*sys)->is_full_powerset())
    throw PreconditionError(std::string(what) +
                            " requires the full powerset of the players");
}

// Exact fraction of maximal chains through each cover edge.
struct EdgeWeights {
  const HasseDiagram* hasse = nullptr;
  std::vector<Rational> weight;  // aligned with hasse->covers
  BigInt total;
};

EdgeWeights edge_weights(const StructureRef& s) {
  EdgeWeights out;
  if (const auto* sys = as_set_system(s)) {
    if (!(*sys)->has_hasse())
      throw PreconditionError("set system exceeds the cover graph limit");
    out.hasse = &(*sys)->hasse();
    std::vector<ElementId> topo((*sys)->size());
    std::iota(topo.begin(), topo.end(), 0);
    auto counts = count_chains_through_edges(*out.hasse, topo,
                                             (*sys)->bottom(), (*sys)->top());
    out.total = counts.total;
    out.weight.reserve(counts.through.size());
    for (const BigInt& t : counts.through)
      out.weight.emplace_back(t, counts.total);
  } else {
    const auto& lat = **as_lattice(s);
    out.hasse = &lat.hasse();
    auto topo = lat.poset().linear_extension();
    auto counts =
        count_chains_through_edges(*out.hasse, topo, lat.bottom(), lat.top());
    out.total = counts.total;
    out.weight.reserve(counts.through.size());
    for (const BigInt& t : counts.through)
      out.weight.emplace_back(t, counts.total);
  }
  return out;
}

void require_graded(const StructureRef& s, const char* what) {
  if (const auto* sys = as_set_system(s)) {
    if (!is_regular(**sys))
      throw PreconditionError(std::string(what) +
                              " requires a regular set system");
  } else {
    const auto& lat = **as_lattice(s);
    if (!is_vee_minimal_regular(lat) && !is_wedge_minimal_regular(lat))
      throw PreconditionError(
          std::string(what) +
          " requires a lattice whose chains track the irreducibles");
  }
}

void require_capacity(const Capacity& v, const char* what) {
  if (v.is_game())
    throw PreconditionError(std::string(what) +
                            " requires a normalized capacity, not a game");
}

double increment(const Capacity& v, ElementId lo, ElementId hi) {
  return std::max(0.0, v[hi] - v[lo]);
}

}  // namespace

double entropy_term(double x) {
  if (x <= 0) return 0;
  return -x * std::log2(x);
}

double relative_entropy_term(double x, double y) {
  if (x <= 0) return 0;
  if (y <= 0) return kInf;
  return x * std::log2(x / y);
}

double shannon_entropy(std::span<const double> p) {
  double sum = 0, h = 0;
  for (double x : p) {
    if (x < -kValueTolerance)
      throw PreconditionError("probability vector has a negative entry");
    sum += x;
    h += entropy_term(x);
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw PreconditionError("probability vector does not sum to one");
  return h;
}

double shannon_relative(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw PreconditionError("probability vectors differ in length");
  double sp = 0, sq = 0, d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < -kValueTolerance || q[i] < -kValueTolerance)
      throw PreconditionError("probability vector has a negative entry");
    sp += p[i];
    sq += q[i];
    d += relative_entropy_term(std::max(0.0, p[i]), std::max(0.0, q[i]));
  }
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
    throw PreconditionError("probability vector does not sum to one");
  return d;
}

double ShapleyVector::sum() const {
  double s = 0;
  for (double x : phi) s += x;
  return s;
}

ShapleyVector shapley_classical(const Capacity& v) {
  require_classical(v, "classical Shapley");
  const SetSystem& s = **as_set_system(v.structure());
  const int n = s.ground_size();
  const auto idx = mask_index(s);

  // gamma[k] = 1 / (n * C(n-1, k)), the weight of a coalition of size k.
  std::vector<double> gamma(static_cast<std::size_t>(n));
  double binom = 1;
  for (int k = 0; k < n; ++k) {
    gamma[static_cast<std::size_t>(k)] = 1.0 / (n * binom);
    binom = binom * (n - 1 - k) / (k + 1);
  }

  ShapleyVector out;
  out.index_kind = ShapleyVector::Index::players;
  const auto total = Mask{1} << n;
  for (int i = 1; i <= n; ++i) {
    const Mask bit = Mask{1} << (i - 1);
    double phi = 0;
    for (Mask a = 0; a < total; ++a) {
      if (a & bit) continue;
      phi += gamma[static_cast<std::size_t>(std::popcount(a))] *
             (v[idx[a | bit]] - v[idx[a]]);
    }
    out.ids.push_back(i);
    out.labels.push_back(std::to_string(i));
    out.phi.push_back(phi);
  }
  return out;
}

double marichal_entropy_direct(const Capacity& v) {
  require_classical(v, "direct entropy");
  require_capacity(v, "direct entropy");
  const SetSystem& s = **as_set_system(v.structure());
  const int n = s.ground_size();
  const auto idx = mask_index(s);

  std::vector<double> gamma(static_cast<std::size_t>(n));
  double binom = 1;
  for (int k = 0; k < n; ++k) {
    gamma[static_cast<std::size_t>(k)] = 1.0 / (n * binom);
    binom = binom * (n - 1 - k) / (k + 1);
  }

  double h = 0;
  const auto total = Mask{1} << n;
  for (int i = 1; i <= n; ++i) {
    const Mask bit = Mask{1} << (i - 1);
    for (Mask a = 0; a < total; ++a) {
      if (a & bit) continue;
      h += gamma[static_cast<std::size_t>(std::popcount(a))] *
           entropy_term(v[idx[a | bit]] - v[idx[a]]);
    }
  }
  return h;
}

ShapleyExpansion shapley_chain_expansion(const SetSystem& s) {
  if (!is_regular(s))
    throw PreconditionError("chain Shapley requires a regular set system");
  if (!s.has_hasse())
    throw PreconditionError("set system exceeds the cover graph limit");
  const HasseDiagram& h = s.hasse();
  std::vector<ElementId> topo(s.size());
  std::iota(topo.begin(), topo.end(), 0);
  auto counts = count_chains_through_edges(h, topo, s.bottom(), s.top());

  ShapleyExpansion out;
  out.index_kind = ShapleyVector::Index::players;
  const int n = s.ground_size();
  out.terms.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    out.ids.push_back(i);
    out.labels.push_back(std::to_string(i));
  }
  for (std::size_t e = 0; e < h.covers.size(); ++e) {
    auto [lo, hi] = h.covers[e];
    const Mask gain = s.member(hi) & ~s.member(lo);
    const int player = std::countr_zero(gain) + 1;
    out.terms[static_cast<std::size_t>(player - 1)].push_back(
        EdgeTerm{lo, hi, Rational(counts.through[e], counts.total)});
  }
  return out;
}

ShapleyExpansion shapley_lattice_expansion(const BoundedLattice& l) {
  if (!is_vee_minimal_regular(l))
    throw PreconditionError(
        "lattice Shapley requires chains that gain one join-irreducible per "
        "step");
  const auto irr = join_irreducibles(l);
  const auto eta = eta_all(l, irr);
  const HasseDiagram& h = l.hasse();
  auto topo = l.poset().linear_extension();
  auto counts = count_chains_through_edges(h, topo, l.bottom(), l.top());

  ShapleyExpansion out;
  out.index_kind = ShapleyVector::Index::join_irreducibles;
  out.terms.resize(irr.size());
  for (ElementId j : irr) {
    out.ids.push_back(j);
    out.labels.push_back(l.label(j));
  }
  for (std::size_t e = 0; e < h.covers.size(); ++e) {
    auto [lo, hi] = h.covers[e];
    const IrredSet gain = eta[static_cast<std::size_t>(hi)] &
                          ~eta[static_cast<std::size_t>(lo)];
    const int pos = std::countr_zero(gain);
    out.terms[static_cast<std::size_t>(pos)].push_back(
        EdgeTerm{lo, hi, Rational(counts.through[e], counts.total)});
  }
  return out;
}

ShapleyExpansion shapley_lattice_dual_expansion(const BoundedLattice& l) {
  if (!is_wedge_minimal_regular(l))
    throw PreconditionError(
        "dual lattice Shapley requires chains that drop one meet-irreducible "
        "per step");
  const auto irr = meet_irreducibles(l);
  const auto etad = eta_dual_all(l, irr);
  const HasseDiagram& h = l.hasse();
  auto topo = l.poset().linear_extension();
  auto counts = count_chains_through_edges(h, topo, l.bottom(), l.top());

  ShapleyExpansion out;
  out.index_kind = ShapleyVector::Index::meet_irreducibles;
  out.terms.resize(irr.size());
  for (ElementId j : irr) {
    out.ids.push_back(j);
    out.labels.push_back(l.label(j));
  }
  for (std::size_t e = 0; e < h.covers.size(); ++e) {
    auto [lo, hi] = h.covers[e];
    const IrredSet drop = etad[static_cast<std::size_t>(lo)] &
                          ~etad[static_cast<std::size_t>(hi)];
    const int pos = std::countr_zero(drop);
    out.terms[static_cast<std::size_t>(pos)].push_back(
        EdgeTerm{lo, hi, Rational(counts.through[e], counts.total)});
  }
  return out;
}

std::vector<EdgeTerm> entropy_expansion(const StructureRef& s) {
  require_graded(s, "entropy");
  auto ew = edge_weights(s);
  std::vector<EdgeTerm> out;
  out.reserve(ew.hasse->covers.size());
  for (std::size_t e = 0; e < ew.hasse->covers.size(); ++e) {
    auto [lo, hi] = ew.hasse->covers[e];
    out.push_back(EdgeTerm{lo, hi, ew.weight[e]});
  }
  return out;
}

std::vector<Rational> evaluate_exact(const ShapleyExpansion& e,
                                     std::span<const Rational> values) {
  std::vector<Rational> out;
  out.reserve(e.terms.size());
  for (const auto& terms : e.terms) {
    Rational phi = 0;
    for (const EdgeTerm& t : terms) {
      phi += t.weight * (values[static_cast<std::size_t>(t.hi)] -
                         values[static_cast<std::size_t>(t.lo)]);
    }
    out.push_back(std::move(phi));
  }
  return out;
}

namespace {

ShapleyVector evaluate(const ShapleyExpansion& e, const Capacity& v) {
  ShapleyVector out;
  out.index_kind = e.index_kind;
  out.ids = e.ids;
  out.labels = e.labels;
  out.phi.reserve(e.terms.size());
  for (const auto& terms : e.terms) {
    double phi = 0;
    for (const EdgeTerm& t : terms)
      phi += to_double(t.weight) * (v[t.hi] - v[t.lo]);
    out.phi.push_back(phi);
  }
  return out;
}

}  // namespace

ShapleyVector shapley_chain(const Capacity& v) {
  const auto* sys = as_set_system(v.structure());
  if (sys == nullptr)
    throw PreconditionError("chain Shapley runs on set systems; use the "
                            "lattice forms otherwise");
  auto e = shapley_chain_expansion(**sys);
  return evaluate(e, v);
}

ShapleyVector shapley_lattice(const Capacity& v) {
  const auto* lat = as_lattice(v.structure());
  if (lat == nullptr)
    throw PreconditionError("lattice Shapley needs a lattice structure");
  auto e = shapley_lattice_expansion(**lat);
  return evaluate(e, v);
}

ShapleyVector shapley_lattice_dual(const Capacity& v) {
  const auto* lat = as_lattice(v.structure());
  if (lat == nullptr)
    throw PreconditionError("dual lattice Shapley needs a lattice structure");
  auto e = shapley_lattice_dual_expansion(**lat);
  return evaluate(e, v);
}

EntropyReport entropy(const Capacity& v, const EntropyOptions& opts) {
  require_capacity(v, "entropy");
  require_graded(v.structure(), "entropy");
  auto ew = edge_weights(v.structure());

  EntropyReport out;
  out.chain_count = ew.total;
  for (std::size_t e = 0; e < ew.hasse->covers.size(); ++e) {
    auto [lo, hi] = ew.hasse->covers[e];
    out.bits += to_double(ew.weight[e]) * entropy_term(increment(v, lo, hi));
  }

  if (opts.per_chain) {
    for_each_maximal_chain(
        *ew.hasse, structure_bottom(v.structure()), structure_top(v.structure()),
        [&](const MaximalChain& c) {
          double h = 0;
          for (std::size_t i = 0; i + 1 < c.size(); ++i)
            h += entropy_term(increment(v, c[i], c[i + 1]));
          out.per_chain.emplace_back(c, h);
        },
        opts.chain_budget);
  }
  return out;
}

double relative_entropy(const Capacity& v, const Capacity& u) {
  require_capacity(v, "relative entropy");
  require_capacity(u, "relative entropy");
  if (!same_structure(v.structure(), u.structure()))
    throw PreconditionError(
        "relative entropy needs both capacities on one structure");
  require_graded(v.structure(), "relative entropy");
  auto ew = edge_weights(v.structure());

  double d = 0;
  for (std::size_t e = 0; e < ew.hasse->covers.size(); ++e) {
    auto [lo, hi] = ew.hasse->covers[e];
    d += to_double(ew.weight[e]) *
         relative_entropy_term(increment(v, lo, hi), increment(u, lo, hi));
  }
  return d;
}

}  // namespace latcap
