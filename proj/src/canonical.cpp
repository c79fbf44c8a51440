#include "latcap/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "latcap/measures.hpp"

namespace latcap {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

namespace {

constexpr std::size_t kBooleanMax = 12;  // 2^12 = dense table budget

std::string pair_text(Mask a, Mask b, int n) {
  return "(" + subset_label(a, n) + "," + subset_label(b, n) + ")";
}

}  // namespace

BoundedLattice boolean_lattice(int n) {
  if (n < 1 || std::size_t(n) > kBooleanMax)
    throw PreconditionError("subset lattice supports 1..12 players");
  const std::size_t m = std::size_t{1} << n;

  // Same element order as SetSystem::full_powerset: by (cardinality, mask).
  std::vector<Mask> masks;
  masks.reserve(m);
  {
    SetSystem ps = SetSystem::full_powerset(n);
    masks = ps.family();
  }
  std::vector<ElementId> id(m);
  for (std::size_t e = 0; e < m; ++e) id[masks[e]] = ElementId(e);

  std::vector<std::string> labels;
  labels.reserve(m);
  for (Mask a : masks) labels.push_back(subset_label(a, n));

  BitMatrix up(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if ((masks[i] & ~masks[j]) == 0) up.set(i, j);

  std::vector<ElementId> join(m * m), meet(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      join[i * m + j] = id[masks[i] | masks[j]];
      meet[i * m + j] = id[masks[i] & masks[j]];
    }

  return assemble_lattice(make_trusted_poset(std::move(labels), std::move(up)),
                          std::move(join), std::move(meet));
}

SetSystem powerset_system(int n) { return SetSystem::full_powerset(n); }

ElementId BicapacityLattice::id_of(Mask a, Mask b) const {
  auto it = std::lower_bound(pair_of.begin(), pair_of.end(), std::pair{a, b});
  if (it == pair_of.end() || *it != std::pair{a, b})
    throw PreconditionError("no element for that subset pair");
  return ElementId(it - pair_of.begin());
}

BicapacityLattice bicapacity_lattice(int n) {
  if (n < 1 || n > 6)
    throw PreconditionError("pair lattice supports 1..6 players");
  const Mask full = (Mask{1} << n) - 1;

  BicapacityLattice out;
  out.players = n;
  for (Mask a = 0; a <= full; ++a)
    for (Mask b = 0; b <= full; ++b)
      if ((a & b) == 0) out.pair_of.emplace_back(a, b);
  const std::size_t m = out.pair_of.size();

  std::vector<std::string> labels;
  labels.reserve(m);
  for (auto [a, b] : out.pair_of) labels.push_back(pair_text(a, b, n));

  // (a1,b1) below (a2,b2) iff a1 within a2 and b1 contains b2.
  BitMatrix up(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto [a1, b1] = out.pair_of[i];
      auto [a2, b2] = out.pair_of[j];
      if ((a1 & ~a2) == 0 && (b2 & ~b1) == 0) up.set(i, j);
    }

  std::vector<ElementId> join(m * m), meet(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto [a1, b1] = out.pair_of[i];
      auto [a2, b2] = out.pair_of[j];
      join[i * m + j] = out.id_of(a1 | a2, b1 & b2);
      meet[i * m + j] = out.id_of(a1 & a2, b1 | b2);
    }

  out.lattice = std::make_shared<const BoundedLattice>(assemble_lattice(
      make_trusted_poset(std::move(labels), std::move(up)), std::move(join),
      std::move(meet)));

  if (out.lattice->bottom() != out.id_of(0, full) ||
      out.lattice->top() != out.id_of(full, 0))
    throw Error("pair lattice bounds are off");
  std::vector<ElementId> expected;
  for (int i = 0; i < n; ++i) {
    const Mask rest = full & ~(Mask{1} << i);
    expected.push_back(out.id_of(0, rest));
    expected.push_back(out.id_of(Mask{1} << i, rest));
  }
  std::sort(expected.begin(), expected.end());
  if (join_irreducibles(*out.lattice) != expected)
    throw Error("pair lattice irreducibles are off");
  return out;
}

BigInt bicapacity_chain_count(int n) {
  return factorial(2 * n) >> n;
}

Capacity bicapacity_normalize(const BicapacityLattice& q,
                              std::span<const double> raw) {
  const std::size_t m = q.pair_of.size();
  if (raw.size() != m)
    throw InvalidCapacity("bipolar value list does not match the lattice");
  const Mask full = (Mask{1} << q.players) - 1;
  const auto near = [](double x, double t) {
    return std::abs(x - t) <= kValueTolerance;
  };
  if (!near(raw[q.id_of(0, full)], -1))
    throw InvalidCapacity("bipolar values must be -1 at the bottom pair");
  if (!near(raw[q.id_of(full, 0)], 1))
    throw InvalidCapacity("bipolar values must be 1 at the top pair");
  if (!near(raw[q.id_of(0, 0)], 0))
    throw InvalidCapacity("bipolar values must be 0 at the neutral pair");

  std::vector<double> values(m);
  for (std::size_t e = 0; e < m; ++e) values[e] = 0.5 * raw[e] + 0.5;
  return Capacity::create(StructureRef{q.lattice}, std::move(values));
}

Rational gamma_bicap(int n, int k, int l) {
  if (n < 1 || k < 0 || l < 0 || k + l > n - 1)
    throw PreconditionError(
        "coefficient defined for k, l >= 0 with k + l < n");
  BigInt num = factorial(n - k + l - 1) * factorial(n + k - l);
  num <<= n - k - l;
  return Rational(num, factorial(2 * n));
}

namespace {

void require_on(const Capacity& v, const LatticePtr& lat, const char* what) {
  if (v.is_game())
    throw PreconditionError(std::string(what) + " requires a capacity");
  if (!same_structure(v.structure(), StructureRef{lat}))
    throw PreconditionError(std::string(what) +
                            " got a capacity on a different structure");
}

// gamma table indexed [k][l] as doubles, k + l <= n-1.
std::vector<std::vector<double>> gamma_table(int n) {
  std::vector<std::vector<double>> g(static_cast<std::size_t>(n));
  for (int k = 0; k <= n - 1; ++k) {
    g[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(n - k));
    for (int l = 0; k + l <= n - 1; ++l)
      g[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
          gamma_bicap(n, k, l).convert_to<double>();
  }
  return g;
}

// Calls fn(a, b, i, gamma) for every player i and disjoint pair (a, b)
// avoiding i.
template <class Fn>
void for_each_bipolar_term(int n, const std::vector<std::vector<double>>& g,
                           Fn&& fn) {
  const Mask full = (Mask{1} << n) - 1;
  for (int i = 1; i <= n; ++i) {
    const Mask bit = Mask{1} << (i - 1);
    const Mask rest = full & ~bit;
    Mask a = rest;
    while (true) {  // all submasks of rest, descending
      const Mask brest = rest & ~a;
      Mask b = brest;
      while (true) {
        fn(a, b, i,
           g[static_cast<std::size_t>(std::popcount(a))]
            [static_cast<std::size_t>(std::popcount(b))]);
        if (b == 0) break;
        b = (b - 1) & brest;
      }
      if (a == 0) break;
      a = (a - 1) & rest;
    }
  }
}

}  // namespace

BipolarShapley bicapacity_shapley(const BicapacityLattice& q,
                                  const Capacity& v) {
  require_on(v, q.lattice, "bipolar Shapley");
  const int n = q.players;
  BipolarShapley out;
  out.positive.assign(static_cast<std::size_t>(n), 0);
  out.negative.assign(static_cast<std::size_t>(n), 0);
  const auto g = gamma_table(n);
  for_each_bipolar_term(n, g, [&](Mask a, Mask b, int i, double w) {
    const Mask bit = Mask{1} << (i - 1);
    out.positive[static_cast<std::size_t>(i - 1)] +=
        w * (v[q.id_of(a | bit, b)] - v[q.id_of(a, b)]);
    out.negative[static_cast<std::size_t>(i - 1)] +=
        w * (v[q.id_of(b, a)] - v[q.id_of(b, a | bit)]);
  });
  out.total.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.total[static_cast<std::size_t>(i)] =
        out.positive[static_cast<std::size_t>(i)] +
        out.negative[static_cast<std::size_t>(i)];
  return out;
}

double bicapacity_entropy(const BicapacityLattice& q, const Capacity& v) {
  require_on(v, q.lattice, "bipolar entropy");
  double h = 0;
  const auto g = gamma_table(q.players);
  for_each_bipolar_term(q.players, g, [&](Mask a, Mask b, int i, double w) {
    const Mask bit = Mask{1} << (i - 1);
    h += w * (entropy_term(v[q.id_of(a | bit, b)] - v[q.id_of(a, b)]) +
              entropy_term(v[q.id_of(b, a)] - v[q.id_of(b, a | bit)]));
  });
  return h;
}

ElementId MultichoiceLattice::id_of(std::span<const int> point) const {
  if (point.size() != levels.size())
    throw PreconditionError("profile length does not match the player count");
  std::size_t id = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (point[k] < 0 || point[k] > levels[k])
      throw PreconditionError("profile level out of range");
    id = id * std::size_t(levels[k] + 1) + std::size_t(point[k]);
  }
  return ElementId(id);
}

MultichoiceLattice multichoice_lattice(std::vector<int> levels) {
  if (levels.empty())
    throw PreconditionError("product lattice needs at least one player");
  std::size_t m = 1;
  long long level_sum = 0;
  for (int l : levels) {
    if (l < 1) throw PreconditionError("every player needs a level of 1 or more");
    level_sum += l;
    m *= std::size_t(l) + 1;
    if (m > kDefaultLatticeBudget)
      throw PreconditionError("product lattice exceeds the element budget");
  }
  // Irreducible subsets are 64-bit masks downstream.
  if (level_sum > 64)
    throw PreconditionError("total level count above 64 is unsupported");
  const std::size_t n = levels.size();

  MultichoiceLattice out;
  out.levels = std::move(levels);
  out.point_of.resize(m);
  std::vector<std::string> labels(m);
  {
    std::vector<int> p(n, 0);
    for (std::size_t e = 0; e < m; ++e) {
      out.point_of[e] = p;
      std::string text = "(";
      for (std::size_t k = 0; k < n; ++k) {
        if (k) text += ',';
        text += std::to_string(p[k]);
      }
      text += ')';
      labels[e] = std::move(text);
      for (std::size_t k = n; k-- > 0;) {  // odometer, last player fastest
        if (++p[k] <= out.levels[k]) break;
        p[k] = 0;
      }
    }
  }

  BitMatrix up(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      bool below = true;
      for (std::size_t k = 0; k < n && below; ++k)
        below = out.point_of[i][k] <= out.point_of[j][k];
      if (below) up.set(i, j);
    }

  std::vector<ElementId> join(m * m), meet(m * m);
  std::vector<int> tmp(n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < n; ++k)
        tmp[k] = std::max(out.point_of[i][k], out.point_of[j][k]);
      join[i * m + j] = out.id_of(tmp);
      for (std::size_t k = 0; k < n; ++k)
        tmp[k] = std::min(out.point_of[i][k], out.point_of[j][k]);
      meet[i * m + j] = out.id_of(tmp);
    }

  out.lattice = std::make_shared<const BoundedLattice>(assemble_lattice(
      make_trusted_poset(std::move(labels), std::move(up)), std::move(join),
      std::move(meet)));

  const auto irr = join_irreducibles(*out.lattice);
  if (irr.size() != std::size_t(level_sum))
    throw Error("product lattice irreducible count is off");
  for (ElementId j : irr) {
    int active = 0;
    for (int x : out.point_of[std::size_t(j)]) active += x > 0;
    if (active != 1) throw Error("product lattice irreducibles are off");
  }
  if (count_maximal_chains(*out.lattice) != multichoice_chain_count(out.levels))
    throw Error("product lattice chain count is off");
  return out;
}

BigInt multichoice_chain_count(std::span<const int> levels) {
  int sum = 0;
  for (int l : levels) sum += l;
  BigInt c = factorial(sum);
  for (int l : levels) c /= factorial(l);
  return c;
}

Rational xi_coefficient(std::span<const int> levels, std::span<const int> point,
                        int i) {
  if (point.size() != levels.size())
    throw PreconditionError("profile length does not match the player count");
  if (i < 1 || std::size_t(i) > levels.size())
    throw PreconditionError("player index out of range");
  int lsum = 0, asum = 0;
  BigInt num = 1;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (point[k] < 0 || point[k] > levels[k])
      throw PreconditionError("profile level out of range");
    lsum += levels[k];
    asum += point[k];
    num *= binomial(levels[k], point[k]);
  }
  const int ai = point[std::size_t(i - 1)];
  if (ai < 1)
    throw PreconditionError("player must sit at level 1 or higher");
  num *= ai;
  return Rational(num, binomial(lsum, asum) * asum);
}

MultichoiceShapley multichoice_shapley(const MultichoiceLattice& l,
                                       const Capacity& v) {
  require_on(v, l.lattice, "product Shapley");
  const std::size_t n = l.levels.size();
  MultichoiceShapley out;
  out.per_level.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.per_level[k].assign(std::size_t(l.levels[k]), 0);

  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n - 1; k-- > 0;)
    stride[k] = stride[k + 1] * std::size_t(l.levels[k + 1] + 1);

  const std::size_t m = l.point_of.size();
  for (std::size_t e = 0; e < m; ++e) {
    const auto& p = l.point_of[e];
    for (std::size_t k = 0; k < n; ++k) {
      const int j = p[k];
      if (j < 1) continue;
      const double w =
          xi_coefficient(l.levels, p, int(k) + 1).convert_to<double>();
      const double dv = v[ElementId(e)] - v[ElementId(e - stride[k])];
      out.per_level[k][std::size_t(j - 1)] += w * dv;
    }
  }
  out.total.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (double x : out.per_level[k]) out.total[k] += x;
  return out;
}

double multichoice_entropy(const MultichoiceLattice& l, const Capacity& v) {
  require_on(v, l.lattice, "product entropy");
  const std::size_t n = l.levels.size();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n - 1; k-- > 0;)
    stride[k] = stride[k + 1] * std::size_t(l.levels[k + 1] + 1);

  double h = 0;
  const std::size_t m = l.point_of.size();
  for (std::size_t e = 0; e < m; ++e) {
    const auto& p = l.point_of[e];
    for (std::size_t k = 0; k < n; ++k) {
      if (p[k] < 1) continue;
      const double w =
          xi_coefficient(l.levels, p, int(k) + 1).convert_to<double>();
      h += w * entropy_term(v[ElementId(e)] - v[ElementId(e - stride[k])]);
    }
  }
  return h;
}

bool bicap_as_multichoice_check(const BicapacityLattice& q, const Capacity& v,
                                double tol) {
  require_on(v, q.lattice, "pair-to-product comparison");
  const int n = q.players;
  MultichoiceLattice mc = multichoice_lattice(std::vector<int>(std::size_t(n), 2));

  // (A, B) maps to the profile with level 2 on A, 0 on B, 1 elsewhere.
  std::vector<double> mvalues(mc.point_of.size());
  std::vector<int> p(static_cast<std::size_t>(n), 0);
  for (std::size_t e = 0; e < q.pair_of.size(); ++e) {
    auto [a, b] = q.pair_of[e];
    for (int k = 0; k < n; ++k) {
      const Mask bit = Mask{1} << k;
      p[std::size_t(k)] = (a & bit) ? 2 : (b & bit) ? 0 : 1;
    }
    mvalues[std::size_t(mc.id_of(p))] = v[ElementId(e)];
  }
  Capacity mv = Capacity::create(StructureRef{mc.lattice}, std::move(mvalues));

  const BipolarShapley bs = bicapacity_shapley(q, v);
  const MultichoiceShapley ms = multichoice_shapley(mc, mv);
  double dev = std::abs(bicapacity_entropy(q, v) - multichoice_entropy(mc, mv));
  for (std::size_t i = 0; i < std::size_t(n); ++i) {
    dev = std::max(dev, std::abs(bs.negative[i] - ms.per_level[i][0]));
    dev = std::max(dev, std::abs(bs.positive[i] - ms.per_level[i][1]));
  }
  return dev <= tol;
}

}  // namespace latcap
