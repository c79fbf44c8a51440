#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>

#include "latcap/canonical.hpp"
#include "latcap/measures.hpp"
#include "latcap/oracle.hpp"

using namespace latcap;

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(52, 5) == 2598960);
}

TEST_CASE("boolean lattice is the subset order") {
  auto l = boolean_lattice(4);
  CHECK(l.size() == 16);
  // Elements are laid out by (cardinality, mask); map masks back to ids.
  auto fam = SetSystem::full_powerset(4).family();
  std::vector<ElementId> id(16);
  for (std::size_t e = 0; e < fam.size(); ++e) id[fam[e]] = ElementId(e);
  CHECK(l.bottom() == id[0]);
  CHECK(l.top() == id[15]);
  for (Mask a = 0; a < 16; ++a)
    for (Mask b = 0; b < 16; ++b) {
      CHECK(l.join(id[a], id[b]) == id[a | b]);
      CHECK(l.meet(id[a], id[b]) == id[a & b]);
      CHECK(l.leq(id[a], id[b]) == ((a & ~b) == 0));
    }
  CHECK(join_irreducibles(l) ==
        std::vector<ElementId>{id[1], id[2], id[4], id[8]});
  CHECK(is_distributive(l));
  CHECK(is_vee_minimal_regular(l));
  CHECK(is_wedge_minimal_regular(l));
  CHECK(count_maximal_chains(l) == 24);
  CHECK(l.label(id[5]) == "13");

  CHECK_THROWS_AS(boolean_lattice(13), PreconditionError);
  CHECK_THROWS_AS(boolean_lattice(0), PreconditionError);
}

TEST_CASE("powerset chain counts are factorials") {
  for (int n = 1; n <= 6; ++n)
    CHECK(count_maximal_chains(powerset_system(n)) == factorial(n));
}

TEST_CASE("pair lattice layout") {
  auto q = bicapacity_lattice(2);
  CHECK(q.players == 2);
  CHECK(q.pair_of.size() == 9);
  const auto& l = *q.lattice;
  CHECK(l.size() == 9);

  const ElementId bot = q.id_of(0b00, 0b11);
  const ElementId top = q.id_of(0b11, 0b00);
  CHECK(l.bottom() == bot);
  CHECK(l.top() == top);
  CHECK(l.label(bot) == "(-,12)");
  CHECK(l.label(top) == "(12,-)");

  // Join grows the positive side and shrinks the negative side.
  const ElementId x = q.id_of(0b01, 0b10);  // ({1},{2})
  const ElementId y = q.id_of(0b10, 0b01);  // ({2},{1})
  CHECK(l.join(x, y) == top);
  CHECK(l.meet(x, y) == bot);
  const ElementId zero = q.id_of(0, 0);
  CHECK(l.join(q.id_of(0b01, 0), q.id_of(0, 0b01)) == q.id_of(0b01, 0));
  CHECK(l.meet(zero, x) == q.id_of(0, 0b10));

  CHECK(is_distributive(l));
  CHECK(is_vee_minimal_regular(l));
  CHECK(join_irreducibles(l).size() == 4);

  CHECK_THROWS_AS(bicapacity_lattice(0), PreconditionError);
  CHECK_THROWS_AS(bicapacity_lattice(7), PreconditionError);
}

TEST_CASE("pair lattice chain counts") {
  CHECK(bicapacity_chain_count(1) == 1);
  CHECK(bicapacity_chain_count(2) == 6);
  CHECK(bicapacity_chain_count(3) == 90);
  for (int n = 1; n <= 3; ++n)
    CHECK(count_maximal_chains(*bicapacity_lattice(n).lattice) ==
          bicapacity_chain_count(n));
}

TEST_CASE("pair edge coefficients") {
  // n = 2: adding a player to the positive side against negatives of size
  // l, in fractions of the 6 chains.
  CHECK(gamma_bicap(2, 0, 0) == Rational(1, 3));
  CHECK(gamma_bicap(2, 1, 0) == Rational(1, 2));
  CHECK(gamma_bicap(2, 0, 1) == Rational(1, 6));
  CHECK(gamma_bicap(1, 0, 0) == Rational(1));
  CHECK_THROWS_AS(gamma_bicap(2, 1, 1), PreconditionError);
  CHECK_THROWS_AS(gamma_bicap(2, -1, 0), PreconditionError);

  // From (empty, N) the only moves drop one player from the negative
  // side; those n edges carry all chains, and each such edge indexes as
  // (k, l) = (n-1, 0).
  for (int n = 1; n <= 6; ++n)
    CHECK(Rational(n) * gamma_bicap(n, n - 1, 0) == Rational(1));
}

TEST_CASE("pair normalization") {
  auto q = bicapacity_lattice(1);
  // Bottom (-,1), middle (-,-), top (1,-) in id order.
  const ElementId bot = q.id_of(0, 1), mid = q.id_of(0, 0), top = q.id_of(1, 0);
  std::vector<double> raw(3);
  raw[std::size_t(bot)] = -1;
  raw[std::size_t(mid)] = 0;
  raw[std::size_t(top)] = 1;
  auto v = bicapacity_normalize(q, raw);
  CHECK(v[bot] == 0.0);
  CHECK(v[mid] == 0.5);
  CHECK(v[top] == 1.0);

  raw[std::size_t(mid)] = 0.25;
  CHECK_THROWS_AS(bicapacity_normalize(q, raw), InvalidCapacity);
  raw[std::size_t(mid)] = 0;
  raw[std::size_t(bot)] = -0.5;
  CHECK_THROWS_AS(bicapacity_normalize(q, raw), InvalidCapacity);
}

namespace {

// Random monotone bipolar values: a random capacity on the pair lattice
// rescaled to [-1, 1] with the required zero at (empty, empty).
Capacity random_bipolar(const BicapacityLattice& q, std::uint64_t seed) {
  auto v = oracle::random_capacity(StructureRef{q.lattice}, seed);
  const ElementId zero = q.id_of(0, 0);
  const double z = v[zero];
  // Piecewise rescale [0,z] -> [-1,0] and [z,1] -> [0,1] keeps monotonicity.
  std::vector<double> raw(q.pair_of.size());
  for (std::size_t e = 0; e < raw.size(); ++e) {
    const double x = v[ElementId(e)];
    raw[e] = x <= z ? (z > 0 ? x / z - 1.0 : 0.0)
                    : (z < 1 ? (x - z) / (1.0 - z) : 1.0);
  }
  return bicapacity_normalize(q, raw);
}

}  // namespace

TEST_CASE("pair Shapley closed form equals the generic lattice walk") {
  for (int n = 1; n <= 3; ++n) {
    auto q = bicapacity_lattice(n);
    auto v = random_bipolar(q, 500 + std::uint64_t(n));
    auto bs = bicapacity_shapley(q, v);
    auto sv = shapley_lattice(v);

    REQUIRE(sv.phi.size() == 2 * std::size_t(n));
    const Mask full = (Mask{1} << n) - 1;
    for (int i = 1; i <= n; ++i) {
      const Mask rest = full & ~(Mask{1} << (i - 1));
      const ElementId pos = q.id_of(Mask{1} << (i - 1), rest);
      const ElementId neg = q.id_of(0, rest);
      double phi_pos = 0, phi_neg = 0;
      for (std::size_t k = 0; k < sv.ids.size(); ++k) {
        if (sv.ids[k] == pos) phi_pos = sv.phi[k];
        if (sv.ids[k] == neg) phi_neg = sv.phi[k];
      }
      CHECK(std::abs(bs.positive[std::size_t(i - 1)] - phi_pos) <= 1e-12);
      CHECK(std::abs(bs.negative[std::size_t(i - 1)] - phi_neg) <= 1e-12);
      CHECK(std::abs(bs.total[std::size_t(i - 1)] - phi_pos - phi_neg) <=
            1e-12);
    }
    CHECK(std::abs(bicapacity_entropy(q, v) - entropy(v).bits) <= 1e-12);
  }
}

TEST_CASE("level product lattice layout") {
  auto mc = multichoice_lattice({2, 3});
  const auto& l = *mc.lattice;
  CHECK(l.size() == 12);
  CHECK(mc.levels == std::vector<int>{2, 3});
  CHECK(join_irreducibles(l).size() == 5);
  CHECK(is_distributive(l));
  CHECK(is_vee_minimal_regular(l));
  CHECK(count_maximal_chains(l) == 10);
  CHECK(multichoice_chain_count(mc.levels) == 10);

  const std::vector<int> p{1, 2};
  const ElementId e = mc.id_of(p);
  CHECK(mc.point_of[std::size_t(e)] == p);
  CHECK(l.label(e) == "(1,2)");
  // Componentwise max and min.
  const ElementId a = mc.id_of(std::vector<int>{2, 0});
  const ElementId b = mc.id_of(std::vector<int>{0, 3});
  CHECK(l.join(a, b) == mc.id_of(std::vector<int>{2, 3}));
  CHECK(l.meet(a, b) == l.bottom());

  CHECK_THROWS_AS(multichoice_lattice({}), PreconditionError);
  CHECK_THROWS_AS(multichoice_lattice({2, 0}), PreconditionError);
  CHECK_THROWS_AS(multichoice_lattice({4, 4, 4, 4, 4, 4}), PreconditionError);
}

TEST_CASE("level chain counts") {
  CHECK(multichoice_chain_count(std::vector<int>{2, 3}) == 10);
  CHECK(multichoice_chain_count(std::vector<int>{1, 1, 1}) == 6);
  CHECK(multichoice_chain_count(std::vector<int>{3, 5}) == 56);
  CHECK(multichoice_chain_count(std::vector<int>{8}) == 1);
  for (auto levels : {std::vector<int>{2, 3}, std::vector<int>{2, 2, 2},
                      std::vector<int>{1, 4}})
    CHECK(count_maximal_chains(*multichoice_lattice(levels).lattice) ==
          multichoice_chain_count(levels));
}

TEST_CASE("level step coefficients") {
  const std::vector<int> levels{2, 3};
  // Player 2 steps into (1,2): C(2,1) C(3,2) / C(5,3) * 2/3 = 2/5, the
  // 4 of 10 chains through (1,1) -> (1,2).
  CHECK(xi_coefficient(levels, std::vector<int>{1, 2}, 2) == Rational(2, 5));
  // First steps out of (0,0).
  CHECK(xi_coefficient(levels, std::vector<int>{1, 0}, 1) == Rational(2, 5));
  CHECK(xi_coefficient(levels, std::vector<int>{0, 1}, 2) == Rational(3, 5));
  // Players are numbered from 1 and must have stepped at least once.
  CHECK_THROWS_AS(xi_coefficient(levels, std::vector<int>{1, 0}, 0),
                  PreconditionError);
  CHECK_THROWS_AS(xi_coefficient(levels, std::vector<int>{0, 1}, 1),
                  PreconditionError);
  CHECK_THROWS_AS(xi_coefficient(levels, std::vector<int>{1, 1, 1}, 1),
                  PreconditionError);
}

TEST_CASE("level Shapley closed form equals the generic lattice walk") {
  for (auto levels : {std::vector<int>{2, 3}, std::vector<int>{2, 2, 2},
                      std::vector<int>{1, 4}, std::vector<int>{3, 1, 2}}) {
    auto mc = multichoice_lattice(levels);
    auto v = oracle::random_capacity(StructureRef{mc.lattice},
                                     900 + std::uint64_t(levels.size()));
    auto ms = multichoice_shapley(mc, v);
    auto sv = shapley_lattice(v);

    // Irreducible (i, j) is the point with level j on axis i, zero
    // elsewhere.
    const int n = int(levels.size());
    for (int i = 0; i < n; ++i) {
      double total = 0;
      for (int j = 1; j <= levels[std::size_t(i)]; ++j) {
        std::vector<int> point(std::size_t(n), 0);
        point[std::size_t(i)] = j;
        const ElementId irr = mc.id_of(point);
        double phi = 0;
        for (std::size_t k = 0; k < sv.ids.size(); ++k)
          if (sv.ids[k] == irr) phi = sv.phi[k];
        CHECK(std::abs(ms.per_level[std::size_t(i)][std::size_t(j - 1)] -
                       phi) <= 1e-12);
        total += phi;
      }
      CHECK(std::abs(ms.total[std::size_t(i)] - total) <= 1e-12);
    }
    CHECK(std::abs(multichoice_entropy(mc, v) - entropy(v).bits) <= 1e-12);
  }
}

TEST_CASE("all-ones levels reduce to the boolean case") {
  auto mc = multichoice_lattice({1, 1, 1});
  auto s = powerset_system(3);
  // Profile (x1,x2,x3) in {0,1}^3 is the mask with bit i set iff x_i = 1.
  auto v = oracle::random_capacity(StructureRef{mc.lattice}, 31);
  std::vector<double> on_masks(8);
  for (std::size_t e = 0; e < 8; ++e) {
    const auto& p = mc.point_of[e];
    Mask m = 0;
    for (int i = 0; i < 3; ++i)
      if (p[std::size_t(i)] == 1) m |= Mask{1} << i;
    on_masks[std::size_t(s.index_of(m))] = v[ElementId(e)];
  }
  auto vs = Capacity::create(
      StructureRef{std::make_shared<const SetSystem>(s)}, std::move(on_masks));
  auto ms = multichoice_shapley(mc, v);
  auto cs = shapley_classical(vs);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(ms.per_level[std::size_t(i)][0] - cs.phi[std::size_t(i)]) <=
          1e-12);
}

TEST_CASE("pair capacities as level products") {
  for (int n = 1; n <= 2; ++n) {
    auto q = bicapacity_lattice(n);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      auto v = random_bipolar(q, seed * 77);
      CHECK(bicap_as_multichoice_check(q, v));
    }
  }
}
