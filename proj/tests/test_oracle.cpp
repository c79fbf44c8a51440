#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latcap/canonical.hpp"
#include "latcap/io.hpp"
#include "latcap/oracle.hpp"

using namespace latcap;
using namespace latcap::oracle;

TEST_CASE("reference chain walk agrees with the counting path") {
  auto s = powerset_system(4);
  auto a = enumerate_maximal_chains(s);
  auto b = oracle_chains(s);
  CHECK(b.size() == 24);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);

  auto l = *bicapacity_lattice(2).lattice;
  auto la = enumerate_maximal_chains(l);
  auto lb = oracle_chains(l);
  CHECK(lb.size() == 6);
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  CHECK(la == lb);

  CHECK_THROWS_AS(oracle_chains(powerset_system(5), 10), BudgetExceeded);
}

TEST_CASE("reference Shapley equals the closed form") {
  auto s = StructureRef{
      std::make_shared<const SetSystem>(powerset_system(3))};
  auto v = random_capacity(s, 2024);
  auto a = shapley_classical(v);
  auto b = oracle_shapley(v);
  REQUIRE(a.phi.size() == b.phi.size());
  for (std::size_t i = 0; i < a.phi.size(); ++i)
    CHECK(std::abs(a.phi[i] - b.phi[i]) <= 1e-12);
}

TEST_CASE("reference entropy equals the edge-weight path") {
  auto s = io::load_structure("multi:2,2");
  auto v = random_capacity(s, 5);
  CHECK(std::abs(entropy(v).bits - oracle_entropy(v)) <= 1e-12);
  auto u = random_capacity(s, 6);
  CHECK(std::abs(relative_entropy(v, u) - oracle_relative_entropy(v, u)) <=
        1e-12);
}

TEST_CASE("random capacities are deterministic and valid") {
  auto s = io::load_structure("boolean:4");
  auto a = random_capacity(s, 42);
  auto b = random_capacity(s, 42);
  auto c = random_capacity(s, 43);
  REQUIRE(a.size() == b.size());
  bool all_equal = true, any_diff = false;
  for (ElementId e = 0; e < ElementId(a.size()); ++e) {
    all_equal = all_equal && a[e] == b[e];
    any_diff = any_diff || a[e] != c[e];
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(a[structure_bottom(s)] == 0.0);
  CHECK(a[structure_top(s)] == 1.0);
  CHECK_FALSE(check_set_function(s, a.values(), SetFunctionKind::capacity)
                  .has_value());
}

TEST_CASE("geometry generator output is always a convex geometry") {
  for (int n = 1; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto g = random_convex_geometry(n, seed);
      CHECK(is_convex_geometry(g));
      CHECK(g.ground_size() == n);
    }
  auto a = random_convex_geometry(5, 9);
  auto b = random_convex_geometry(5, 9);
  CHECK(a == b);
  CHECK_THROWS_AS(random_convex_geometry(9, 1), PreconditionError);
}

TEST_CASE("harness passes and reports per check") {
  HarnessOptions opts;
  opts.trials = 12;
  opts.seed = 314159;
  auto rep = proposition_harness(opts);
  CHECK(rep.all_passed());
  CHECK(rep.artifact.empty());
  CHECK(rep.checks.size() >= 13);
  for (const auto& c : rep.checks) {
    CHECK(c.failures == 0);
    CHECK(c.trials > 0);
    CHECK(c.detail.empty());
  }
}

TEST_CASE("harness logs progress when asked") {
  HarnessOptions opts;
  opts.trials = 50;
  std::ostringstream log;
  opts.log = &log;
  auto rep = proposition_harness(opts);
  CHECK(rep.all_passed());
  CHECK(log.str().find("50/50") != std::string::npos);
}
