// Acceptance gate: eight checks, one line each, exit code is the number of
// failures. Tolerances and runtime caps are pinned next to each check.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "latcap/canonical.hpp"
#include "latcap/measures.hpp"
#include "latcap/oracle.hpp"
#include "latcap/set_system.hpp"

using namespace latcap;

namespace {

constexpr double kAgreeTol = 1e-12;
constexpr double kMeanTol = 1e-10;

int failures = 0;

void report(int k, bool ok, const std::string& what) {
  std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", k, what.c_str());
  std::fflush(stdout);
  failures += !ok;
}

template <class Fn>
void guarded(int k, const std::string& what, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(k, false, what + " (exception: " + e.what() + ")");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

StructureRef powerset_ref(int n) {
  return StructureRef{std::make_shared<const SetSystem>(powerset_system(n))};
}

BoundedLattice sample_lattice() {
  return BoundedLattice::from_covers(
      {"g", "d", "e", "f", "b", "c", "a"},
      {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}});
}

// One 200-trial harness run shared by criteria 5 and 8.
struct HarnessRun {
  oracle::HarnessReport report;
  double seconds = 0;
};

const HarnessRun& harness_run() {
  static const HarnessRun run = [] {
    HarnessRun r;
    const auto t0 = std::chrono::steady_clock::now();
    r.report = oracle::proposition_harness({});
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

bool harness_row_ok(const std::string& name) {
  for (const auto& c : harness_run().report.checks)
    if (c.name == name) return c.failures == 0 && c.trials > 0;
  return false;
}

// criterion 1: the chain-average entropy equals the direct per-player sum
// on full powersets, 200 seeded capacities, within 1e-10, under 5 s.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  int trials = 0;
  for (int n = 2; n <= 5; ++n) {
    auto s = powerset_ref(n);
    for (int i = 0; i < 50; ++i) {
      auto v = oracle::random_capacity(s, 20260816u + std::uint64_t(i) +
                                              std::uint64_t(n) * 1000);
      worst = std::max(worst,
                       std::abs(entropy(v).bits - marichal_entropy_direct(v)));
      ++trials;
    }
  }
  const double dt = seconds_since(t0);
  report(1,
         trials == 200 && worst <= kMeanTol && dt < 5.0,
         "chain average equals the direct entropy on 2^N, 200 capacities, "
         "worst " +
             sci(worst) + ", " + std::to_string(dt) + " s");
}

// criterion 2: exact symbolic shares and edge weights on the three-level
// seven-element lattice.
void criterion2() {
  const auto l = sample_lattice();
  const auto s =
      StructureRef{std::make_shared<const BoundedLattice>(sample_lattice())};

  using Term = std::pair<std::pair<std::string, std::string>, Rational>;
  auto term_set = [&](const std::vector<EdgeTerm>& terms) {
    std::set<Term> out;
    for (const auto& t : terms)
      out.insert({{l.label(t.lo), l.label(t.hi)}, t.weight});
    return out;
  };

  const Rational q(1, 4), h(1, 2);
  const std::map<std::string, std::set<Term>> expected = {
      {"d", {{{"g", "d"}, q}, {{"e", "b"}, q}, {{"c", "a"}, h}}},
      {"e", {{{"g", "e"}, h}, {{"d", "b"}, q}, {{"f", "c"}, q}}},
      {"f", {{{"g", "f"}, q}, {{"e", "c"}, q}, {{"b", "a"}, h}}},
  };

  auto shares = shapley_lattice_expansion(l);
  bool ok = shares.labels == std::vector<std::string>{"d", "e", "f"};
  for (std::size_t i = 0; ok && i < shares.labels.size(); ++i)
    ok = term_set(shares.terms[i]) == expected.at(shares.labels[i]);

  // Nine edge weights, six quarters and three halves.
  auto ent = entropy_expansion(s);
  std::multiset<Rational> weights;
  for (const auto& t : ent) weights.insert(t.weight);
  ok = ok && ent.size() == 9 && weights.count(q) == 6 && weights.count(h) == 3;

  // Symbolic uniform capacity: equal thirds.
  const std::vector<Rational> u = {0,          Rational(1, 3), Rational(1, 3),
                                   Rational(1, 3), Rational(2, 3),
                                   Rational(2, 3), 1};
  auto phi = evaluate_exact(shares, u);
  ok = ok && phi == std::vector<Rational>{Rational(1, 3), Rational(1, 3),
                                          Rational(1, 3)};

  report(2, ok, "exact shares and edge weights on the worked lattice");
}

// criterion 3: closed-form chain counts match the exact counting walk.
void criterion3() {
  bool ok = true;
  for (int n = 1; n <= 6; ++n)
    ok = ok && count_maximal_chains(powerset_system(n)) == factorial(n);

  const BigInt expect_pairs[] = {1, 6, 90};
  for (int n = 1; n <= 3; ++n) {
    ok = ok && bicapacity_chain_count(n) == expect_pairs[n - 1];
    ok = ok && count_maximal_chains(*bicapacity_lattice(n).lattice) ==
                   bicapacity_chain_count(n);
  }

  for (auto levels : {std::vector<int>{2, 3}, std::vector<int>{1, 1, 1, 1},
                      std::vector<int>{3, 5}, std::vector<int>{4}}) {
    ok = ok && count_maximal_chains(*multichoice_lattice(levels).lattice) ==
                   multichoice_chain_count(levels);
  }
  ok = ok && multichoice_chain_count(std::vector<int>{2, 3}) == 10;

  report(3, ok, "chain counts: n! on 2^N, (2n)!/2^n on pairs, multinomials "
                "on level products");
}

// criterion 4: every per-edge coefficient equals the exact fraction of
// chains through that edge, pairs n <= 3 and level sums <= 8, under 10 s.
void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string why;

  for (int n = 1; n <= 3 && ok; ++n) {
    auto q = bicapacity_lattice(n);
    const auto& l = *q.lattice;
    const auto& h = l.hasse();
    auto topo = l.poset().linear_extension();
    auto counts = count_chains_through_edges(h, topo, l.bottom(), l.top());
    for (std::size_t e = 0; e < h.covers.size() && ok; ++e) {
      const auto [lo, hi] = h.covers[e];
      const auto [a1, b1] = q.pair_of[std::size_t(lo)];
      const auto [a2, b2] = q.pair_of[std::size_t(hi)];
      const Rational ratio(counts.through[e], counts.total);
      const Rational coeff =
          a2 != a1 ? gamma_bicap(n, std::popcount(a1), std::popcount(b1))
                   : gamma_bicap(n, std::popcount(b2), std::popcount(a1));
      ok = ratio == coeff;
      if (!ok) why = "pair edge mismatch at n=" + std::to_string(n);
    }
  }

  // Every composition of every total from 1 to 8.
  for (int total = 1; total <= 8 && ok; ++total) {
    for (unsigned cuts = 0; cuts < (1u << (total - 1)) && ok; ++cuts) {
      std::vector<int> levels;
      int run = 1;
      for (int pos = 0; pos < total - 1; ++pos) {
        if (cuts & (1u << pos)) {
          levels.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      levels.push_back(run);

      auto mc = multichoice_lattice(levels);
      const auto& l = *mc.lattice;
      const auto& h = l.hasse();
      auto topo = l.poset().linear_extension();
      auto counts = count_chains_through_edges(h, topo, l.bottom(), l.top());
      for (std::size_t e = 0; e < h.covers.size() && ok; ++e) {
        const auto [lo, hi] = h.covers[e];
        const auto& plo = mc.point_of[std::size_t(lo)];
        const auto& phi = mc.point_of[std::size_t(hi)];
        int player = 0;
        for (std::size_t i = 0; i < levels.size(); ++i)
          if (phi[i] != plo[i]) player = int(i) + 1;
        const Rational ratio(counts.through[e], counts.total);
        ok = ratio == xi_coefficient(levels, phi, player);
        if (!ok) why = "level edge mismatch at sum " + std::to_string(total);
      }
    }
  }

  const double dt = seconds_since(t0);
  ok = ok && dt < 10.0;
  report(4, ok,
         (why.empty() ? std::string("edge coefficients equal exact chain "
                                    "fractions")
                      : why) +
             ", " + std::to_string(dt) + " s");
}

// criterion 5: the randomized property run, 200 seeded trials, under 30 s.
void criterion5() {
  const auto& run = harness_run();
  const bool props =
      harness_row_ok("entropy bounds and extremes") &&
      harness_row_ok("level capacities have equal chain entropies") &&
      harness_row_ok("blending toward uniform raises entropy") &&
      harness_row_ok("relative entropy is nonnegative and separating") &&
      harness_row_ok("blending toward the target lowers relative entropy");
  report(5, props && run.seconds < 30.0,
         "bounds, level flatness, blend monotonicity, nonnegativity and "
         "separation over 200 seeded trials, " +
             std::to_string(run.seconds) + " s");
}

// criterion 6: one hundred generated geometries, three to seven players.
void criterion6() {
  bool ok = true;
  std::string why;
  for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
    const int n = 3 + int(seed % 5);
    auto g = oracle::random_convex_geometry(n, 0xC0FFEE + seed);
    auto d = dualize(g);
    int joins = 0, meets = 0;
    for (std::size_t e = 0; e < g.size(); ++e)
      joins += g.hasse().down[e].size() == 1;
    for (std::size_t e = 0; e < d.size(); ++e)
      meets += d.hasse().up[e].size() == 1;
    ok = is_convex_geometry(g) && is_regular(g) && joins == n &&
         is_antimatroid(d) && meets == n;
    if (!ok) why = " (failed at seed " + std::to_string(seed) + ")";
  }
  report(6, ok,
         "100 generated geometries are regular with n join-irreducibles, "
         "duals are antimatroids with n meet-irreducibles" +
             why);
}

// criterion 7: the closed forms and the generic chain averages coincide.
void criterion7() {
  double worst = 0;

  for (int n = 2; n <= 5; ++n) {
    auto s = powerset_ref(n);
    auto v = oracle::random_capacity(s, 77u + std::uint64_t(n));
    auto a = shapley_classical(v);
    auto b = shapley_chain(v);
    for (std::size_t i = 0; i < a.phi.size(); ++i)
      worst = std::max(worst, std::abs(a.phi[i] - b.phi[i]));
  }

  bool mapped_ok = true;
  for (int n = 1; n <= 3; ++n) {
    auto q = bicapacity_lattice(n);
    // Random monotone values with the pair-lattice endpoints.
    auto base = oracle::random_capacity(StructureRef{q.lattice},
                                        555u + std::uint64_t(n));
    auto bs = bicapacity_shapley(q, base);
    auto sv = shapley_lattice(base);
    const Mask full = (Mask{1} << n) - 1;
    for (int i = 1; i <= n; ++i) {
      const Mask rest = full & ~(Mask{1} << (i - 1));
      double phi_pos = 0, phi_neg = 0;
      for (std::size_t k = 0; k < sv.ids.size(); ++k) {
        if (sv.ids[k] == q.id_of(Mask{1} << (i - 1), rest)) phi_pos = sv.phi[k];
        if (sv.ids[k] == q.id_of(0, rest)) phi_neg = sv.phi[k];
      }
      worst = std::max(worst,
                       std::abs(bs.positive[std::size_t(i - 1)] - phi_pos));
      worst = std::max(worst,
                       std::abs(bs.negative[std::size_t(i - 1)] - phi_neg));
    }
    worst = std::max(worst,
                     std::abs(bicapacity_entropy(q, base) - entropy(base).bits));

    if (n <= 2) {
      // Proper bipolar values for the product comparison.
      const ElementId zero = q.id_of(0, 0);
      std::vector<double> raw(base.size());
      const double z = base[zero];
      for (std::size_t e = 0; e < raw.size(); ++e) {
        const double x = base[ElementId(e)];
        raw[e] = x <= z ? (z > 0 ? x / z - 1.0 : 0.0)
                        : (z < 1 ? (x - z) / (1.0 - z) : 1.0);
      }
      mapped_ok =
          mapped_ok && bicap_as_multichoice_check(q, bicapacity_normalize(q, raw));
    }
  }

  for (auto levels : {std::vector<int>{2, 3}, std::vector<int>{2, 2, 2},
                      std::vector<int>{1, 3, 2}}) {
    auto mc = multichoice_lattice(levels);
    auto v = oracle::random_capacity(StructureRef{mc.lattice}, 31337);
    auto ms = multichoice_shapley(mc, v);
    auto sv = shapley_lattice(v);
    const int n = int(levels.size());
    for (int i = 0; i < n; ++i)
      for (int j = 1; j <= levels[std::size_t(i)]; ++j) {
        std::vector<int> point(std::size_t(n), 0);
        point[std::size_t(i)] = j;
        double phi = 0;
        for (std::size_t k = 0; k < sv.ids.size(); ++k)
          if (sv.ids[k] == mc.id_of(point)) phi = sv.phi[k];
        worst = std::max(
            worst,
            std::abs(ms.per_level[std::size_t(i)][std::size_t(j - 1)] - phi));
      }
    worst =
        std::max(worst, std::abs(multichoice_entropy(mc, v) - entropy(v).bits));
  }

  report(7, worst <= kAgreeTol && mapped_ok,
         "closed forms match generic chain averages, worst " +
             sci(worst));
}

// criterion 8: the independent reference walks agree with the main
// implementations on every randomized trial.
void criterion8() {
  const bool agree = harness_row_ok("chain sets match the reference walk") &&
                     harness_row_ok("Shapley matches the reference walk") &&
                     harness_row_ok("entropy matches the reference walk") &&
                     harness_row_ok("relative entropy matches the reference "
                                    "walk") &&
                     harness_row_ok("lattice and image Shapley agree");
  report(8, agree,
         "reference walks and main implementations agree on every trial");
}

}  // namespace

int main() {
  guarded(1, "direct-entropy agreement", criterion1);
  guarded(2, "exact worked lattice", criterion2);
  guarded(3, "chain counts", criterion3);
  guarded(4, "edge coefficients", criterion4);
  guarded(5, "proposition harness", criterion5);
  guarded(6, "geometry corpus", criterion6);
  guarded(7, "cross implementations", criterion7);
  guarded(8, "reference agreement", criterion8);
  return failures;
}
