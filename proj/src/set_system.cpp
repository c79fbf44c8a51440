#include "latcap/set_system.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

namespace latcap {

namespace {

bool canonical_less(Mask a, Mask b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

}  // namespace

SetSystem::SetSystem(int n, std::vector<Mask> family)
    : n_(n), family_(std::move(family)) {
  if (family_.size() > kCoverGraphLimit) return;
  std::vector<std::pair<ElementId, ElementId>> covers;
  if (is_full_powerset()) {
    // Covers of the powerset are the single-bit extensions.
    for (std::size_t i = 0; i < family_.size(); ++i) {
      const Mask a = family_[i];
      for (int p = 0; p < n_; ++p)
        if (!(a >> p & 1u))
          covers.emplace_back(ElementId(i), index_of(a | (Mask{1} << p)));
    }
  } else {
    // layer[k] = first position with cardinality k; positions are sorted by
    // (cardinality, value), so witnesses strictly between a and b can only
    // sit in the layers strictly between theirs.
    std::vector<std::size_t> layer(n_ + 2, family_.size());
    for (std::size_t i = family_.size(); i-- > 0;)
      layer[std::popcount(family_[i])] = i;
    for (std::size_t k = n_ + 1; k-- > 0;)
      if (layer[k] == family_.size()) layer[k] = layer[k + 1];
    for (std::size_t i = 0; i < family_.size(); ++i)
      for (std::size_t j = i + 1; j < family_.size(); ++j) {
        const Mask a = family_[i], b = family_[j];
        if ((a & ~b) != 0 || a == b) continue;
        bool direct = true;
        const std::size_t from = layer[std::popcount(a) + 1];
        const std::size_t to = layer[std::popcount(b)];
        for (std::size_t k = from; k < to && direct; ++k) {
          const Mask x = family_[k];
          if ((a & ~x) == 0 && (x & ~b) == 0) direct = false;
        }
        if (direct) covers.emplace_back(ElementId(i), ElementId(j));
      }
  }
  hasse_ = hasse_from_covers(family_.size(), std::move(covers));
}

SetSystem SetSystem::from_members(int n, std::vector<Mask> family) {
  if (n < 1 || n > kMaxPlayers)
    throw InvalidSetSystem("ground size " + std::to_string(n) +
                           " outside 1.." + std::to_string(kMaxPlayers));
  const Mask ground = (Mask{1} << n) - 1;
  for (Mask m : family)
    if (m & ~ground)
      throw InvalidSetSystem("member " + std::to_string(m) +
                             " uses players beyond " + std::to_string(n));
  std::sort(family.begin(), family.end(), canonical_less);
  auto dup = std::adjacent_find(family.begin(), family.end());
  if (dup != family.end())
    throw InvalidSetSystem("duplicate member " + subset_label(*dup, n));
  if (family.empty() || family.front() != 0)
    throw InvalidSetSystem("the empty set must be a member");
  if (family.back() != ground)
    throw InvalidSetSystem("the ground set must be a member");
  return SetSystem(n, std::move(family));
}

SetSystem SetSystem::full_powerset(int n) {
  if (n < 1 || n > 20)
    throw PreconditionError("full powerset supported for 1..20 players");
  std::vector<Mask> family;
  family.reserve(std::size_t{1} << n);
  // Emit in canonical order directly: cardinality layers, values ascending.
  for (int k = 0; k <= n; ++k) {
    if (k == 0) {
      family.push_back(0);
      continue;
    }
    Mask m = (Mask{1} << k) - 1;
    const Mask limit = Mask{1} << n;
    while (m < limit) {
      family.push_back(m);
      // Gosper's hack: next value with the same popcount.
      const Mask c = m & -m;
      const Mask r = m + c;
      if (r >= limit) break;
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  return SetSystem(n, std::move(family));
}

ElementId SetSystem::index_of(Mask m) const {
  auto it = std::lower_bound(family_.begin(), family_.end(), m, canonical_less);
  if (it == family_.end() || *it != m) return kNoElement;
  return ElementId(it - family_.begin());
}

const HasseDiagram& SetSystem::hasse() const {
  if (!has_hasse())
    throw PreconditionError(
        "family of " + std::to_string(family_.size()) +
        " members exceeds the cover-graph limit; containment-walk operations "
        "are unavailable");
  return hasse_;
}

Poset SetSystem::containment_poset() const {
  const std::size_t m = family_.size();
  if (m > kDefaultLatticeBudget)
    throw BudgetExceeded("containment order of " + std::to_string(m) +
                             " members exceeds the element budget",
                         m);
  BitMatrix up(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if ((family_[i] & ~family_[j]) == 0) up.set(i, j);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = member_label(ElementId(i));
  return make_trusted_poset(std::move(labels), std::move(up));
}

std::string SetSystem::member_label(ElementId i) const {
  return subset_label(family_[i], n_);
}

SetSystem dualize(const SetSystem& s) {
  const Mask ground = (Mask{1} << s.ground_size()) - 1;
  std::vector<Mask> family;
  family.reserve(s.size());
  for (Mask m : s.family()) family.push_back(ground & ~m);
  return SetSystem::from_members(s.ground_size(), std::move(family));
}

bool is_regular(const SetSystem& s) {
  if (s.is_full_powerset()) return true;
  // Every cover edge lies on some maximal chain and chains shrink below
  // n+1 members exactly when some edge adds two or more players at once.
  for (auto [lo, hi] : s.hasse().covers)
    if (std::popcount(s.member(hi) ^ s.member(lo)) != 1) return false;
  return true;
}

bool is_convex_geometry(const SetSystem& s) {
  const Mask ground = (Mask{1} << s.ground_size()) - 1;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s.index_of(s.member(ElementId(i)) & s.member(ElementId(j))) == kNoElement)
        return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Mask a = s.member(ElementId(i));
    if (a == ground) continue;
    bool extends = false;
    for (int p = 0; p < s.ground_size() && !extends; ++p)
      if (!(a >> p & 1u) && s.index_of(a | (Mask{1} << p)) != kNoElement)
        extends = true;
    if (!extends) return false;
  }
  return true;
}

bool is_antimatroid(const SetSystem& s) { return is_convex_geometry(dualize(s)); }

LatticeImage from_lattice(const BoundedLattice& l) {
  std::vector<ElementId> irreducibles = join_irreducibles(l);
  const int n = int(irreducibles.size());
  if (n < 1 || n > kMaxPlayers)
    throw PreconditionError("lattice has " + std::to_string(n) +
                            " join-irreducibles; 1.." + std::to_string(kMaxPlayers) +
                            " supported");
  const auto masks = eta_all(l, irreducibles);
  std::vector<Mask> eta_of(masks.begin(), masks.end());
  std::vector<Mask> family(eta_of);
  std::sort(family.begin(), family.end(), canonical_less);
  if (std::adjacent_find(family.begin(), family.end()) != family.end())
    throw Error("two elements share an eta image; lattice tables are corrupted");
  LatticeImage img{SetSystem::from_members(n, std::move(family)),
                   std::move(irreducibles), std::move(eta_of), {}};
  img.element_of.assign(l.size(), kNoElement);
  for (std::size_t a = 0; a < l.size(); ++a)
    img.element_of[img.system.index_of(img.eta_of[a])] = ElementId(a);
  // The image of a lattice whose chains all have |J|+1 members is regular.
  if (is_vee_minimal_regular(l) && !is_regular(img.system))
    throw Error("eta image of a chain-graded lattice fails regularity; "
                "lattice tables are corrupted");
  return img;
}

std::vector<MaximalChain> enumerate_maximal_chains(const SetSystem& s,
                                                   std::uint64_t budget) {
  return enumerate_maximal_chains(s.hasse(), s.bottom(), s.top(), budget);
}

BigInt count_maximal_chains(const SetSystem& s) {
  // The canonical (cardinality, value) order is a linear extension.
  std::vector<ElementId> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  return count_chains_through_edges(s.hasse(), order, s.bottom(), s.top()).total;
}

std::string subset_label(Mask m, int n) {
  if (m == 0) return "-";
  std::string out;
  if (n <= 9) {
    for (int p = 0; p < n; ++p)
      if (m >> p & 1u) out += char('1' + p);
    return out;
  }
  out = "{";
  bool first = true;
  for (int p = 0; p < n; ++p)
    if (m >> p & 1u) {
      if (!first) out += ",";
      out += std::to_string(p + 1);
      first = false;
    }
  return out + "}";
}

Mask parse_subset_label(const std::string& text, int n) {
  if (text.empty()) throw ParseError("empty subset label");
  if (text == "-" || text == "{}") return 0;
  Mask m = 0;
  auto add_player = [&](int p) {
    if (p < 1 || p > n)
      throw ParseError("player " + std::to_string(p) + " outside 1.." +
                       std::to_string(n) + " in '" + text + "'");
    const Mask bit = Mask{1} << (p - 1);
    if (m & bit) throw ParseError("player repeated in '" + text + "'");
    m |= bit;
  };
  if (text.front() == '{') {
    if (text.back() != '}') throw ParseError("unbalanced braces in '" + text + "'");
    std::size_t i = 1;
    while (i < text.size() - 1) {
      std::size_t j = i;
      while (j < text.size() - 1 && text[j] != ',') ++j;
      if (j == i) throw ParseError("empty entry in '" + text + "'");
      int p = 0;
      for (std::size_t k = i; k < j; ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
          throw ParseError("non-digit in '" + text + "'");
        p = p * 10 + (text[k] - '0');
      }
      add_player(p);
      i = j + 1;
    }
    return m;
  }
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
      throw ParseError("bad player digit '" + std::string(1, c) + "' in '" + text +
                       "'");
    add_player(c - '0');
  }
  return m;
}

}  // namespace latcap
