#include "latcap/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "latcap/canonical.hpp"
#include "latcap/lattice.hpp"
#include "latcap/set_system.hpp"

namespace latcap::io {

namespace {

struct Token {
  std::string text;
  int line = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  std::string cur;
  bool comment = false;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back({cur, line});
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
    } else if (comment) {
    } else if (c == '#') {
      flush();
      comment = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

int parse_int(const Token& t, int lo, int hi, const char* what) {
  int value = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || p != t.text.data() + t.text.size())
    fail(t.line, std::string("expected ") + what + ", got '" + t.text + "'");
  if (value < lo || value > hi)
    fail(t.line, std::string(what) + " out of range: " + t.text);
  return value;
}

StructureRef parse_shorthand(const Token& t) {
  const std::string& s = t.text;
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string rest = s.substr(colon + 1);
  if (head == "boolean") {
    return StructureRef{std::make_shared<const SetSystem>(
        powerset_system(parse_int({rest, t.line}, 1, 20, "player count")))};
  }
  if (head == "bicap") {
    return StructureRef{
        bicapacity_lattice(parse_int({rest, t.line}, 1, 6, "player count"))
            .lattice};
  }
  if (head == "multi") {
    std::vector<int> levels;
    std::string part;
    std::stringstream ss(rest);
    while (std::getline(ss, part, ','))
      levels.push_back(parse_int({part, t.line}, 1, 4095, "level"));
    if (levels.empty()) fail(t.line, "multi: needs at least one level");
    return StructureRef{multichoice_lattice(std::move(levels)).lattice};
  }
  fail(t.line, "unknown structure kind '" + s + "'");
}

StructureRef parse_set_system(const std::vector<Token>& tok, std::size_t at) {
  if (at >= tok.size()) fail(tok.back().line, "set_system needs a player count");
  const int n = parse_int(tok[at], 1, kMaxPlayers, "player count");
  std::vector<Mask> family;
  for (std::size_t i = at + 1; i < tok.size(); ++i) {
    try {
      family.push_back(parse_subset_label(tok[i].text, n));
    } catch (const ParseError& e) {
      fail(tok[i].line, e.what());
    }
  }
  try {
    return StructureRef{
        std::make_shared<const SetSystem>(SetSystem::from_members(n, family))};
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

StructureRef parse_lattice(const std::vector<Token>& tok, std::size_t at) {
  std::vector<std::string> labels;
  auto id_of = [&](const std::string& name, bool may_add) -> ElementId {
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == name) return ElementId(k);
    if (!may_add) return kNoElement;
    labels.push_back(name);
    return ElementId(labels.size() - 1);
  };

  std::size_t i = at;
  bool fixed_elements = false;
  if (i < tok.size() && tok[i].text == "elements") {
    fixed_elements = true;
    const int line = tok[i].line;
    for (++i; i < tok.size() && tok[i].line == line; ++i)
      if (id_of(tok[i].text, false) != kNoElement)
        fail(line, "duplicate element '" + tok[i].text + "'");
      else
        labels.push_back(tok[i].text);
  }

  std::vector<std::pair<ElementId, ElementId>> arcs;
  while (i < tok.size()) {
    if (i + 1 >= tok.size() || tok[i + 1].line != tok[i].line)
      fail(tok[i].line, "cover line needs two labels");
    if (i + 2 < tok.size() && tok[i + 2].line == tok[i].line)
      fail(tok[i].line, "cover line has extra tokens");
    ElementId lo = id_of(tok[i].text, !fixed_elements);
    ElementId hi = id_of(tok[i + 1].text, !fixed_elements);
    if (lo == kNoElement) fail(tok[i].line, "unknown element '" + tok[i].text + "'");
    if (hi == kNoElement)
      fail(tok[i].line, "unknown element '" + tok[i + 1].text + "'");
    arcs.emplace_back(lo, hi);
    i += 2;
  }
  try {
    return StructureRef{std::make_shared<const BoundedLattice>(
        BoundedLattice::from_covers(std::move(labels), arcs))};
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

ElementId element_by_label(const StructureRef& s, const std::string& name) {
  if (const auto* sys = as_set_system(s)) {
    Mask m = parse_subset_label(name, (*sys)->ground_size());
    return (*sys)->index_of(m);
  }
  return (*as_lattice(s))->poset().index_of_label(name);
}

Rational parse_rational(const Token& t) {
  const std::string& s = t.text;
  const auto bad = [&]() -> Rational {
    fail(t.line, "expected a number, got '" + s + "'");
  };
  if (s.empty()) return bad();
  std::size_t at = 0;
  bool neg = false;
  if (s[at] == '+' || s[at] == '-') neg = s[at++] == '-';
  BigInt num = 0, den = 1;
  bool any = false;
  while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) {
    num = num * 10 + (s[at++] - '0');
    any = true;
  }
  if (at < s.size() && s[at] == '.') {
    for (++at; at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]));
         ++at) {
      num = num * 10 + (s[at] - '0');
      den *= 10;
      any = true;
    }
  } else if (at < s.size() && s[at] == '/') {
    ++at;
    BigInt d = 0;
    bool dany = false;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) {
      d = d * 10 + (s[at++] - '0');
      dany = true;
    }
    if (!dany || d == 0) return bad();
    den = d;
  }
  if (!any || at != s.size()) return bad();
  Rational r(num, den);
  return neg ? -r : r;
}

template <class Value, class Parse>
std::pair<std::vector<Value>, SetFunctionKind> read_assignments(
    const std::string& text, const StructureRef& s, Parse&& parse_value) {
  auto tok = tokenize(text);
  std::size_t i = 0;
  SetFunctionKind kind = SetFunctionKind::capacity;
  if (i < tok.size() && tok[i].text == "game") {
    kind = SetFunctionKind::game;
    ++i;
  }
  const std::size_t m = structure_size(s);
  std::vector<Value> values(m);
  std::vector<bool> seen(m, false);
  while (i < tok.size()) {
    if (i + 1 >= tok.size() || tok[i + 1].line != tok[i].line)
      fail(tok[i].line, "assignment line needs a label and a value");
    ElementId e;
    try {
      e = element_by_label(s, tok[i].text);
    } catch (const Error& err) {
      fail(tok[i].line, err.what());
    }
    if (e == kNoElement)
      fail(tok[i].line, "no element labeled '" + tok[i].text + "'");
    if (seen[std::size_t(e)])
      fail(tok[i].line, "element '" + tok[i].text + "' assigned twice");
    seen[std::size_t(e)] = true;
    values[std::size_t(e)] = parse_value(tok[i + 1]);
    i += 2;
  }
  for (std::size_t e = 0; e < m; ++e)
    if (!seen[e])
      throw ParseError("no value for element '" + structure_label(s, ElementId(e)) +
                       "'");
  return {std::move(values), kind};
}

}  // namespace

bool looks_like_shorthand(const std::string& text) {
  return text.rfind("boolean:", 0) == 0 || text.rfind("bicap:", 0) == 0 ||
         text.rfind("multi:", 0) == 0;
}

StructureRef parse_structure_text(const std::string& text) {
  auto tok = tokenize(text);
  if (tok.empty()) throw ParseError("empty structure description");
  if (tok[0].text == "set_system") return parse_set_system(tok, 1);
  if (tok[0].text == "lattice") return parse_lattice(tok, 1);
  if (looks_like_shorthand(tok[0].text)) {
    if (tok.size() > 1) fail(tok[1].line, "unexpected tokens after shorthand");
    return parse_shorthand(tok[0]);
  }
  fail(tok[0].line,
       "expected set_system, lattice, or a boolean:/bicap:/multi: shorthand");
}

StructureRef load_structure(const std::string& path_or_shorthand) {
  if (looks_like_shorthand(path_or_shorthand))
    return parse_structure_text(path_or_shorthand);
  std::ifstream in(path_or_shorthand);
  if (!in) throw ParseError("cannot open '" + path_or_shorthand + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure_text(ss.str());
}

Capacity parse_capacity_text(const std::string& text, const StructureRef& s) {
  auto [values, kind] = read_assignments<double>(text, s, [](const Token& t) {
    try {
      std::size_t used = 0;
      double v = std::stod(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument(t.text);
      return v;
    } catch (const std::exception&) {
      fail(t.line, "expected a number, got '" + t.text + "'");
    }
  });
  return Capacity::create(s, std::move(values), kind);
}

Capacity load_capacity(const std::string& path, const StructureRef& s) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_capacity_text(ss.str(), s);
}

ExactCapacity parse_capacity_text_exact(const std::string& text,
                                        const StructureRef& s) {
  auto [values, kind] =
      read_assignments<Rational>(text, s, [](const Token& t) { return parse_rational(t); });

  const ElementId bot = structure_bottom(s), top = structure_top(s);
  if (values[std::size_t(bot)] != 0)
    throw InvalidCapacity("exact values must be 0 at the bottom");
  if (kind == SetFunctionKind::capacity && values[std::size_t(top)] != 1)
    throw InvalidCapacity("exact values must be 1 at the top");
  const HasseDiagram& h = structure_hasse(s);
  if (kind == SetFunctionKind::capacity) {
    for (auto [lo, hi] : h.covers)
      if (values[std::size_t(lo)] > values[std::size_t(hi)])
        throw InvalidCapacity("exact values decrease from '" +
                              structure_label(s, lo) + "' to '" +
                              structure_label(s, hi) + "'");
  }
  return {std::move(values), kind};
}

std::string format_structure(const StructureRef& s) {
  std::string out;
  if (const auto* sys = as_set_system(s)) {
    out = "set_system " + std::to_string((*sys)->ground_size()) + "\n";
    const int n = (*sys)->ground_size();
    for (std::size_t i = 0; i < (*sys)->size(); ++i) {
      out += subset_label((*sys)->member(ElementId(i)), n);
      out += (i + 1) % 12 == 0 || i + 1 == (*sys)->size() ? '\n' : ' ';
    }
    return out;
  }
  const auto& lat = **as_lattice(s);
  out = "lattice\nelements";
  for (std::size_t e = 0; e < lat.size(); ++e)
    out += " " + lat.label(ElementId(e));
  out += '\n';
  for (auto [lo, hi] : lat.hasse().covers)
    out += lat.label(lo) + " " + lat.label(hi) + "\n";
  return out;
}

std::string format_capacity(const Capacity& v) {
  std::string out;
  if (v.is_game()) out = "game\n";
  char buf[64];
  for (std::size_t e = 0; e < v.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%.17g", v[ElementId(e)]);
    out += structure_label(v.structure(), ElementId(e)) + " " + buf + "\n";
  }
  return out;
}

std::string format_rational(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) out += "/" + denominator(r).str();
  return out;
}

}  // namespace latcap::io
