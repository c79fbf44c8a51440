#pragma once

// Text formats for structures and capacities.
//
// Structure file: '#' starts a comment. The first meaningful line selects
// the kind:
//   set_system <n>      followed by subset labels ("-" is the empty set,
//                       "13" or "{1,3}" a subset), any number per line
//   lattice             followed by an optional "elements <labels...>" line
//                       fixing the element order, then one "lo hi" cover
//                       pair per line
//   boolean:<n> | bicap:<n> | multi:<l1,l2,...>   stock structures
// The same shorthand strings are accepted directly in place of a file.
//
// Capacity file: optional first line "game", then one "<label> <value>"
// pair per line, one for every element. Values are decimals; in the exact
// reader also fractions like 1/3.

#include <iosfwd>
#include <string>
#include <vector>

#include "latcap/capacity.hpp"
#include "latcap/common.hpp"

namespace latcap::io {

bool looks_like_shorthand(const std::string& text);

StructureRef parse_structure_text(const std::string& text);
StructureRef load_structure(const std::string& path_or_shorthand);

Capacity parse_capacity_text(const std::string& text, const StructureRef& s);
Capacity load_capacity(const std::string& path, const StructureRef& s);

// Exact reader: every value must be an integer, fraction, or finite
// decimal; boundary and monotonicity checks are exact. The kind flag tells
// whether the file was game-flagged.
struct ExactCapacity {
  std::vector<Rational> values;
  SetFunctionKind kind = SetFunctionKind::capacity;
};
ExactCapacity parse_capacity_text_exact(const std::string& text,
                                        const StructureRef& s);

// Round-trip serializers: parse(format(x)) compares equal to x.
std::string format_structure(const StructureRef& s);
std::string format_capacity(const Capacity& v);

std::string format_rational(const Rational& r);

}  // namespace latcap::io
