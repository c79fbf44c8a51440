#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace latcap {

// Elements of a structure are dense indices into its canonical order.
using ElementId = std::int32_t;

// Player subsets as bitmasks; bit p-1 stands for player p.
using Mask = std::uint32_t;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxPlayers = 24;
inline constexpr ElementId kNoElement = -1;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidPoset : public Error {
public:
  using Error::Error;
};

class NotALattice : public Error {
public:
  using Error::Error;
};

class InvalidSetSystem : public Error {
public:
  using Error::Error;
};

class InvalidCapacity : public Error {
public:
  using Error::Error;
};

// A structural precondition of an operation does not hold (wrong structure
// kind, non-regular input, size out of range, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& msg, std::uint64_t count)
      : Error(msg), count_so_far(count) {}
  // How many items (chains, elements, ...) had been produced when the
  // budget tripped.
  std::uint64_t count_so_far = 0;
};

}  // namespace latcap
