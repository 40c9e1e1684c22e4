#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "whilep/lang.hpp"

namespace whilep {

// Cell `index` of instance `instance` among the arrays of length `length`.
// Ordered lexicographically by (length, instance, index).
struct Address {
  std::int64_t length = 1;
  std::int64_t instance = 1;
  std::int64_t index = 1;

  auto operator<=>(const Address&) const = default;
  bool valid() const { return length >= 1 && instance >= 1 && index >= 1 && index <= length; }
};

struct Nil {
  auto operator<=>(const Nil&) const = default;
};

// Alternative order doubles as the value order: Int < Nil < Addr.
using Value = std::variant<std::int64_t, Nil, Address>;

using Stack = std::map<VarName, Value>;
using Heap = std::map<Address, Value>;
using AddrSet = std::set<Address>;

struct RegularState {
  Stack stack;
  Heap heap;
  bool operator==(const RegularState&) const = default;
};

struct AbortState {
  bool operator==(const AbortState&) const = default;
};

using State = std::variant<RegularState, AbortState>;

inline bool is_address(const Value& v) { return std::holds_alternative<Address>(v); }

// Least t >= 1 such that no cell of instance t of the length-n arrays is in `allocated`.
std::int64_t fresh_instance(const AddrSet& allocated, std::int64_t n);
std::int64_t fresh_instance(const Heap& heap, std::int64_t n);

// Same array, index moved by k; nullopt when it leaves 1..length.
std::optional<Address> addr_shift(const Address& a, std::int64_t k);

// Strict total order: integers by value, then nil, then addresses.
bool value_lt(const Value& a, const Value& b);

// Two's-complement wrapping integer arithmetic shared by the interpreter and
// the abstract evaluator.
std::int64_t int_op(ArithOp op, std::int64_t a, std::int64_t b);

std::string to_string(const Address& a);
std::string to_string(const Value& v);
// Parses the `addr(n,u,i)` form; nullopt when malformed.
std::optional<Address> parse_address(const std::string& text);

// Instance abstraction: instances above k collapse onto the summary instance k.
inline Address abstract(const Address& a, std::int64_t k) {
  return a.instance > k ? Address{a.length, k, a.index} : a;
}

// Stack with every variable mapped to 0.
Stack zero_stack(const std::set<VarName>& vars);

}  // namespace whilep
