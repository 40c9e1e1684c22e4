#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "whilep/lang.hpp"
#include "whilep/memstate.hpp"

namespace whilep {

inline constexpr std::int64_t kDefaultFuel = 100000;

struct Final {
  RegularState state;
  bool operator==(const Final&) const = default;
};
struct Aborted {
  bool operator==(const Aborted&) const = default;
};
struct OutOfFuel {
  bool operator==(const OutOfFuel&) const = default;
};

using ExecOutcome = std::variant<Final, Aborted, OutOfFuel>;

// nullopt is an evaluation error (undefined operator case).
std::optional<Value> eval_aexp(const AExp& e, const Stack& s);
std::optional<bool> eval_bexp(const BExp& b, const Stack& s);

// Big-step execution. One unit of fuel per sequence step and per loop
// iteration.
ExecOutcome exec(const Stmt& s, const RegularState& st, std::int64_t fuel = kDefaultFuel);

}  // namespace whilep
