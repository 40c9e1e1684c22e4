#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "whilep/interp.hpp"
#include "whilep/lang.hpp"
#include "whilep/memstate.hpp"

namespace whilep {

// A points-to / liveness key: a program variable or a (summary) heap cell.
// Variables order before addresses.
using Key = std::variant<VarName, Address>;

std::string to_string(const Key& k);

struct WidenConfig {
  std::int64_t k = 3;
  std::int64_t fuel = kDefaultFuel;
  // Fault injection for the soundness suite: weak updates forget the union.
  bool drop_weak_update = false;
};

// Map from variables and tracked cells to the cells they may hold. Keys that
// are absent have the empty image.
class PtsType {
 public:
  using Env = std::map<Key, AddrSet>;

  PtsType() = default;
  explicit PtsType(Env env) : env_(std::move(env)) {}

  const AddrSet& image(const Key& k) const;
  bool has(const Key& k) const { return env_.count(k) != 0; }
  void set(const Key& k, AddrSet image) { env_[k] = std::move(image); }
  void add(const Key& k, const AddrSet& extra) { env_[k].insert(extra.begin(), extra.end()); }
  void ensure(const Key& k) { env_[k]; }

  AddrSet tracked() const;
  std::set<VarName> vars() const;
  const Env& env() const { return env_; }

  bool operator==(const PtsType&) const = default;

 private:
  Env env_;
};

// Abstract value of an arithmetic expression: candidate addresses (any
// integer or nil also possible), or one statically known integer.
struct AbsVal {
  std::variant<AddrSet, std::int64_t> value;

  bool is_int() const { return std::holds_alternative<std::int64_t>(value); }
  // The address part V' (empty for a known integer).
  AddrSet addresses() const;
  bool operator==(const AbsVal&) const = default;
};

PtsType bottom(const std::set<VarName>& vars);
bool pts_leq(const PtsType& a, const PtsType& b);
PtsType pts_join(const PtsType& a, const PtsType& b);
PtsType widen(const PtsType& p, std::int64_t k);

AbsVal abs_eval(const AExp& e, const PtsType& p);

// Instances 1..v_eff a cons of arity n may pick under p: the least instance
// with no tracked cell, capped at the summary instance k.
std::int64_t cons_instance_bound(const PtsType& p, std::int64_t n, std::int64_t k);

struct PtsNode {
  Stmt stmt;
  PtsType pre;
  PtsType post;
  // While nodes: the loop invariant (equal to post).
  std::optional<PtsType> invariant;
  // Seq: first, second. If: then, else. While: body.
  std::vector<PtsNode> children;
};

PtsType transfer(const Stmt& s, const PtsType& p, const WidenConfig& cfg = {});
PtsNode annotate(const Stmt& s, const PtsType& p0, const WidenConfig& cfg = {});

bool models_pts(const RegularState& st, const PtsType& p, std::int64_t k = 3);

}  // namespace whilep
