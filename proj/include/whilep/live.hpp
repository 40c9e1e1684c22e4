#pragma once

#include <set>
#include <vector>

#include "whilep/pts.hpp"

namespace whilep {

using LiveSet = std::set<Key>;

// Live stack-heap type: a points-to type paired with a live component.
struct LshType {
  PtsType pts;
  LiveSet live;
  bool operator==(const LshType&) const = default;
};

// (p, L) <= (p', L') iff p <= p' and L is a superset of L'.
bool lsh_leq(const LshType& a, const LshType& b);

// Analysis: every statement is executed as written (the live stack-heap type
// system). Transform: statements that the dead-code rules rewrite to skip or
// to a zero-filled cons contribute nothing, so their pre set equals the post set.
enum class LiveMode { Analysis, Transform };

struct LiveNode {
  Stmt stmt;
  PtsType pts_pre;
  PtsType pts_post;
  LiveSet live_pre;
  LiveSet live_post;
  std::vector<LiveNode> children;
};

struct LiveResult {
  LiveSet pre;
  LiveNode tree;
};

LiveSet live_pre_exp(const AExp& e, LiveSet post);
LiveSet live_pre_exp(const BExp& b, LiveSet post);

LiveResult live_pre(const PtsNode& node, const LiveSet& post, const WidenConfig& cfg = {},
                    LiveMode mode = LiveMode::Analysis);

// Cells of the candidate instances a cons of arity n may allocate under p.
std::set<Address> cons_cells(const PtsType& p, std::int64_t n, std::int64_t k);

bool models_lsh_pts(const RegularState& st, const PtsType& p, const LiveSet& live, std::int64_t k = 3);
bool similar_states(const RegularState& a, const RegularState& b, const PtsType& p, const LiveSet& live,
                    std::int64_t k = 3);

LiveSet to_live_set(const std::set<VarName>& vars);

}  // namespace whilep
