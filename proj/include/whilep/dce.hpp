#pragma once

#include <set>
#include <utility>

#include "whilep/cert.hpp"
#include "whilep/live.hpp"
#include "whilep/pts.hpp"

namespace whilep {

struct OptResult {
  Stmt optimized;
  Derivation derivation;
  LshType entry;
  LshType exit;
};

// Applies the dead-code rules to a tree annotated with transform-mode live sets.
std::pair<Stmt, Derivation> optimize_stmt(const LiveNode& node, const WidenConfig& cfg = {});

// Points-to annotation from bottom, live annotation backwards from
// final_live, then the dead-code rewrite.
OptResult optimize(const Stmt& s, const std::set<VarName>& final_live, const WidenConfig& cfg = {});

// Same pipeline from an arbitrary entry points-to type.
OptResult optimize_from(const Stmt& s, const PtsType& entry, const LiveSet& final_live,
                        const WidenConfig& cfg = {});

Certificate make_certificate(const OptResult& r, const WidenConfig& cfg = {});

// Replaces the zero-filled allocations produced by con_d1 with skip. The result
// no longer allocates in lockstep with the original program.
Stmt strip_dead_cons(const Derivation& d);

}  // namespace whilep
