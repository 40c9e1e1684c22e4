#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "whilep/cert.hpp"
#include "whilep/dce.hpp"
#include "whilep/io.hpp"
#include "whilep/live.hpp"
#include "whilep/pts.hpp"

namespace whilep {

struct GenConfig {
  std::uint64_t seed = 1;
  int max_stmts = 12;
  int max_vars = 4;
  std::int64_t int_lo = -2;
  std::int64_t int_hi = 4;
  int cons_max_arity = 3;
  // Probability that a generated loop is counter-bounded.
  double loop_bound_bias = 0.9;
};

using Rng = std::mt19937_64;

// v1 .. v{max_vars}
std::vector<VarName> gen_vars(const GenConfig& cfg);

Stmt gen_program(const GenConfig& cfg);
Stmt gen_program(Rng& rng, const GenConfig& cfg);
// A program whose top level is a single while loop.
Stmt gen_loop(Rng& rng, const GenConfig& cfg);
AExp gen_aexp(Rng& rng, const GenConfig& cfg, int depth = 2);

// A random widened points-to type over `vars` with a few tracked arrays.
PtsType gen_pts(Rng& rng, const GenConfig& cfg, const std::set<VarName>& vars, std::int64_t k = 3);

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state over p's variables with models_pts(state, p, k).
RegularState gen_state(Rng& rng, const GenConfig& cfg, const PtsType& p, std::int64_t k = 3);

// Overwrites every variable and heap cell outside `live` with an arbitrary
// value, possibly an address p does not allow there. Heap domain is kept.
RegularState scramble_dead(Rng& rng, const GenConfig& cfg, RegularState st, const PtsType& p,
                           const LiveSet& live, std::int64_t k = 3, bool any_address = true);

enum class Property { T1, T2, T3, T4, AbsEval, Fixpoint };

std::string_view property_name(Property p);

enum class Outcome { Pass, AbortSkipped, FuelSkipped, Fail };

struct TrialResult {
  Outcome outcome = Outcome::Pass;
  std::string detail;
};

struct SuiteConfig {
  GenConfig gen;
  WidenConfig widen{3, 2000, false};
};

// Deterministic seed of trial `index` in a run started from `base`.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

// One trial, fully determined by `seed` (the generator seed in cfg is ignored).
TrialResult run_trial(Property prop, std::uint64_t seed, const SuiteConfig& cfg);

struct Counts {
  std::uint64_t pass = 0;
  std::uint64_t abort_skipped = 0;
  std::uint64_t fuel_skipped = 0;
  std::uint64_t fail = 0;
  std::vector<std::uint64_t> failing_seeds;
  std::vector<std::string> failure_details;

  std::uint64_t total() const { return pass + abort_skipped + fuel_skipped + fail; }
};

Counts run_property(Property prop, std::uint64_t n_trials, const SuiteConfig& cfg);

struct SoundnessReport {
  std::map<std::string, Counts> properties;
  bool ok() const;
};

// T1..T4 and AbsEval, n_trials each.
SoundnessReport run_soundness_suite(std::uint64_t n_trials, const SuiteConfig& cfg);
Json report_to_json(const SoundnessReport& r);

// Single-field edits of a valid certificate: a rule renamed, one live or
// points-to element added or removed, or one residual replaced.
struct Tamper {
  std::string description;
  Certificate cert;
};
std::vector<Tamper> tamper_corpus(const Certificate& c, Rng& rng, std::size_t count);

}  // namespace whilep
