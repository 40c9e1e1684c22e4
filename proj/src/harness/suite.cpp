#include <algorithm>
#include <chrono>

#include "whilep/harness.hpp"

namespace whilep {
namespace {

TrialResult pass() { return {}; }
TrialResult fail(std::string why) { return {Outcome::Fail, std::move(why)}; }

// Non-pass outcome of an original run whose result the property needs.
std::optional<TrialResult> skipped(const ExecOutcome& r) {
  if (std::holds_alternative<Aborted>(r)) return TrialResult{Outcome::AbortSkipped, {}};
  if (std::holds_alternative<OutOfFuel>(r)) return TrialResult{Outcome::FuelSkipped, {}};
  return std::nullopt;
}

LiveSet random_live(Rng& rng, const PtsType& p, bool with_cells) {
  LiveSet out;
  std::bernoulli_distribution half(0.5);
  for (const auto& [k, img] : p.env()) {
    if ((with_cells || std::holds_alternative<VarName>(k)) && half(rng)) out.insert(k);
  }
  return out;
}

std::string describe(const Stmt& s, const RegularState& st) {
  return "program '" + pretty(s) + "' from " + state_to_json(st).dump();
}

struct Setup {
  Stmt program;
  PtsType entry;
  PtsNode node;
  RegularState state;
};

Setup setup(Rng& rng, const SuiteConfig& cfg) {
  Stmt s = gen_program(rng, cfg.gen);
  PtsType p0 = gen_pts(rng, cfg.gen, program_vars(s), cfg.widen.k);
  PtsNode node = annotate(s, p0, cfg.widen);
  RegularState st = gen_state(rng, cfg.gen, node.pre, cfg.widen.k);
  return Setup{std::move(s), std::move(p0), std::move(node), std::move(st)};
}

TrialResult pts_preservation(Rng& rng, const SuiteConfig& cfg) {
  Setup t = setup(rng, cfg);
  const auto k = cfg.widen.k;
  if (!models_pts(t.state, t.node.pre, k)) return fail("generated state does not model the entry type");
  ExecOutcome r = exec(t.program, t.state, cfg.widen.fuel);
  if (auto s = skipped(r)) return *s;
  const auto& final = std::get<Final>(r).state;
  if (!models_pts(final, t.node.post, k)) {
    return fail(describe(t.program, t.state) + " ends in " + state_to_json(final).dump() +
                ", which does not model " + pts_to_json(t.node.post).dump());
  }
  return pass();
}

TrialResult live_preservation(Rng& rng, const SuiteConfig& cfg) {
  Setup t = setup(rng, cfg);
  const auto k = cfg.widen.k;
  LiveSet post = random_live(rng, t.node.post, true);
  LiveResult live = live_pre(t.node, post, cfg.widen, LiveMode::Analysis);
  RegularState st = scramble_dead(rng, cfg.gen, t.state, t.node.pre, live.pre, k);
  if (!models_lsh_pts(st, t.node.pre, live.pre, k)) return fail("generated state does not model the entry lsh type");
  ExecOutcome r = exec(t.program, st, cfg.widen.fuel);
  if (auto s = skipped(r)) return *s;
  const auto& final = std::get<Final>(r).state;
  if (!models_lsh_pts(final, t.node.post, post, k)) {
    return fail(describe(t.program, st) + " ends in " + state_to_json(final).dump() + ", outside the exit lsh type " +
                live_to_json(post).dump());
  }
  return pass();
}

TrialResult similarity_preservation(Rng& rng, const SuiteConfig& cfg) {
  Setup t = setup(rng, cfg);
  const auto k = cfg.widen.k;
  LiveSet post = random_live(rng, t.node.post, true);
  LiveResult live = live_pre(t.node, post, cfg.widen, LiveMode::Analysis);
  RegularState a = scramble_dead(rng, cfg.gen, t.state, t.node.pre, live.pre, k);
  RegularState b = scramble_dead(rng, cfg.gen, a, t.node.pre, live.pre, k);
  if (!similar_states(a, b, t.node.pre, live.pre, k)) return fail("constructed states are not similar");
  ExecOutcome ra = exec(t.program, a, cfg.widen.fuel);
  if (auto s = skipped(ra)) return *s;
  ExecOutcome rb = exec(t.program, b, cfg.widen.fuel);
  const auto* fb = std::get_if<Final>(&rb);
  if (!fb) return fail(describe(t.program, b) + " does not terminate normally, unlike its similar state");
  const auto& fa = std::get<Final>(ra).state;
  if (!similar_states(fa, fb->state, t.node.post, post, k)) {
    return fail(describe(t.program, a) + " and " + state_to_json(b).dump() + " end in dissimilar states " +
                state_to_json(fa).dump() + " and " + state_to_json(fb->state).dump());
  }
  return pass();
}

TrialResult simulation(Rng& rng, const SuiteConfig& cfg) {
  const auto k = cfg.widen.k;
  Stmt s = gen_program(rng, cfg.gen);
  OptResult opt = [&] {
    if (std::bernoulli_distribution(0.5)(rng)) {
      std::set<VarName> live;
      for (const auto& v : program_vars(s)) {
        if (std::bernoulli_distribution(0.5)(rng)) live.insert(v);
      }
      return optimize(s, live, cfg.widen);
    }
    PtsType p0 = gen_pts(rng, cfg.gen, program_vars(s), k);
    PtsType post = annotate(s, p0, cfg.widen).post;
    return optimize_from(s, p0, random_live(rng, post, true), cfg.widen);
  }();
  RegularState a = gen_state(rng, cfg.gen, opt.entry.pts, k);
  RegularState b = scramble_dead(rng, cfg.gen, a, opt.entry.pts, opt.entry.live, k);
  if (!models_pts(a, opt.entry.pts, k) || !similar_states(a, b, opt.entry.pts, opt.entry.live, k)) {
    return fail("constructed states do not meet the hypotheses");
  }
  ExecOutcome ra = exec(s, a, cfg.widen.fuel);
  if (auto sk = skipped(ra)) return *sk;
  ExecOutcome rb = exec(opt.optimized, b, cfg.widen.fuel);
  const auto* fb = std::get_if<Final>(&rb);
  if (!fb) {
    return fail(describe(s, a) + " terminates but the optimized '" + pretty(opt.optimized) + "' does not from " +
                state_to_json(b).dump());
  }
  const auto& fa = std::get<Final>(ra).state;
  if (!similar_states(fa, fb->state, opt.exit.pts, opt.exit.live, k)) {
    return fail(describe(s, a) + " and optimized '" + pretty(opt.optimized) + "' end in dissimilar states " +
                state_to_json(fa).dump() + " and " + state_to_json(fb->state).dump());
  }
  return pass();
}

TrialResult abs_eval_covers(Rng& rng, const SuiteConfig& cfg) {
  const auto k = cfg.widen.k;
  auto names = gen_vars(cfg.gen);
  PtsType p = gen_pts(rng, cfg.gen, std::set<VarName>(names.begin(), names.end()), k);
  RegularState st = gen_state(rng, cfg.gen, p, k);
  AExp e = gen_aexp(rng, cfg.gen, 3);
  AbsVal abs = abs_eval(e, p);
  auto v = eval_aexp(e, st.stack);
  if (!v) return {Outcome::AbortSkipped, {}};
  std::string where = "'" + pretty(e) + "' under " + pts_to_json(p).dump() + " in " + state_to_json(st).dump();
  if (const auto* a = std::get_if<Address>(&*v)) {
    if (!abs.addresses().count(abstract(*a, k))) return fail(where + " yields " + to_string(*a) + " outside V");
  }
  if (abs.is_int() && *v != Value{std::get<std::int64_t>(abs.value)}) {
    return fail(where + " yields " + to_string(*v) + " but abstracts to a different integer");
  }
  return pass();
}

void collect_loops(const PtsNode& n, std::vector<const PtsNode*>& out) {
  if (std::holds_alternative<While>(n.stmt.node)) out.push_back(&n);
  for (const auto& c : n.children) collect_loops(c, out);
}

TrialResult fixpoint(Rng& rng, const SuiteConfig& cfg) {
  Stmt s = gen_loop(rng, cfg.gen);
  PtsType p0 = gen_pts(rng, cfg.gen, program_vars(s), cfg.widen.k);
  auto start = std::chrono::steady_clock::now();
  PtsNode node = annotate(s, p0, cfg.widen);
  auto elapsed = std::chrono::steady_clock::now() - start;
  if (elapsed > std::chrono::seconds(1)) return fail("analysis of '" + pretty(s) + "' took over a second");
  std::vector<const PtsNode*> loops;
  collect_loops(node, loops);
  if (loops.empty()) return fail("generated loop program has no loop");
  for (const auto* l : loops) {
    const PtsType& inv = *l->invariant;
    const auto& body = *std::get<While>(l->stmt.node).body;
    if (!pts_leq(l->pre, inv)) return fail("entry type of a loop in '" + pretty(s) + "' is not below its invariant");
    if (!pts_leq(transfer(body, inv, cfg.widen), inv)) {
      return fail("invariant of a loop in '" + pretty(s) + "' is not preserved by the body");
    }
  }
  return pass();
}

}  // namespace

std::string_view property_name(Property p) {
  switch (p) {
    case Property::T1:
      return "T1";
    case Property::T2:
      return "T2";
    case Property::T3:
      return "T3";
    case Property::T4:
      return "T4";
    case Property::AbsEval:
      return "AbsEval";
    case Property::Fixpoint:
      return "Fixpoint";
  }
  return "?";
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 of the pair
  std::uint64_t z = base * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrialResult run_trial(Property prop, std::uint64_t seed, const SuiteConfig& cfg) {
  Rng rng(seed);
  try {
    switch (prop) {
      case Property::T1:
        return pts_preservation(rng, cfg);
      case Property::T2:
        return live_preservation(rng, cfg);
      case Property::T3:
        return similarity_preservation(rng, cfg);
      case Property::T4:
        return simulation(rng, cfg);
      case Property::AbsEval:
        return abs_eval_covers(rng, cfg);
      case Property::Fixpoint:
        return fixpoint(rng, cfg);
    }
  } catch (const std::exception& e) {
    return fail(std::string("exception: ") + e.what());
  }
  return fail("unknown property");
}

Counts run_property(Property prop, std::uint64_t n_trials, const SuiteConfig& cfg) {
  Counts c;
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    std::uint64_t seed = trial_seed(cfg.gen.seed, i);
    TrialResult r = run_trial(prop, seed, cfg);
    switch (r.outcome) {
      case Outcome::Pass:
        ++c.pass;
        break;
      case Outcome::AbortSkipped:
        ++c.abort_skipped;
        break;
      case Outcome::FuelSkipped:
        ++c.fuel_skipped;
        break;
      case Outcome::Fail:
        ++c.fail;
        c.failing_seeds.push_back(seed);
        c.failure_details.push_back(std::move(r.detail));
        break;
    }
  }
  return c;
}

bool SoundnessReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& kv) { return kv.second.fail == 0; });
}

SoundnessReport run_soundness_suite(std::uint64_t n_trials, const SuiteConfig& cfg) {
  SoundnessReport r;
  for (Property p : {Property::T1, Property::T2, Property::T3, Property::T4, Property::AbsEval}) {
    r.properties[std::string(property_name(p))] = run_property(p, n_trials, cfg);
  }
  return r;
}

Json report_to_json(const SoundnessReport& r) {
  Json out = Json::object();
  for (const auto& [name, c] : r.properties) {
    out[name] = Json{{"pass", c.pass},
                     {"abort_skipped", c.abort_skipped},
                     {"fuel_skipped", c.fuel_skipped},
                     {"fail", c.fail},
                     {"failing_seeds", c.failing_seeds}};
  }
  return out;
}

}  // namespace whilep
