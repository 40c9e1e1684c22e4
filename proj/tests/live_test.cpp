#include <gtest/gtest.h>

#include "whilep/harness.hpp"
#include "whilep/live.hpp"

using namespace whilep;

namespace {

Address A(std::int64_t n, std::int64_t u, std::int64_t i) { return Address{n, u, i}; }

LiveSet L(std::initializer_list<Key> keys) { return LiveSet(keys); }

LiveSet pre_of(const std::string& text, const LiveSet& post, const PtsType* entry = nullptr,
               LiveMode mode = LiveMode::Analysis) {
  Stmt s = parse(text);
  PtsNode n = annotate(s, entry ? *entry : bottom(program_vars(s)));
  return live_pre(n, post, {}, mode).pre;
}

LiveSet random_subset(Rng& rng, const LiveSet& universe) {
  LiveSet out;
  for (const auto& k : universe) {
    if (std::bernoulli_distribution(0.5)(rng)) out.insert(k);
  }
  return out;
}

LiveSet keys_of(const PtsType& p) {
  LiveSet out;
  for (const auto& [k, img] : p.env()) out.insert(k);
  return out;
}

}  // namespace

TEST(LivePreExp, Examples) {
  EXPECT_EQ(live_pre_exp(ast::num(7), L({"y"})), L({"y"}));
  EXPECT_EQ(live_pre_exp(parse_aexp("x + y"), {}), L({"x", "y"}));
  EXPECT_EQ(live_pre_exp(parse_bexp("x = z"), L({"x", A(1, 1, 1)})), L({"x", "z", A(1, 1, 1)}));
}

TEST(LivePre, Examples) {
  EXPECT_EQ(pre_of("skip", L({"y"})), L({"y"}));
  EXPECT_EQ(pre_of("x := y", L({"x"})), L({"y"}));
  EXPECT_EQ(pre_of("i := 10; [i] := 7", L({"y"})), L({"y"}));
  PtsType p = bottom({"i"});
  EXPECT_EQ(pre_of("[i] := 7", L({"y"}), &p), L({"i", "y"}));
}

TEST(LivePre, DeadStatementsInBothModes) {
  // A dead assignment of a variable-only expression adds nothing; an
  // arithmetic one keeps its operands because evaluation may abort.
  EXPECT_EQ(pre_of("x := y", L({"z"})), L({"z"}));
  EXPECT_EQ(pre_of("x := y + 1", L({"z"})), L({"y", "z"}));
  EXPECT_EQ(pre_of("x := y + 1", L({"z"}), nullptr, LiveMode::Transform), L({"z"}));
  EXPECT_EQ(pre_of("x := [y]", L({"z"})), L({"y", "z"}));
  EXPECT_EQ(pre_of("x := [y]", L({"z"}), nullptr, LiveMode::Transform), L({"z"}));
  EXPECT_EQ(pre_of("dispose(y)", L({"z"}), nullptr, LiveMode::Transform), L({"y", "z"}));
}

TEST(LivePre, LookupMakesItsCellsLive) {
  PtsType p = PtsType(PtsType::Env{{"p", {A(2, 1, 1), A(2, 1, 2)}}, {"x", {}}});
  EXPECT_EQ(pre_of("x := [p]", L({"x"}), &p), L({"p", A(2, 1, 1), A(2, 1, 2)}));
}

TEST(LivePre, ConsArgumentsFollowTheirCells) {
  Stmt s = parse("x := cons(a, b); y := [x + 1]");
  PtsNode n = annotate(s, bottom(program_vars(s)));
  // Only the second cell is read, so only b matters. The cell itself stays
  // in the set since cons removes only x.
  EXPECT_EQ(live_pre(n, L({"y"})).pre, L({"b", A(2, 1, 2)}));
  EXPECT_EQ(live_pre(n, L({"x"})).pre, LiveSet{});
}

TEST(LivePre, MutationOfALiveCell) {
  EXPECT_EQ(pre_of("x := cons(1); [x] := v; y := [x]", L({"y"})), L({"v", A(1, 1, 1)}));
}

TEST(LivePre, LoopUsesTheGuardAndTheBody) {
  EXPECT_EQ(pre_of("while i < 3 do { s := s + i; i := i + 1 }", L({"s"})), L({"i", "s"}));
  EXPECT_EQ(pre_of("while i < 3 do { t := u; u := w; i := i + 1 }", L({"t"})), L({"i", "t", "u", "w"}));
}

TEST(LivePre, SequenceChaining) {
  GenConfig cfg;
  Rng rng(31);
  std::function<void(const LiveNode&)> walk = [&](const LiveNode& n) {
    if (std::holds_alternative<Seq>(n.stmt.node)) {
      EXPECT_EQ(n.children[0].live_post, n.children[1].live_pre);
      EXPECT_EQ(n.live_pre, n.children[0].live_pre);
    }
    for (const auto& c : n.children) walk(c);
  };
  for (int t = 0; t < 300; ++t) {
    Stmt s = gen_program(rng, cfg);
    PtsNode p = annotate(s, gen_pts(rng, cfg, program_vars(s)));
    LiveSet post = random_subset(rng, keys_of(p.post));
    LiveResult r = live_pre(p, post);
    EXPECT_EQ(r.tree.live_post, post);
    walk(r.tree);
  }
}

TEST(LivePre, MonotoneInThePostSet) {
  GenConfig cfg;
  Rng rng(32);
  for (int t = 0; t < 1000; ++t) {
    Stmt s = gen_program(rng, cfg);
    PtsNode p = annotate(s, gen_pts(rng, cfg, program_vars(s)));
    LiveSet small = random_subset(rng, keys_of(p.post));
    LiveSet big = small;
    for (const auto& k : random_subset(rng, keys_of(p.post))) big.insert(k);
    for (auto mode : {LiveMode::Analysis, LiveMode::Transform}) {
      LiveSet a = live_pre(p, small, {}, mode).pre;
      LiveSet b = live_pre(p, big, {}, mode).pre;
      EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end())) << pretty(s);
    }
  }
}

// The loop set is the least X with post ∪ FV(b) ⊆ X and body-pre(X) ⊆ X.
// Checked against every subset of a small key universe.
TEST(LivePre, LoopSetIsTheLeastClosedSet) {
  GenConfig cfg;
  cfg.max_vars = 3;
  cfg.max_stmts = 4;
  Rng rng(33);
  int loops = 0;
  for (int t = 0; t < 200; ++t) {
    Stmt s = gen_loop(rng, cfg);
    PtsNode root = annotate(s, gen_pts(rng, cfg, program_vars(s)));
    const PtsNode* w = &root;
    while (std::holds_alternative<Seq>(w->stmt.node)) w = &w->children.back();
    if (!std::holds_alternative<While>(w->stmt.node)) w = &root.children.back();
    if (!std::holds_alternative<While>(w->stmt.node)) continue;
    LiveSet universe = keys_of(*w->invariant);
    if (universe.size() > 11) continue;
    ++loops;
    LiveSet post = random_subset(rng, universe);
    const auto& loop = std::get<While>(w->stmt.node);
    LiveSet x = live_pre(*w, post).pre;
    std::vector<Key> keys(universe.begin(), universe.end());
    std::size_t best = SIZE_MAX;
    int minimal = 0;
    for (std::uint32_t mask = 0; mask < (1u << keys.size()); ++mask) {
      LiveSet cand;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (mask & (1u << i)) cand.insert(keys[i]);
      }
      LiveSet need = live_pre_exp(loop.cond, post);
      LiveSet body = live_pre(w->children[0], cand).pre;
      need.insert(body.begin(), body.end());
      if (!std::includes(cand.begin(), cand.end(), need.begin(), need.end())) continue;
      EXPECT_TRUE(std::includes(cand.begin(), cand.end(), x.begin(), x.end()));
      if (cand.size() < best) {
        best = cand.size();
        minimal = 1;
      }
    }
    EXPECT_EQ(best, x.size());
    EXPECT_EQ(minimal, 1);
  }
  EXPECT_GT(loops, 50);
}

// Two stacks agreeing on the variables an expression needs evaluate it alike.
TEST(LivePreExp, AgreementDeterminesTheValue) {
  GenConfig cfg;
  Rng rng(34);
  for (int t = 0; t < 3000; ++t) {
    PtsType p = gen_pts(rng, cfg, {"v1", "v2", "v3", "v4"});
    AExp e = gen_aexp(rng, cfg, 3);
    LiveSet need = live_pre_exp(e, {});
    RegularState a = gen_state(rng, cfg, p);
    RegularState b = scramble_dead(rng, cfg, a, p, need);
    EXPECT_EQ(eval_aexp(e, a.stack), eval_aexp(e, b.stack)) << pretty(e);
  }
}

TEST(ModelsLsh, Examples) {
  Address a = A(1, 1, 1);
  RegularState ints{zero_stack({"x"}), {}};
  EXPECT_TRUE(models_lsh_pts(ints, bottom({"x"}), L({"x"})));
  RegularState st{{{"x", a}}, {}};
  PtsType p = bottom({"x"});
  EXPECT_FALSE(models_lsh_pts(st, p, L({"x"})));
  EXPECT_TRUE(models_lsh_pts(st, p, {}));
}

TEST(ModelsLsh, DownwardInTheOrder) {
  GenConfig cfg;
  Rng rng(35);
  for (int t = 0; t < 1000; ++t) {
    PtsType p = gen_pts(rng, cfg, {"v1", "v2", "v3"});
    PtsType q = pts_join(p, gen_pts(rng, cfg, {"v1", "v2", "v3"}));
    LiveSet big = random_subset(rng, keys_of(q));
    LiveSet small = random_subset(rng, big);
    ASSERT_TRUE(lsh_leq(LshType{p, big}, LshType{q, small}));
    RegularState st = scramble_dead(rng, cfg, gen_state(rng, cfg, p), p, big);
    ASSERT_TRUE(models_lsh_pts(st, p, big));
    EXPECT_TRUE(models_lsh_pts(st, q, small));
  }
}

TEST(SimilarStates, Examples) {
  Address a = A(1, 1, 1);
  PtsType p = PtsType(PtsType::Env{{"x", {a}}, {"z", {}}, {a, {}}});
  RegularState st{{{"x", a}, {"z", std::int64_t{1}}}, {{a, std::int64_t{5}}}};
  EXPECT_TRUE(similar_states(st, st, p, L({"x", a})));
  RegularState other = st;
  other.stack["z"] = std::int64_t{9};
  EXPECT_TRUE(similar_states(st, other, p, L({"x", a})));
  EXPECT_FALSE(similar_states(st, other, p, L({"z"})));
  RegularState grown = st;
  grown.heap[A(2, 1, 1)] = std::int64_t{0};
  EXPECT_FALSE(similar_states(st, grown, p, {}));
  RegularState cell = st;
  cell.heap[a] = std::int64_t{6};
  EXPECT_TRUE(similar_states(st, cell, p, L({"x"})));
  EXPECT_FALSE(similar_states(st, cell, p, L({a})));
}

TEST(ConsCells, CandidateInstances) {
  PtsType p = PtsType(PtsType::Env{{A(2, 1, 1), {}}, {A(2, 1, 2), {}}});
  EXPECT_EQ(cons_cells(p, 2, 3), (std::set<Address>{A(2, 1, 1), A(2, 1, 2), A(2, 2, 1), A(2, 2, 2)}));
  EXPECT_EQ(cons_cells(p, 1, 3), (std::set<Address>{A(1, 1, 1)}));
  EXPECT_EQ(cons_cells(p, 2, 1), (std::set<Address>{A(2, 1, 1), A(2, 1, 2)}));
}
