#include <algorithm>

#include "whilep/harness.hpp"

namespace whilep {
namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <class C>
const auto& pick(Rng& rng, const C& c) {
  auto it = c.begin();
  std::advance(it, uniform(rng, 0, static_cast<std::int64_t>(c.size()) - 1));
  return *it;
}

class ProgramGen {
 public:
  ProgramGen(Rng& rng, const GenConfig& cfg) : rng_(rng), cfg_(cfg), vars_(gen_vars(cfg)) {}

  Stmt program() {
    int budget = static_cast<int>(uniform(rng_, 1, std::max(1, cfg_.max_stmts)));
    std::vector<Stmt> out;
    // Most programs open with an allocation so that heap statements have
    // something to work on.
    if (budget >= 2 && coin(rng_, 0.7)) budget -= stmt_cons(out, targets());
    auto rest = block(budget, 0);
    out.insert(out.end(), rest.begin(), rest.end());
    return ast::seq(std::move(out));
  }

  Stmt loop() {
    int budget = static_cast<int>(uniform(rng_, 1, std::max(1, cfg_.max_stmts)));
    std::vector<Stmt> out;
    while_stmt(out, budget + 3, 0, /*force=*/true);
    return ast::seq(std::move(out));
  }

  AExp aexp(int depth) {
    if (depth > 0 && coin(rng_, 0.25)) {
      int r = static_cast<int>(uniform(rng_, 0, 9));
      ArithOp op = r < 6 ? ArithOp::Add : r < 9 ? ArithOp::Sub : ArithOp::Mul;
      // Mostly pointer arithmetic shapes: v + k and v - k.
      if (op != ArithOp::Mul && coin(rng_, 0.6)) return ast::bin(op, ast::var(var()), ast::num(uniform(rng_, 0, 2)));
      return ast::bin(op, aexp(depth - 1), aexp(depth - 1));
    }
    int r = static_cast<int>(uniform(rng_, 0, 19));
    if (r < 11) return ast::var(var());
    if (r < 19) return ast::num(uniform(rng_, cfg_.int_lo, cfg_.int_hi));
    return ast::nil();
  }

 private:
  const VarName& var() { return pick(rng_, vars_); }

  // Address operand of a heap statement: usually a variable that was last
  // assigned by cons, sometimes shifted.
  AExp pointer() {
    if (pointers_.empty() || coin(rng_, 0.05)) return aexp(1);
    AExp base = ast::var(pick(rng_, pointers_));
    if (coin(rng_, 0.2)) return ast::add(std::move(base), ast::num(uniform(rng_, 0, 2)));
    return base;
  }

  int stmt_cons(std::vector<Stmt>& out, const std::vector<VarName>& tg) {
    std::vector<AExp> args;
    auto n = uniform(rng_, 1, std::max(1, cfg_.cons_max_arity));
    for (std::int64_t i = 0; i < n; ++i) args.push_back(aexp(1));
    const VarName& x = pick(rng_, tg);
    out.push_back(ast::cons(x, std::move(args)));
    pointers_.insert(x);
    return 1;
  }

  std::vector<VarName> targets() const {
    std::vector<VarName> out;
    for (const auto& v : vars_) {
      if (!counters_.count(v)) out.push_back(v);
    }
    return out;
  }

  BExp bexp(int depth) {
    if (depth > 0 && coin(rng_, 0.2)) {
      switch (uniform(rng_, 0, 2)) {
        case 0:
          return ast::negate(bexp(depth - 1));
        case 1:
          return ast::conj(bexp(depth - 1), bexp(depth - 1));
        default:
          return ast::disj(bexp(depth - 1), bexp(depth - 1));
      }
    }
    if (coin(rng_, 0.05)) return ast::truth(coin(rng_, 0.5));
    auto op = static_cast<CmpOp>(uniform(rng_, 0, 2));
    return ast::cmp(op, aexp(1), aexp(1));
  }

  void leaf(std::vector<Stmt>& out, const std::vector<VarName>& tg) {
    int r = static_cast<int>(uniform(rng_, 0, 99));
    if (tg.empty()) r = 60 + static_cast<int>(uniform(rng_, 0, 39));
    if (r >= 45 && r < 90 && pointers_.empty() && !tg.empty() && coin(rng_, 0.8)) r = 30;
    if (r < 45 && r >= 28) {
      stmt_cons(out, tg);
      return;
    }
    Stmt s = ast::skip();
    if (r < 28) {
      const VarName& x = pick(rng_, tg);
      AExp e = aexp(2);
      const auto* v = std::get_if<VarRef>(&e.node);
      if (v && pointers_.count(v->name)) {
        pointers_.insert(x);
      } else {
        pointers_.erase(x);
      }
      s = ast::assign(x, std::move(e));
    } else if (r < 60) {
      const VarName& x = pick(rng_, tg);
      s = ast::lookup(x, pointer());
      pointers_.erase(x);
    } else if (r < 82) {
      s = ast::mutate(pointer(), aexp(2));
    } else if (r < 90) {
      AExp a = pointer();
      if (const auto* v = std::get_if<VarRef>(&a.node)) pointers_.erase(v->name);
      s = ast::dispose(std::move(a));
    }
    out.push_back(std::move(s));
  }

  // Appends the statements of one generated construct; returns its cost.
  int stmt(std::vector<Stmt>& out, int budget, int depth) {
    auto tg = targets();
    if (depth < 2 && budget >= 3) {
      int r = static_cast<int>(uniform(rng_, 0, 99));
      if (r < 12) {
        int inner = budget - 1;
        int t = static_cast<int>(uniform(rng_, 1, std::max(1, inner - 1)));
        int f = std::max(1, std::min(inner - t, static_cast<int>(uniform(rng_, 1, std::max(1, inner - t)))));
        out.push_back(ast::if_(bexp(1), ast::seq(block(t, depth + 1)), ast::seq(block(f, depth + 1))));
        return 1 + t + f;
      }
      if (r < 22) return while_stmt(out, budget, depth, false);
    }
    leaf(out, tg);
    return 1;
  }

  int while_stmt(std::vector<Stmt>& out, int budget, int depth, bool force) {
    auto tg = targets();
    int body_budget = static_cast<int>(uniform(rng_, 1, std::max(1, budget - 3)));
    if (tg.size() >= 2 && coin(rng_, cfg_.loop_bound_bias)) {
      VarName c = pick(rng_, tg);
      counters_.insert(c);
      std::vector<Stmt> body = block(body_budget, depth + 1);
      counters_.erase(c);
      body.push_back(ast::assign(c, ast::add(ast::var(c), ast::num(1))));
      out.push_back(ast::assign(c, ast::num(0)));
      out.push_back(ast::while_(ast::lt(ast::var(c), ast::num(uniform(rng_, 1, 4))), ast::seq(std::move(body))));
      return body_budget + 3;
    }
    if (!force && tg.empty()) {
      leaf(out, tg);
      return 1;
    }
    out.push_back(ast::while_(bexp(1), ast::seq(block(body_budget, depth + 1))));
    return body_budget + 1;
  }

  std::vector<Stmt> block(int budget, int depth) {
    std::vector<Stmt> out;
    while (budget > 0) budget -= stmt(out, budget, depth);
    if (out.empty()) out.push_back(ast::skip());
    return out;
  }

  Rng& rng_;
  const GenConfig& cfg_;
  std::vector<VarName> vars_;
  std::set<VarName> counters_;
  std::set<VarName> pointers_;
};

Address concretize(Rng& rng, const Address& a, std::int64_t k) {
  if (a.instance == k && coin(rng, 0.3)) return Address{a.length, k + uniform(rng, 1, 2), a.index};
  return a;
}

Value gen_value(Rng& rng, const GenConfig& cfg, const AddrSet& allowed, std::int64_t k) {
  if (!allowed.empty() && coin(rng, 0.6)) return concretize(rng, pick(rng, allowed), k);
  if (coin(rng, 0.2)) return Nil{};
  return uniform(rng, cfg.int_lo, cfg.int_hi);
}

}  // namespace

std::vector<VarName> gen_vars(const GenConfig& cfg) {
  std::vector<VarName> out;
  for (int i = 1; i <= std::max(1, cfg.max_vars); ++i) out.push_back("v" + std::to_string(i));
  return out;
}

Stmt gen_program(Rng& rng, const GenConfig& cfg) { return ProgramGen(rng, cfg).program(); }

Stmt gen_program(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_program(rng, cfg);
}

Stmt gen_loop(Rng& rng, const GenConfig& cfg) { return ProgramGen(rng, cfg).loop(); }

AExp gen_aexp(Rng& rng, const GenConfig& cfg, int depth) { return ProgramGen(rng, cfg).aexp(depth); }

PtsType gen_pts(Rng& rng, const GenConfig& cfg, const std::set<VarName>& vars, std::int64_t k) {
  AddrSet cells;
  auto arrays = uniform(rng, 0, 3);
  for (std::int64_t j = 0; j < arrays; ++j) {
    auto n = uniform(rng, 1, std::max(1, cfg.cons_max_arity));
    auto u = uniform(rng, 1, k);
    for (std::int64_t i = 1; i <= n; ++i) {
      if (coin(rng, 0.9)) cells.insert(Address{n, u, i});
    }
  }
  // Targets also include the odd untracked (disposed) cell.
  AddrSet targets = cells;
  if (coin(rng, 0.2)) targets.insert(Address{1, uniform(rng, 1, k), 1});
  auto image = [&] {
    AddrSet img;
    for (const auto& a : targets) {
      if (coin(rng, 0.35)) img.insert(a);
    }
    return img;
  };
  PtsType p = bottom(vars);
  for (const auto& v : vars) p.set(v, image());
  for (const auto& a : cells) p.set(a, image());
  return p;
}

RegularState gen_state(Rng& rng, const GenConfig& cfg, const PtsType& p, std::int64_t k) {
  RegularState st;
  for (const auto& v : p.vars()) st.stack[v] = gen_value(rng, cfg, p.image(v), k);
  for (const auto& a : p.tracked()) {
    if (a.instance > k) throw Infeasible("points-to type is not widened: " + to_string(a));
    if (!coin(rng, 0.8)) continue;
    const AddrSet& img = p.image(a);
    st.heap[a] = gen_value(rng, cfg, img, k);
    if (a.instance == k && coin(rng, 0.3)) st.heap[Address{a.length, k + 1, a.index}] = gen_value(rng, cfg, img, k);
  }
  return st;
}

RegularState scramble_dead(Rng& rng, const GenConfig& cfg, RegularState st, const PtsType& p,
                           const LiveSet& live, std::int64_t k, bool any_address) {
  auto arbitrary = [&]() -> Value {
    int r = static_cast<int>(uniform(rng, 0, 9));
    if (r < 4 && any_address) {
      auto n = uniform(rng, 1, std::max(1, cfg.cons_max_arity));
      return Address{n, uniform(rng, 1, k + 1), uniform(rng, 1, n)};
    }
    if (r < 6) {
      auto tracked = p.tracked();
      if (!tracked.empty()) return concretize(rng, pick(rng, tracked), k);
    }
    if (r < 7) return Nil{};
    return uniform(rng, cfg.int_lo, cfg.int_hi);
  };
  for (auto& [x, v] : st.stack) {
    if (!live.count(x) && coin(rng, 0.7)) v = arbitrary();
  }
  for (auto& [a, v] : st.heap) {
    if (!live.count(abstract(a, k)) && coin(rng, 0.7)) v = arbitrary();
  }
  return st;
}

}  // namespace whilep
