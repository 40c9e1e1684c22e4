#include "whilep/dce.hpp"

#include <algorithm>

namespace whilep {
namespace {

LshType pre_of(const LiveNode& n) { return {n.pts_pre, n.live_pre}; }
LshType post_of(const LiveNode& n) { return {n.pts_post, n.live_post}; }

Rule leaf_rule(const LiveNode& n, const WidenConfig& cfg) {
  const LiveSet& post = n.live_post;
  const auto& s = n.stmt.node;
  if (std::holds_alternative<Skip>(s)) return Rule::Skip;
  if (const auto* a = std::get_if<Assign>(&s)) return post.count(a->target) ? Rule::AssD2 : Rule::AssD1;
  if (const auto* l = std::get_if<Lookup>(&s)) return post.count(l->target) ? Rule::LokD2 : Rule::LokD1;
  if (const auto* c = std::get_if<Cons>(&s)) {
    bool live = post.count(c->target) != 0;
    for (const auto& cell : cons_cells(n.pts_pre, static_cast<std::int64_t>(c->args.size()), cfg.k)) {
      live = live || post.count(cell) != 0;
    }
    return live ? Rule::ConD2 : Rule::ConD1;
  }
  if (const auto* m = std::get_if<Mutate>(&s)) {
    auto targets = abs_eval(m->address, n.pts_pre).addresses();
    bool live = std::any_of(targets.begin(), targets.end(), [&](const Address& a) { return post.count(a) != 0; });
    return live ? Rule::MutD2 : Rule::MutD1;
  }
  return Rule::DisD;
}

Stmt rewrite(Rule r, const Stmt& s) {
  switch (r) {
    case Rule::AssD1:
    case Rule::LokD1:
    case Rule::MutD1:
      return ast::skip();
    case Rule::ConD1: {
      const auto& c = std::get<Cons>(s.node);
      return ast::cons(c.target, std::vector<AExp>(c.args.size(), ast::num(0)));
    }
    default:
      return s;
  }
}

}  // namespace

std::pair<Stmt, Derivation> optimize_stmt(const LiveNode& node, const WidenConfig& cfg) {
  Derivation d{Rule::Skip, Judgment{node.stmt, pre_of(node), post_of(node), node.stmt}, {}};
  if (std::holds_alternative<Seq>(node.stmt.node)) {
    auto [s1, d1] = optimize_stmt(node.children[0], cfg);
    auto [s2, d2] = optimize_stmt(node.children[1], cfg);
    d.rule = Rule::SeqD;
    d.judgment.residual = ast::seq(std::move(s1), std::move(s2));
    d.premises = {std::move(d1), std::move(d2)};
  } else if (const auto* i = std::get_if<If>(&node.stmt.node)) {
    auto [t, dt] = optimize_stmt(node.children[0], cfg);
    auto [f, df] = optimize_stmt(node.children[1], cfg);
    d.rule = Rule::IfD;
    d.judgment.residual = ast::if_(i->cond, std::move(t), std::move(f));
    d.premises = {std::move(dt), std::move(df)};
  } else if (const auto* w = std::get_if<While>(&node.stmt.node)) {
    auto [body, db] = optimize_stmt(node.children[0], cfg);
    d.rule = Rule::WhlD;
    d.judgment.residual = ast::while_(w->cond, std::move(body));
    d.premises = {std::move(db)};
  } else {
    d.rule = leaf_rule(node, cfg);
    d.judgment.residual = rewrite(d.rule, node.stmt);
  }
  Stmt residual = d.judgment.residual;
  return {std::move(residual), std::move(d)};
}

OptResult optimize_from(const Stmt& s, const PtsType& entry, const LiveSet& final_live, const WidenConfig& cfg) {
  PtsNode pts = annotate(s, entry, cfg);
  LiveResult live = live_pre(pts, final_live, cfg, LiveMode::Transform);
  auto [optimized, derivation] = optimize_stmt(live.tree, cfg);
  return OptResult{std::move(optimized), std::move(derivation), LshType{pts.pre, live.pre},
                   LshType{pts.post, final_live}};
}

OptResult optimize(const Stmt& s, const std::set<VarName>& final_live, const WidenConfig& cfg) {
  return optimize_from(s, bottom(program_vars(s)), to_live_set(final_live), cfg);
}

Certificate make_certificate(const OptResult& r, const WidenConfig& cfg) {
  return Certificate{cfg.k, r.exit.live, r.derivation};
}

Stmt strip_dead_cons(const Derivation& d) {
  switch (d.rule) {
    case Rule::ConD1:
      return ast::skip();
    case Rule::SeqD:
      return ast::seq(strip_dead_cons(d.premises[0]), strip_dead_cons(d.premises[1]));
    case Rule::IfD:
      return ast::if_(std::get<If>(d.judgment.original.node).cond, strip_dead_cons(d.premises[0]),
                      strip_dead_cons(d.premises[1]));
    case Rule::WhlD:
      return ast::while_(std::get<While>(d.judgment.original.node).cond, strip_dead_cons(d.premises[0]));
    case Rule::CsqD:
      return strip_dead_cons(d.premises[0]);
    default:
      return d.judgment.residual;
  }
}

}  // namespace whilep
