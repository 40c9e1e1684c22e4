#include "whilep/cert.hpp"

#include <algorithm>
#include <array>

#include "whilep/io.hpp"

namespace whilep {
namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 14> kNames = {{
    {Rule::Skip, "skip"},
    {Rule::AssD1, "ass_d1"},
    {Rule::AssD2, "ass_d2"},
    {Rule::ConD1, "con_d1"},
    {Rule::ConD2, "con_d2"},
    {Rule::LokD1, "lok_d1"},
    {Rule::LokD2, "lok_d2"},
    {Rule::MutD1, "mut_d1"},
    {Rule::MutD2, "mut_d2"},
    {Rule::DisD, "dis_d"},
    {Rule::SeqD, "seq_d"},
    {Rule::IfD, "if_d"},
    {Rule::WhlD, "whl_d"},
    {Rule::CsqD, "csq_d"},
}};

constexpr std::string_view kFormat = "whilep-dce-certificate/1";

struct Rejection {
  std::string path;
  std::string reason;
};

LiveSet with_vars(LiveSet s, const std::set<VarName>& vars) {
  s.insert(vars.begin(), vars.end());
  return s;
}

bool superset(const LiveSet& big, const LiveSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string show(const LiveSet& s) { return live_to_json(s).dump(); }

// Node-local side conditions of the dead-code rules. Returns an empty string
// when the node is a correct rule application.
class NodeChecker {
 public:
  NodeChecker(const Derivation& d, const WidenConfig& cfg)
      : d_(d), j_(d.judgment), cfg_(cfg) {}

  std::string run() {
    if (d_.premises.size() != rule_arity(d_.rule)) {
      return std::string(rule_name(d_.rule)) + " expects " + std::to_string(rule_arity(d_.rule)) + " premise(s), got " +
             std::to_string(d_.premises.size());
    }
    if (j_.pre.pts.vars() != j_.post.pts.vars()) return "pre and post points-to types cover different variables";
    switch (d_.rule) {
      case Rule::Skip:
        return skip();
      case Rule::AssD1:
      case Rule::AssD2:
        return assign();
      case Rule::ConD1:
      case Rule::ConD2:
        return cons();
      case Rule::LokD1:
      case Rule::LokD2:
        return lookup();
      case Rule::MutD1:
      case Rule::MutD2:
        return mutate();
      case Rule::DisD:
        return dispose();
      case Rule::SeqD:
        return seq();
      case Rule::IfD:
        return if_();
      case Rule::WhlD:
        return while_();
      case Rule::CsqD:
        return consequence();
    }
    return "unknown rule";
  }

 private:
  template <class T>
  const T* form() const {
    return std::get_if<T>(&j_.original.node);
  }

  std::string mismatch() const {
    return std::string("rule ") + std::string(rule_name(d_.rule)) + " does not apply to '" + pretty(j_.original) + "'";
  }

  std::string expect_live(const LiveSet& want) const {
    if (j_.pre.live == want) return {};
    return "pre live set " + show(j_.pre.live) + " differs from the required " + show(want);
  }

  std::string expect_residual(const Stmt& want) const {
    if (j_.residual == want) return {};
    return "residual '" + pretty(j_.residual) + "' differs from the required '" + pretty(want) + "'";
  }

  // Points-to part of a leaf: the post type is the rule's image of the pre type.
  std::string expect_leaf_pts() const {
    if (j_.post.pts == transfer(j_.original, j_.pre.pts, cfg_)) return {};
    return "post points-to type is not the transfer of the pre type";
  }

  static std::string first_error(std::initializer_list<std::string> errs) {
    for (const auto& e : errs) {
      if (!e.empty()) return e;
    }
    return {};
  }

  std::string skip() const {
    if (!form<Skip>()) return mismatch();
    if (!(j_.pre == j_.post)) return "skip must have equal pre and post types";
    return expect_residual(ast::skip());
  }

  std::string assign() const {
    const auto* a = form<Assign>();
    if (!a) return mismatch();
    const LiveSet& post = j_.post.live;
    bool live = post.count(a->target) != 0;
    if (d_.rule == Rule::AssD1) {
      if (live) return "ass_d1 requires the target to be dead after the assignment";
      return first_error({expect_leaf_pts(), expect_live(post), expect_residual(ast::skip())});
    }
    if (!live) return "ass_d2 requires the target to be live after the assignment";
    LiveSet want = post;
    want.erase(a->target);
    return first_error({expect_leaf_pts(), expect_live(with_vars(want, free_vars(a->value))),
                        expect_residual(j_.original)});
  }

  std::string cons() const {
    const auto* c = form<Cons>();
    if (!c) return mismatch();
    const LiveSet& post = j_.post.live;
    auto n = static_cast<std::int64_t>(c->args.size());
    std::vector<bool> cell_live(c->args.size(), false);
    for (const auto& cell : cons_cells(j_.pre.pts, n, cfg_.k)) {
      if (post.count(cell)) cell_live[cell.index - 1] = true;
    }
    bool touched = post.count(c->target) != 0 ||
                   std::find(cell_live.begin(), cell_live.end(), true) != cell_live.end();
    if (d_.rule == Rule::ConD1) {
      if (touched) return "con_d1 requires no modified location to be live";
      return first_error({expect_leaf_pts(), expect_live(post),
                          expect_residual(ast::cons(c->target, std::vector<AExp>(c->args.size(), ast::num(0))))});
    }
    if (!touched) return "con_d2 requires some modified location to be live";
    LiveSet want = post;
    want.erase(c->target);
    for (std::size_t k = 0; k < c->args.size(); ++k) {
      if (cell_live[k] || may_fail(c->args[k])) want = with_vars(std::move(want), free_vars(c->args[k]));
    }
    return first_error({expect_leaf_pts(), expect_live(want), expect_residual(j_.original)});
  }

  std::string lookup() const {
    const auto* l = form<Lookup>();
    if (!l) return mismatch();
    const LiveSet& post = j_.post.live;
    bool live = post.count(l->target) != 0;
    if (d_.rule == Rule::LokD1) {
      if (live) return "lok_d1 requires the target to be dead after the lookup";
      return first_error({expect_leaf_pts(), expect_live(post), expect_residual(ast::skip())});
    }
    if (!live) return "lok_d2 requires the target to be live after the lookup";
    LiveSet want = post;
    want.erase(l->target);
    want = with_vars(std::move(want), free_vars(l->address));
    for (const auto& a : abs_eval(l->address, j_.pre.pts).addresses()) want.insert(a);
    return first_error({expect_leaf_pts(), expect_live(want), expect_residual(j_.original)});
  }

  std::string mutate() const {
    const auto* m = form<Mutate>();
    if (!m) return mismatch();
    const LiveSet& post = j_.post.live;
    auto targets = abs_eval(m->address, j_.pre.pts).addresses();
    bool hit = std::any_of(targets.begin(), targets.end(), [&](const Address& a) { return post.count(a) != 0; });
    if (d_.rule == Rule::MutD1) {
      if (hit) return "mut_d1 requires V to miss the post live set";
      return first_error({expect_leaf_pts(), expect_live(post), expect_residual(ast::skip())});
    }
    if (!hit) return "mut_d2 requires V to meet the post live set";
    LiveSet want = with_vars(with_vars(post, free_vars(m->address)), free_vars(m->value));
    return first_error({expect_leaf_pts(), expect_live(want), expect_residual(j_.original)});
  }

  std::string dispose() const {
    const auto* dis = form<Dispose>();
    if (!dis) return mismatch();
    return first_error({expect_leaf_pts(), expect_live(with_vars(j_.post.live, free_vars(dis->address))),
                        expect_residual(j_.original)});
  }

  std::string seq() const {
    const auto* q = form<Seq>();
    if (!q) return mismatch();
    const Judgment& a = d_.premises[0].judgment;
    const Judgment& b = d_.premises[1].judgment;
    if (!(a.original == *q->first) || !(b.original == *q->second)) return "premises do not judge the two halves";
    if (!(j_.pre == a.pre)) return "pre type differs from the first premise's pre type";
    if (!(a.post == b.pre)) return "first premise's post type differs from the second premise's pre type";
    if (!(j_.post == b.post)) return "post type differs from the second premise's post type";
    return expect_residual(ast::seq(a.residual, b.residual));
  }

  std::string if_() const {
    const auto* i = form<If>();
    if (!i) return mismatch();
    const Judgment& t = d_.premises[0].judgment;
    const Judgment& f = d_.premises[1].judgment;
    if (!(t.original == *i->then_branch) || !(f.original == *i->else_branch)) return "premises do not judge the branches";
    if (!(t.pre.pts == j_.pre.pts) || !(f.pre.pts == j_.pre.pts)) return "branches must start from the pre points-to type";
    if (!(t.post.live == j_.post.live) || !(f.post.live == j_.post.live)) return "branches must end in the post live set";
    if (!(j_.post.pts == pts_join(t.post.pts, f.post.pts))) return "post points-to type is not the join of the branches";
    LiveSet want = t.pre.live;
    want.insert(f.pre.live.begin(), f.pre.live.end());
    return first_error({expect_live(with_vars(want, free_vars(i->cond))),
                        expect_residual(ast::if_(i->cond, t.residual, f.residual))});
  }

  std::string while_() const {
    const auto* w = form<While>();
    if (!w) return mismatch();
    const Judgment& b = d_.premises[0].judgment;
    const PtsType& inv = j_.post.pts;
    const LiveSet& x = j_.pre.live;
    if (!(b.original == *w->body)) return "premise does not judge the loop body";
    if (!(b.pre.pts == inv)) return "body must start from the loop invariant";
    if (!pts_leq(j_.pre.pts, inv)) return "entry points-to type is not below the invariant";
    if (!pts_leq(b.post.pts, inv)) return "body does not preserve the invariant";
    if (!(b.post.live == x)) return "body must end in the loop's pre live set";
    if (!superset(x, with_vars(j_.post.live, free_vars(w->cond)))) return "loop live set misses the exit set or the guard";
    if (!superset(x, b.pre.live)) return "loop live set is not closed under the body";
    return expect_residual(ast::while_(w->cond, b.residual));
  }

  std::string consequence() const {
    const Judgment& p = d_.premises[0].judgment;
    if (!(p.original == j_.original)) return "premise judges a different statement";
    if (!lsh_leq(j_.pre, p.pre)) return "pre type is not below the premise's pre type";
    if (!lsh_leq(p.post, j_.post)) return "premise's post type is not below the post type";
    return expect_residual(p.residual);
  }

  const Derivation& d_;
  const Judgment& j_;
  const WidenConfig& cfg_;
};

bool check_tree(const Derivation& d, const WidenConfig& cfg, const std::string& path, Rejection& out) {
  std::string err = NodeChecker(d, cfg).run();
  if (!err.empty()) {
    out = {path, err};
    return false;
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    if (!check_tree(d.premises[i], cfg, path + "." + std::to_string(i), out)) return false;
  }
  return true;
}

// Serialization.

Json lsh_to_json(const LshType& t) { return Json{{"pts", pts_to_json(t.pts)}, {"live", live_to_json(t.live)}}; }

Json node_to_json(const Derivation& d) {
  Json premises = Json::array();
  for (const auto& p : d.premises) premises.push_back(node_to_json(p));
  return Json{{"rule", std::string(rule_name(d.rule))},
              {"stmt", pretty(d.judgment.original)},
              {"residual", pretty(d.judgment.residual)},
              {"pre", lsh_to_json(d.judgment.pre)},
              {"post", lsh_to_json(d.judgment.post)},
              {"premises", premises}};
}

const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(path, std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const Json& j, const char* name, const std::string& path) {
  const Json& f = field(j, name, path);
  if (!f.is_string()) throw FormatError(path + "." + name, "expected a string");
  return f.get<std::string>();
}

Stmt stmt_field(const Json& j, const char* name, const std::string& path) {
  try {
    return parse(string_field(j, name, path));
  } catch (const SyntaxError& e) {
    throw FormatError(path + "." + name, e.what());
  }
}

LshType lsh_field(const Json& j, const char* name, const std::string& path) {
  const Json& f = field(j, name, path);
  std::string p = path + "." + name;
  try {
    PtsType pts = pts_from_json(field(f, "pts", p));
    LiveSet live = live_from_json(field(f, "live", p));
    return LshType{std::move(pts), std::move(live)};
  } catch (const std::invalid_argument& e) {
    throw FormatError(p, e.what());
  }
}

Derivation node_from_json(const Json& j, const std::string& path) {
  std::string name = string_field(j, "rule", path);
  auto rule = rule_from_name(name);
  if (!rule) throw FormatError(path + ".rule", "unknown rule '" + name + "'");
  Stmt original = stmt_field(j, "stmt", path);
  LshType pre = lsh_field(j, "pre", path);
  LshType post = lsh_field(j, "post", path);
  Stmt residual = stmt_field(j, "residual", path);
  Derivation d{*rule, Judgment{std::move(original), std::move(pre), std::move(post), std::move(residual)}, {}};
  const Json& premises = field(j, "premises", path);
  if (!premises.is_array()) throw FormatError(path + ".premises", "expected an array");
  if (premises.size() != rule_arity(*rule)) {
    throw FormatError(path + ".premises", "rule " + name + " takes " + std::to_string(rule_arity(*rule)) +
                                              " premise(s), found " + std::to_string(premises.size()));
  }
  for (std::size_t i = 0; i < premises.size(); ++i) {
    d.premises.push_back(node_from_json(premises[i], path + ".premises[" + std::to_string(i) + "]"));
  }
  return d;
}

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kNames) {
    if (rule == r) return name;
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kNames) {
    if (n == name) return rule;
  }
  return std::nullopt;
}

std::size_t rule_arity(Rule r) {
  switch (r) {
    case Rule::SeqD:
    case Rule::IfD:
      return 2;
    case Rule::WhlD:
    case Rule::CsqD:
      return 1;
    default:
      return 0;
  }
}

CheckResult check(const Derivation& d, const WidenConfig& cfg) {
  Rejection r;
  if (check_tree(d, cfg, "root", r)) return {};
  return CheckResult{false, r.path, r.reason};
}

CheckResult check_certificate(const Certificate& c, const Stmt* program) {
  if (c.widen < 1) return CheckResult{false, "root", "widening bound must be positive"};
  const Judgment& root = c.derivation.judgment;
  if (!(root.post.live == c.live_out)) return CheckResult{false, "root", "post live set differs from live_out"};
  if (program) {
    if (!(root.original == *program)) return CheckResult{false, "root", "certificate judges a different program"};
    if (!(root.pre.pts == bottom(program_vars(*program)))) {
      return CheckResult{false, "root", "pre points-to type is not bottom"};
    }
  }
  WidenConfig cfg;
  cfg.k = c.widen;
  return check(c.derivation, cfg);
}

std::string serialize(const Certificate& c) {
  Json doc{{"format", std::string(kFormat)},
           {"widen", c.widen},
           {"live_out", live_to_json(c.live_out)},
           {"derivation", node_to_json(c.derivation)}};
  return doc.dump(1) + "\n";
}

Certificate deserialize(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError("$", e.what());
  }
  if (string_field(doc, "format", "$") != kFormat) throw FormatError("$.format", "unsupported certificate format");
  const Json& widen = field(doc, "widen", "$");
  if (!widen.is_number_integer() || widen.get<std::int64_t>() < 1) {
    throw FormatError("$.widen", "expected a positive integer");
  }
  Certificate c;
  c.widen = widen.get<std::int64_t>();
  try {
    c.live_out = live_from_json(field(doc, "live_out", "$"));
  } catch (const std::invalid_argument& e) {
    throw FormatError("$.live_out", e.what());
  }
  c.derivation = node_from_json(field(doc, "derivation", "$"), "$.derivation");
  return c;
}

}  // namespace whilep
