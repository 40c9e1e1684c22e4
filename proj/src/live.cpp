#include "whilep/live.hpp"

#include <algorithm>

namespace whilep {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void add_vars(LiveSet& out, const std::set<VarName>& vars) { out.insert(vars.begin(), vars.end()); }

void add_failing(LiveSet& out, const AExp& e) {
  if (may_fail(e)) add_vars(out, free_vars(e));
}

bool intersects(const AddrSet& as, const LiveSet& live) {
  return std::any_of(as.begin(), as.end(), [&](const Address& a) { return live.count(a) != 0; });
}

LiveSet leaf_pre(const Stmt& s, const PtsType& p, const LiveSet& post, const WidenConfig& cfg, LiveMode mode) {
  const bool transform = mode == LiveMode::Transform;
  LiveSet pre = post;
  std::visit(
      overloaded{
          [&](const Skip&) {},
          [&](const Assign& a) {
            if (post.count(a.target)) {
              pre.erase(a.target);
              add_vars(pre, free_vars(a.value));
            } else if (!transform) {
              add_failing(pre, a.value);
            }
          },
          [&](const Cons& c) {
            auto n = static_cast<std::int64_t>(c.args.size());
            std::vector<bool> cell_live(c.args.size(), false);
            for (const auto& a : cons_cells(p, n, cfg.k)) {
              if (post.count(a)) cell_live[a.index - 1] = true;
            }
            bool any_live = post.count(c.target) != 0 ||
                            std::find(cell_live.begin(), cell_live.end(), true) != cell_live.end();
            if (transform && !any_live) return;
            pre.erase(c.target);
            for (std::size_t j = 0; j < c.args.size(); ++j) {
              if (cell_live[j]) {
                add_vars(pre, free_vars(c.args[j]));
              } else {
                add_failing(pre, c.args[j]);
              }
            }
          },
          [&](const Lookup& l) {
            if (post.count(l.target)) {
              pre.erase(l.target);
              add_vars(pre, free_vars(l.address));
              for (const auto& a : abs_eval(l.address, p).addresses()) pre.insert(a);
            } else if (!transform) {
              add_vars(pre, free_vars(l.address));
            }
          },
          [&](const Mutate& m) {
            if (intersects(abs_eval(m.address, p).addresses(), post)) {
              add_vars(pre, free_vars(m.address));
              add_vars(pre, free_vars(m.value));
            } else if (!transform) {
              add_vars(pre, free_vars(m.address));
              add_failing(pre, m.value);
            }
          },
          [&](const Dispose& d) { add_vars(pre, free_vars(d.address)); },
          [](const auto&) { throw std::logic_error("not a leaf statement"); },
      },
      s.node);
  return pre;
}

}  // namespace

bool lsh_leq(const LshType& a, const LshType& b) {
  return pts_leq(a.pts, b.pts) && std::includes(a.live.begin(), a.live.end(), b.live.begin(), b.live.end());
}

LiveSet live_pre_exp(const AExp& e, LiveSet post) {
  add_vars(post, free_vars(e));
  return post;
}

LiveSet live_pre_exp(const BExp& b, LiveSet post) {
  add_vars(post, free_vars(b));
  return post;
}

std::set<Address> cons_cells(const PtsType& p, std::int64_t n, std::int64_t k) {
  std::set<Address> out;
  std::int64_t v = cons_instance_bound(p, n, k);
  for (std::int64_t i = 1; i <= v; ++i) {
    for (std::int64_t j = 1; j <= n; ++j) out.insert(Address{n, i, j});
  }
  return out;
}

LiveResult live_pre(const PtsNode& node, const LiveSet& post, const WidenConfig& cfg, LiveMode mode) {
  LiveNode out{node.stmt, node.pre, node.post, {}, post, {}};
  if (std::holds_alternative<Seq>(node.stmt.node)) {
    LiveResult second = live_pre(node.children[1], post, cfg, mode);
    LiveResult first = live_pre(node.children[0], second.pre, cfg, mode);
    out.live_pre = first.pre;
    out.children = {std::move(first.tree), std::move(second.tree)};
  } else if (const auto* i = std::get_if<If>(&node.stmt.node)) {
    LiveResult t = live_pre(node.children[0], post, cfg, mode);
    LiveResult f = live_pre(node.children[1], post, cfg, mode);
    LiveSet joined = t.pre;
    joined.insert(f.pre.begin(), f.pre.end());
    out.live_pre = live_pre_exp(i->cond, std::move(joined));
    out.children = {std::move(t.tree), std::move(f.tree)};
  } else if (const auto* w = std::get_if<While>(&node.stmt.node)) {
    // Least X containing post and FV(b) that the body maps into itself.
    LiveSet x = live_pre_exp(w->cond, post);
    while (true) {
      LiveResult body = live_pre(node.children[0], x, cfg, mode);
      LiveSet next = x;
      next.insert(body.pre.begin(), body.pre.end());
      if (next == x) {
        out.children = {std::move(body.tree)};
        break;
      }
      x = std::move(next);
    }
    out.live_pre = std::move(x);
  } else {
    out.live_pre = leaf_pre(node.stmt, node.pre, post, cfg, mode);
  }
  LiveSet pre = out.live_pre;
  return LiveResult{std::move(pre), std::move(out)};
}

bool models_lsh_pts(const RegularState& st, const PtsType& p, const LiveSet& live, std::int64_t k) {
  auto ok = [&](const Value& v, const Key& where) {
    const auto* a = std::get_if<Address>(&v);
    return !a || p.image(where).count(abstract(*a, k)) != 0;
  };
  for (const auto& [a, v] : st.heap) {
    Address abs = abstract(a, k);
    if (!p.has(abs)) return false;
    if (live.count(abs) && !ok(v, abs)) return false;
  }
  for (const auto& [x, v] : st.stack) {
    if (live.count(x) && !ok(v, x)) return false;
  }
  return true;
}

bool similar_states(const RegularState& a, const RegularState& b, const PtsType& p, const LiveSet& live,
                    std::int64_t k) {
  if (a.heap.size() != b.heap.size()) return false;
  for (auto ia = a.heap.begin(), ib = b.heap.begin(); ia != a.heap.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
  }
  if (!models_lsh_pts(a, p, live, k) || !models_lsh_pts(b, p, live, k)) return false;
  for (const auto& key : live) {
    if (const auto* x = std::get_if<VarName>(&key)) {
      auto ia = a.stack.find(*x);
      auto ib = b.stack.find(*x);
      if ((ia == a.stack.end()) != (ib == b.stack.end())) return false;
      if (ia != a.stack.end() && ia->second != ib->second) return false;
    }
  }
  for (const auto& [addr, v] : a.heap) {
    if (live.count(abstract(addr, k)) && b.heap.at(addr) != v) return false;
  }
  return true;
}

LiveSet to_live_set(const std::set<VarName>& vars) { return LiveSet(vars.begin(), vars.end()); }

}  // namespace whilep
