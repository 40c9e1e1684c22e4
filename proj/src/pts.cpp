#include "whilep/pts.hpp"

#include <algorithm>

namespace whilep {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const AddrSet kEmpty;

AddrSet shift_all(const AddrSet& as, std::int64_t k) {
  AddrSet out;
  for (const auto& a : as) {
    if (auto b = addr_shift(a, k)) out.insert(*b);
  }
  return out;
}

// Every cell of every array that a member of `as` lives in.
AddrSet whole_arrays(const AddrSet& as) {
  AddrSet out;
  for (const auto& a : as) {
    for (std::int64_t i = 1; i <= a.length; ++i) out.insert(Address{a.length, a.instance, i});
  }
  return out;
}

AddrSet unite(AddrSet a, const AddrSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

AbsVal combine(ArithOp op, const AbsVal& l, const AbsVal& r) {
  const auto* li = std::get_if<std::int64_t>(&l.value);
  const auto* ri = std::get_if<std::int64_t>(&r.value);
  if (li && ri) return AbsVal{int_op(op, *li, *ri)};
  if (op == ArithOp::Mul) return AbsVal{AddrSet{}};
  const auto* la = std::get_if<AddrSet>(&l.value);
  const auto* ra = std::get_if<AddrSet>(&r.value);
  if (op == ArithOp::Add) {
    if (la && ri) return AbsVal{shift_all(*la, *ri)};
    if (li && ra) return AbsVal{shift_all(*ra, *li)};
    return AbsVal{unite(whole_arrays(*la), whole_arrays(*ra))};
  }
  // Sub: only address - integer yields an address.
  if (la && ri) return AbsVal{*ri == INT64_MIN ? AddrSet{} : shift_all(*la, -*ri)};
  if (la) return AbsVal{whole_arrays(*la)};
  return AbsVal{AddrSet{}};
}

Address collapse(const Address& a, std::int64_t k) { return abstract(a, k); }

AddrSet collapse(const AddrSet& as, std::int64_t k) {
  AddrSet out;
  for (const auto& a : as) out.insert(collapse(a, k));
  return out;
}

void empty_images(PtsType& p) {
  for (const auto& [key, image] : p.env()) {
    p.set(key, {});
  }
}

PtsType leaf_transfer(const Stmt& s, const PtsType& p, const WidenConfig& cfg) {
  return std::visit(
      overloaded{
          [&](const Skip&) { return p; },
          [&](const Dispose&) { return p; },
          [&](const Assign& a) {
            PtsType out = p;
            out.set(a.target, abs_eval(a.value, p).addresses());
            return out;
          },
          [&](const Lookup& l) {
            AddrSet img;
            for (const auto& a : abs_eval(l.address, p).addresses()) {
              const auto& pa = p.image(a);
              img.insert(pa.begin(), pa.end());
            }
            PtsType out = p;
            out.set(l.target, std::move(img));
            return out;
          },
          [&](const Cons& c) {
            auto n = static_cast<std::int64_t>(c.args.size());
            std::vector<AddrSet> vals;
            for (const auto& e : c.args) vals.push_back(abs_eval(e, p).addresses());
            std::int64_t v = cons_instance_bound(p, n, cfg.k);
            // Join over the candidate instances 1..v of the single-instance
            // updates. A cell keeps its old image whenever some other candidate
            // leaves it alone, or when it is a summary cell.
            PtsType out = p;
            AddrSet heads;
            for (std::int64_t i = 1; i <= v; ++i) {
              heads.insert(Address{n, i, 1});
              bool weak = v > 1 || i == cfg.k;
              for (std::int64_t j = 1; j <= n; ++j) {
                Address cell{n, i, j};
                out.set(cell, weak ? unite(p.image(cell), vals[j - 1]) : vals[j - 1]);
              }
            }
            out.set(c.target, std::move(heads));
            return out;
          },
          [&](const Mutate& m) {
            AddrSet targets = abs_eval(m.address, p).addresses();
            AddrSet val = abs_eval(m.value, p).addresses();
            PtsType out = p;
            if (targets.empty()) {
              // Every modeled execution aborts here.
              empty_images(out);
              return out;
            }
            const Address& only = *targets.begin();
            if (targets.size() == 1 && only.instance < cfg.k) {
              out.set(only, val);
              return out;
            }
            for (const auto& a : targets) {
              if (cfg.drop_weak_update) {
                out.ensure(a);
              } else {
                out.add(a, val);
              }
            }
            return out;
          },
          [&](const auto&) -> PtsType { throw std::logic_error("not a leaf statement"); },
      },
      s.node);
}

}  // namespace

std::string to_string(const Key& k) {
  if (const auto* v = std::get_if<VarName>(&k)) return *v;
  return to_string(std::get<Address>(k));
}

const AddrSet& PtsType::image(const Key& k) const {
  auto it = env_.find(k);
  return it == env_.end() ? kEmpty : it->second;
}

AddrSet PtsType::tracked() const {
  AddrSet out;
  for (const auto& [k, img] : env_) {
    if (const auto* a = std::get_if<Address>(&k)) out.insert(*a);
  }
  return out;
}

std::set<VarName> PtsType::vars() const {
  std::set<VarName> out;
  for (const auto& [k, img] : env_) {
    if (const auto* v = std::get_if<VarName>(&k)) out.insert(*v);
  }
  return out;
}

AddrSet AbsVal::addresses() const {
  if (const auto* as = std::get_if<AddrSet>(&value)) return *as;
  return {};
}

PtsType bottom(const std::set<VarName>& vars) {
  PtsType p;
  for (const auto& v : vars) p.ensure(v);
  return p;
}

bool pts_leq(const PtsType& a, const PtsType& b) {
  for (const auto& [k, img] : a.env()) {
    if (!b.has(k)) return false;
    const auto& other = b.image(k);
    if (!std::includes(other.begin(), other.end(), img.begin(), img.end())) return false;
  }
  return true;
}

PtsType pts_join(const PtsType& a, const PtsType& b) {
  PtsType out = a;
  for (const auto& [k, img] : b.env()) out.add(k, img);
  return out;
}

PtsType widen(const PtsType& p, std::int64_t k) {
  PtsType out;
  for (const auto& [key, img] : p.env()) {
    Key target = key;
    if (const auto* a = std::get_if<Address>(&key)) target = collapse(*a, k);
    out.add(target, collapse(img, k));
  }
  return out;
}

AbsVal abs_eval(const AExp& e, const PtsType& p) {
  return std::visit(overloaded{
                        [](const IntLit& n) { return AbsVal{n.value}; },
                        [](const NilLit&) { return AbsVal{AddrSet{}}; },
                        [&](const VarRef& v) { return AbsVal{p.image(v.name)}; },
                        [&](const BinOp& b) { return combine(b.op, abs_eval(*b.lhs, p), abs_eval(*b.rhs, p)); },
                    },
                    e.node);
}

std::int64_t cons_instance_bound(const PtsType& p, std::int64_t n, std::int64_t k) {
  return std::min(fresh_instance(p.tracked(), n), k);
}

PtsNode annotate(const Stmt& s, const PtsType& p0, const WidenConfig& cfg) {
  PtsType p = widen(p0, cfg.k);
  PtsNode node{s, p, p, std::nullopt, {}};
  if (const auto* q = std::get_if<Seq>(&s.node)) {
    PtsNode first = annotate(*q->first, p, cfg);
    PtsNode second = annotate(*q->second, first.post, cfg);
    node.post = second.post;
    node.children = {std::move(first), std::move(second)};
  } else if (const auto* i = std::get_if<If>(&s.node)) {
    PtsNode t = annotate(*i->then_branch, p, cfg);
    PtsNode f = annotate(*i->else_branch, p, cfg);
    node.post = pts_join(t.post, f.post);
    node.children = {std::move(t), std::move(f)};
  } else if (const auto* w = std::get_if<While>(&s.node)) {
    PtsType inv = p;
    while (true) {
      PtsNode body = annotate(*w->body, inv, cfg);
      PtsType next = widen(pts_join(inv, body.post), cfg.k);
      if (next == inv) {
        node.children = {std::move(body)};
        break;
      }
      inv = std::move(next);
    }
    node.post = inv;
    node.invariant = std::move(inv);
  } else {
    node.post = leaf_transfer(s, p, cfg);
  }
  return node;
}

PtsType transfer(const Stmt& s, const PtsType& p, const WidenConfig& cfg) { return annotate(s, p, cfg).post; }

bool models_pts(const RegularState& st, const PtsType& p, std::int64_t k) {
  auto ok = [&](const Value& v, const Key& where) {
    const auto* a = std::get_if<Address>(&v);
    return !a || p.image(where).count(collapse(*a, k)) != 0;
  };
  for (const auto& [a, v] : st.heap) {
    Address abs = collapse(a, k);
    if (!p.has(abs)) return false;
    if (!ok(v, abs)) return false;
  }
  for (const auto& [x, v] : st.stack) {
    if (!ok(v, x)) return false;
  }
  return true;
}

}  // namespace whilep
