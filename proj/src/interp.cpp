#include "whilep/interp.hpp"

namespace whilep {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::optional<Value> apply(ArithOp op, const Value& a, const Value& b) {
  const auto* ia = std::get_if<std::int64_t>(&a);
  const auto* ib = std::get_if<std::int64_t>(&b);
  if (ia && ib) return int_op(op, *ia, *ib);
  const auto* pa = std::get_if<Address>(&a);
  const auto* pb = std::get_if<Address>(&b);
  std::optional<Address> r;
  if (op == ArithOp::Add && pa && ib) r = addr_shift(*pa, *ib);
  if (op == ArithOp::Add && ia && pb) r = addr_shift(*pb, *ia);
  // k can be INT64_MIN; negating it would overflow, and no shift that large lands in range.
  if (op == ArithOp::Sub && pa && ib && *ib != INT64_MIN) r = addr_shift(*pa, -*ib);
  if (r) return Value{*r};
  return std::nullopt;
}

class Machine {
 public:
  explicit Machine(std::int64_t fuel) : fuel_(fuel) {}

  // Returns false on abort; out_of_fuel_ distinguishes fuel exhaustion.
  bool run(const Stmt& stmt, RegularState& st) {
    return std::visit(
        overloaded{
            [&](const Skip&) { return true; },
            [&](const Assign& a) {
              auto v = eval_aexp(a.value, st.stack);
              if (!v) return false;
              st.stack[a.target] = *v;
              return true;
            },
            [&](const Cons& c) {
              std::vector<Value> vals;
              for (const auto& e : c.args) {
                auto v = eval_aexp(e, st.stack);
                if (!v) return false;
                vals.push_back(*v);
              }
              auto n = static_cast<std::int64_t>(vals.size());
              std::int64_t u = fresh_instance(st.heap, n);
              for (std::int64_t i = 1; i <= n; ++i) st.heap[Address{n, u, i}] = vals[i - 1];
              st.stack[c.target] = Address{n, u, 1};
              return true;
            },
            [&](const Lookup& l) {
              auto v = eval_aexp(l.address, st.stack);
              if (!v || !is_address(*v)) return false;
              auto it = st.heap.find(std::get<Address>(*v));
              if (it == st.heap.end()) return false;
              st.stack[l.target] = it->second;
              return true;
            },
            [&](const Mutate& m) {
              auto target = eval_aexp(m.address, st.stack);
              if (!target || !is_address(*target)) return false;
              auto it = st.heap.find(std::get<Address>(*target));
              if (it == st.heap.end()) return false;
              auto v = eval_aexp(m.value, st.stack);
              if (!v) return false;
              it->second = *v;
              return true;
            },
            [&](const Dispose& d) {
              auto target = eval_aexp(d.address, st.stack);
              if (!target || !is_address(*target)) return false;
              return st.heap.erase(std::get<Address>(*target)) == 1;
            },
            [&](const Seq& q) {
              if (!spend()) return false;
              return run(*q.first, st) && run(*q.second, st);
            },
            [&](const If& i) {
              auto b = eval_bexp(i.cond, st.stack);
              if (!b) return false;
              return run(*b ? *i.then_branch : *i.else_branch, st);
            },
            [&](const While& w) {
              while (true) {
                auto b = eval_bexp(w.cond, st.stack);
                if (!b) return false;
                if (!*b) return true;
                if (!spend()) return false;
                if (!run(*w.body, st)) return false;
              }
            },
        },
        stmt.node);
  }

  bool out_of_fuel() const { return out_of_fuel_; }

 private:
  bool spend() {
    if (fuel_ <= 0) {
      out_of_fuel_ = true;
      return false;
    }
    --fuel_;
    return true;
  }

  std::int64_t fuel_;
  bool out_of_fuel_ = false;
};

}  // namespace

std::optional<Value> eval_aexp(const AExp& e, const Stack& s) {
  return std::visit(overloaded{
                        [](const IntLit& n) -> std::optional<Value> { return Value{n.value}; },
                        [](const NilLit&) -> std::optional<Value> { return Value{Nil{}}; },
                        [&](const VarRef& v) -> std::optional<Value> {
                          auto it = s.find(v.name);
                          if (it == s.end()) return std::nullopt;
                          return it->second;
                        },
                        [&](const BinOp& b) -> std::optional<Value> {
                          auto l = eval_aexp(*b.lhs, s);
                          if (!l) return std::nullopt;
                          auto r = eval_aexp(*b.rhs, s);
                          if (!r) return std::nullopt;
                          return apply(b.op, *l, *r);
                        },
                    },
                    e.node);
}

std::optional<bool> eval_bexp(const BExp& b, const Stack& s) {
  return std::visit(overloaded{
                        [](const BoolLit& l) -> std::optional<bool> { return l.value; },
                        [&](const Cmp& c) -> std::optional<bool> {
                          auto l = eval_aexp(c.lhs, s);
                          auto r = eval_aexp(c.rhs, s);
                          if (!l || !r) return std::nullopt;
                          switch (c.op) {
                            case CmpOp::Eq:
                              return *l == *r;
                            case CmpOp::Lt:
                              return value_lt(*l, *r);
                            case CmpOp::Le:
                              return value_lt(*l, *r) || *l == *r;
                          }
                          return std::nullopt;
                        },
                        [&](const Not& n) -> std::optional<bool> {
                          auto v = eval_bexp(*n.operand, s);
                          if (!v) return std::nullopt;
                          return !*v;
                        },
                        [&](const And& a) -> std::optional<bool> {
                          auto l = eval_bexp(*a.lhs, s);
                          auto r = eval_bexp(*a.rhs, s);
                          if (!l || !r) return std::nullopt;
                          return *l && *r;
                        },
                        [&](const Or& o) -> std::optional<bool> {
                          auto l = eval_bexp(*o.lhs, s);
                          auto r = eval_bexp(*o.rhs, s);
                          if (!l || !r) return std::nullopt;
                          return *l || *r;
                        },
                    },
                    b.node);
}

ExecOutcome exec(const Stmt& s, const RegularState& st, std::int64_t fuel) {
  Machine m(fuel);
  RegularState work = st;
  if (m.run(s, work)) return Final{std::move(work)};
  if (m.out_of_fuel()) return OutOfFuel{};
  return Aborted{};
}

}  // namespace whilep
