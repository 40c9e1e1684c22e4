#include <stdexcept>

#include "whilep/lang.hpp"

namespace whilep {
namespace ast {

AExp num(std::int64_t n) { return AExp{IntLit{n}}; }
AExp nil() { return AExp{NilLit{}}; }
AExp var(VarName name) { return AExp{VarRef{std::move(name)}}; }
AExp bin(ArithOp op, AExp lhs, AExp rhs) {
  return AExp{BinOp{op, std::move(lhs), std::move(rhs)}};
}
AExp add(AExp lhs, AExp rhs) { return bin(ArithOp::Add, std::move(lhs), std::move(rhs)); }
AExp sub(AExp lhs, AExp rhs) { return bin(ArithOp::Sub, std::move(lhs), std::move(rhs)); }
AExp mul(AExp lhs, AExp rhs) { return bin(ArithOp::Mul, std::move(lhs), std::move(rhs)); }

BExp truth(bool value) { return BExp{BoolLit{value}}; }
BExp cmp(CmpOp op, AExp lhs, AExp rhs) {
  return BExp{Cmp{op, std::move(lhs), std::move(rhs)}};
}
BExp eq(AExp lhs, AExp rhs) { return cmp(CmpOp::Eq, std::move(lhs), std::move(rhs)); }
BExp lt(AExp lhs, AExp rhs) { return cmp(CmpOp::Lt, std::move(lhs), std::move(rhs)); }
BExp le(AExp lhs, AExp rhs) { return cmp(CmpOp::Le, std::move(lhs), std::move(rhs)); }
BExp negate(BExp b) { return BExp{Not{std::move(b)}}; }
BExp conj(BExp lhs, BExp rhs) { return BExp{And{std::move(lhs), std::move(rhs)}}; }
BExp disj(BExp lhs, BExp rhs) { return BExp{Or{std::move(lhs), std::move(rhs)}}; }

Stmt skip() { return Stmt{Skip{}}; }
Stmt assign(VarName x, AExp e) { return Stmt{Assign{std::move(x), std::move(e)}}; }
Stmt cons(VarName x, std::vector<AExp> args) {
  if (args.empty()) throw std::invalid_argument("cons needs at least one argument");
  return Stmt{Cons{std::move(x), std::move(args)}};
}
Stmt lookup(VarName x, AExp e) { return Stmt{Lookup{std::move(x), std::move(e)}}; }
Stmt mutate(AExp lhs, AExp rhs) { return Stmt{Mutate{std::move(lhs), std::move(rhs)}}; }
Stmt dispose(AExp e) { return Stmt{Dispose{std::move(e)}}; }
Stmt seq(Stmt first, Stmt second) { return Stmt{Seq{std::move(first), std::move(second)}}; }
Stmt seq(std::vector<Stmt> stmts) {
  if (stmts.empty()) throw std::invalid_argument("empty statement sequence");
  Stmt result = stmts.back();
  for (auto it = stmts.rbegin() + 1; it != stmts.rend(); ++it) result = seq(*it, result);
  return result;
}
Stmt if_(BExp cond, Stmt then_branch, Stmt else_branch) {
  return Stmt{If{std::move(cond), std::move(then_branch), std::move(else_branch)}};
}
Stmt while_(BExp cond, Stmt body) { return Stmt{While{std::move(cond), std::move(body)}}; }

}  // namespace ast

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void collect(const AExp& e, std::set<VarName>& out) {
  std::visit(overloaded{
                 [&](const VarRef& v) { out.insert(v.name); },
                 [&](const BinOp& b) {
                   collect(*b.lhs, out);
                   collect(*b.rhs, out);
                 },
                 [](const auto&) {},
             },
             e.node);
}

void collect(const BExp& b, std::set<VarName>& out) {
  std::visit(overloaded{
                 [](const BoolLit&) {},
                 [&](const Cmp& c) {
                   collect(c.lhs, out);
                   collect(c.rhs, out);
                 },
                 [&](const Not& n) { collect(*n.operand, out); },
                 [&](const And& a) {
                   collect(*a.lhs, out);
                   collect(*a.rhs, out);
                 },
                 [&](const Or& o) {
                   collect(*o.lhs, out);
                   collect(*o.rhs, out);
                 },
             },
             b.node);
}

void collect(const Stmt& s, std::set<VarName>& out) {
  std::visit(overloaded{
                 [](const Skip&) {},
                 [&](const Assign& a) {
                   out.insert(a.target);
                   collect(a.value, out);
                 },
                 [&](const Cons& c) {
                   out.insert(c.target);
                   for (const auto& e : c.args) collect(e, out);
                 },
                 [&](const Lookup& l) {
                   out.insert(l.target);
                   collect(l.address, out);
                 },
                 [&](const Mutate& m) {
                   collect(m.address, out);
                   collect(m.value, out);
                 },
                 [&](const Dispose& d) { collect(d.address, out); },
                 [&](const Seq& q) {
                   collect(*q.first, out);
                   collect(*q.second, out);
                 },
                 [&](const If& i) {
                   collect(i.cond, out);
                   collect(*i.then_branch, out);
                   collect(*i.else_branch, out);
                 },
                 [&](const While& w) {
                   collect(w.cond, out);
                   collect(*w.body, out);
                 },
             },
             s.node);
}

// Appends the statements of a sequence, flattened, to out.
void flatten(const Stmt& s, std::vector<Stmt>& out) {
  if (const auto* q = std::get_if<Seq>(&s.node)) {
    flatten(*q->first, out);
    flatten(*q->second, out);
    return;
  }
  if (const auto* i = std::get_if<If>(&s.node)) {
    out.push_back(ast::if_(i->cond, normalize(*i->then_branch), normalize(*i->else_branch)));
    return;
  }
  if (const auto* w = std::get_if<While>(&s.node)) {
    out.push_back(ast::while_(w->cond, normalize(*w->body)));
    return;
  }
  out.push_back(s);
}

}  // namespace

std::set<VarName> free_vars(const AExp& e) {
  std::set<VarName> out;
  collect(e, out);
  return out;
}

std::set<VarName> free_vars(const BExp& b) {
  std::set<VarName> out;
  collect(b, out);
  return out;
}

std::set<VarName> program_vars(const Stmt& s) {
  std::set<VarName> out;
  collect(s, out);
  return out;
}

bool may_fail(const AExp& e) { return std::holds_alternative<BinOp>(e.node); }

Stmt normalize(const Stmt& s) {
  std::vector<Stmt> parts;
  flatten(s, parts);
  return ast::seq(std::move(parts));
}

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace whilep
