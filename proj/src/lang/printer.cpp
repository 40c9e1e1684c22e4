#include <sstream>

#include "whilep/lang.hpp"

namespace whilep {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

int precedence(ArithOp op) { return op == ArithOp::Mul ? 2 : 1; }

const char* symbol(ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return "+";
    case ArithOp::Sub:
      return "-";
    case ArithOp::Mul:
      return "*";
  }
  return "?";
}

const char* symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Eq:
      return "=";
    case CmpOp::Lt:
      return "<";
    case CmpOp::Le:
      return "<=";
  }
  return "?";
}

void print(std::ostream& os, const AExp& e, int min_prec) {
  std::visit(overloaded{
                 [&](const IntLit& n) { os << n.value; },
                 [&](const NilLit&) { os << "nil"; },
                 [&](const VarRef& v) { os << v.name; },
                 [&](const BinOp& b) {
                   int p = precedence(b.op);
                   if (p < min_prec) os << '(';
                   print(os, *b.lhs, p);
                   os << ' ' << symbol(b.op) << ' ';
                   print(os, *b.rhs, p + 1);
                   if (p < min_prec) os << ')';
                 },
             },
             e.node);
}

// Condition precedence: or 1, and 2, not 3, atoms 4.
void print(std::ostream& os, const BExp& b, int min_prec) {
  std::visit(overloaded{
                 [&](const BoolLit& l) { os << (l.value ? "true" : "false"); },
                 [&](const Cmp& c) {
                   print(os, c.lhs, 0);
                   os << ' ' << symbol(c.op) << ' ';
                   print(os, c.rhs, 0);
                 },
                 [&](const Not& n) {
                   if (3 < min_prec) os << '(';
                   os << "not ";
                   print(os, *n.operand, 3);
                   if (3 < min_prec) os << ')';
                 },
                 [&](const And& a) {
                   if (2 < min_prec) os << '(';
                   print(os, *a.lhs, 2);
                   os << " and ";
                   print(os, *a.rhs, 3);
                   if (2 < min_prec) os << ')';
                 },
                 [&](const Or& o) {
                   if (1 < min_prec) os << '(';
                   print(os, *o.lhs, 1);
                   os << " or ";
                   print(os, *o.rhs, 2);
                   if (1 < min_prec) os << ')';
                 },
             },
             b.node);
}

void print(std::ostream& os, const Stmt& s) {
  std::visit(overloaded{
                 [&](const Skip&) { os << "skip"; },
                 [&](const Assign& a) {
                   os << a.target << " := ";
                   print(os, a.value, 0);
                 },
                 [&](const Cons& c) {
                   os << c.target << " := cons(";
                   for (std::size_t i = 0; i < c.args.size(); ++i) {
                     if (i) os << ", ";
                     print(os, c.args[i], 0);
                   }
                   os << ')';
                 },
                 [&](const Lookup& l) {
                   os << l.target << " := [";
                   print(os, l.address, 0);
                   os << ']';
                 },
                 [&](const Mutate& m) {
                   os << '[';
                   print(os, m.address, 0);
                   os << "] := ";
                   print(os, m.value, 0);
                 },
                 [&](const Dispose& d) {
                   os << "dispose(";
                   print(os, d.address, 0);
                   os << ')';
                 },
                 [&](const Seq& q) {
                   print(os, *q.first);
                   os << "; ";
                   print(os, *q.second);
                 },
                 [&](const If& i) {
                   os << "if ";
                   print(os, i.cond, 0);
                   os << " then { ";
                   print(os, *i.then_branch);
                   os << " } else { ";
                   print(os, *i.else_branch);
                   os << " }";
                 },
                 [&](const While& w) {
                   os << "while ";
                   print(os, w.cond, 0);
                   os << " do { ";
                   print(os, *w.body);
                   os << " }";
                 },
             },
             s.node);
}

}  // namespace

std::string pretty(const Stmt& s) {
  std::ostringstream os;
  print(os, s);
  return os.str();
}

std::string pretty(const AExp& e) {
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

std::string pretty(const BExp& b) {
  std::ostringstream os;
  print(os, b, 0);
  return os.str();
}

}  // namespace whilep
