#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace whilep {

using VarName = std::string;

// Immutable shared subtree that compares by value.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

enum class ArithOp { Add, Sub, Mul };
enum class CmpOp { Eq, Lt, Le };

struct AExp;

struct IntLit {
  std::int64_t value;
  bool operator==(const IntLit&) const = default;
};
struct NilLit {
  bool operator==(const NilLit&) const = default;
};
struct VarRef {
  VarName name;
  bool operator==(const VarRef&) const = default;
};
struct BinOp {
  ArithOp op;
  Box<AExp> lhs;
  Box<AExp> rhs;
  bool operator==(const BinOp&) const = default;
};

struct AExp {
  std::variant<IntLit, NilLit, VarRef, BinOp> node;
  bool operator==(const AExp&) const = default;
};

struct BExp;

struct BoolLit {
  bool value;
  bool operator==(const BoolLit&) const = default;
};
struct Cmp {
  CmpOp op;
  AExp lhs;
  AExp rhs;
  bool operator==(const Cmp&) const = default;
};
struct Not {
  Box<BExp> operand;
  bool operator==(const Not&) const = default;
};
struct And {
  Box<BExp> lhs;
  Box<BExp> rhs;
  bool operator==(const And&) const = default;
};
struct Or {
  Box<BExp> lhs;
  Box<BExp> rhs;
  bool operator==(const Or&) const = default;
};

struct BExp {
  std::variant<BoolLit, Cmp, Not, And, Or> node;
  bool operator==(const BExp&) const = default;
};

struct Stmt;

struct Skip {
  bool operator==(const Skip&) const = default;
};
struct Assign {
  VarName target;
  AExp value;
  bool operator==(const Assign&) const = default;
};
// x := cons(e1, ..., en), n >= 1
struct Cons {
  VarName target;
  std::vector<AExp> args;
  bool operator==(const Cons&) const = default;
};
// x := [e]
struct Lookup {
  VarName target;
  AExp address;
  bool operator==(const Lookup&) const = default;
};
// [e1] := e2
struct Mutate {
  AExp address;
  AExp value;
  bool operator==(const Mutate&) const = default;
};
struct Dispose {
  AExp address;
  bool operator==(const Dispose&) const = default;
};
struct Seq {
  Box<Stmt> first;
  Box<Stmt> second;
  bool operator==(const Seq&) const = default;
};
struct If {
  BExp cond;
  Box<Stmt> then_branch;
  Box<Stmt> else_branch;
  bool operator==(const If&) const = default;
};
struct While {
  BExp cond;
  Box<Stmt> body;
  bool operator==(const While&) const = default;
};

struct Stmt {
  std::variant<Skip, Assign, Cons, Lookup, Mutate, Dispose, Seq, If, While> node;
  bool operator==(const Stmt&) const = default;
};

// Builders. Kept short because tests and the generator use them heavily.
namespace ast {
AExp num(std::int64_t n);
AExp nil();
AExp var(VarName name);
AExp bin(ArithOp op, AExp lhs, AExp rhs);
AExp add(AExp lhs, AExp rhs);
AExp sub(AExp lhs, AExp rhs);
AExp mul(AExp lhs, AExp rhs);

BExp truth(bool value);
BExp cmp(CmpOp op, AExp lhs, AExp rhs);
BExp eq(AExp lhs, AExp rhs);
BExp lt(AExp lhs, AExp rhs);
BExp le(AExp lhs, AExp rhs);
BExp negate(BExp b);
BExp conj(BExp lhs, BExp rhs);
BExp disj(BExp lhs, BExp rhs);

Stmt skip();
Stmt assign(VarName x, AExp e);
Stmt cons(VarName x, std::vector<AExp> args);
Stmt lookup(VarName x, AExp e);
Stmt mutate(AExp lhs, AExp rhs);
Stmt dispose(AExp e);
Stmt seq(Stmt first, Stmt second);
// Right-nested sequence of one or more statements.
Stmt seq(std::vector<Stmt> stmts);
Stmt if_(BExp cond, Stmt then_branch, Stmt else_branch);
Stmt while_(BExp cond, Stmt body);
}  // namespace ast

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Stmt parse(std::string_view text);
AExp parse_aexp(std::string_view text);
BExp parse_bexp(std::string_view text);

std::string pretty(const Stmt& s);
std::string pretty(const AExp& e);
std::string pretty(const BExp& b);

std::set<VarName> free_vars(const AExp& e);
std::set<VarName> free_vars(const BExp& b);
// Every variable occurring anywhere in the statement (the program's Var).
std::set<VarName> program_vars(const Stmt& s);

// True when evaluating e can raise an evaluation error (it contains an
// arithmetic operator); literals, nil and variables always evaluate.
bool may_fail(const AExp& e);

// Re-associates every sequence to the right, which is the shape parse yields.
Stmt normalize(const Stmt& s);

}  // namespace whilep
