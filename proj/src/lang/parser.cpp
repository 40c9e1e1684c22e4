#include <array>
#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>

#include "whilep/lang.hpp"

namespace whilep {
namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t magnitude = 0;  // for Int
  int line;
  int column;
};

constexpr std::array kKeywords = {"skip", "if",  "then",  "else", "while", "do",  "cons", "dispose",
                                  "nil",  "true", "false", "not",  "and",   "or"};

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line;
    int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word(src.substr(i, j - i));
      if (word == "addr") throw SyntaxError(tl, tc, "address literals are not allowed in source programs");
      out.push_back({Tok::Ident, word, 0, tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t value = 0;
      constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        std::uint64_t digit = static_cast<std::uint64_t>(src[j] - '0');
        if (value > (kLimit - digit) / 10) throw SyntaxError(tl, tc, "integer literal out of range");
        value = value * 10 + digit;
        ++j;
      }
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), value, tl, tc});
      advance(j - i);
      continue;
    }
    static constexpr std::array<std::string_view, 2> kTwo = {":=", "<="};
    bool matched = false;
    for (auto sym : kTwo) {
      if (src.substr(i, 2) == sym) {
        out.push_back({Tok::Sym, std::string(sym), 0, tl, tc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("[](){},;+-*=<").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), 0, tl, tc});
      advance(1);
      continue;
    }
    throw SyntaxError(tl, tc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Stmt program() {
    Stmt s = sequence();
    expect_end();
    return s;
  }

  AExp whole_aexp() {
    AExp e = aexp();
    expect_end();
    return e;
  }

  BExp whole_bexp() {
    BExp b = bexp();
    expect_end();
    return b;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool at_sym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool at_kw(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, "expected " + expected + " but found " + found);
  }

  void expect_sym(std::string_view s) {
    if (!at_sym(s)) fail("'" + std::string(s) + "'");
    ++pos_;
  }

  void expect_kw(std::string_view s) {
    if (!at_kw(s)) fail("'" + std::string(s) + "'");
    ++pos_;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("end of input");
  }

  VarName ident() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("identifier");
    return toks_[pos_++].text;
  }

  Stmt sequence() {
    std::vector<Stmt> parts{statement()};
    while (at_sym(";")) {
      ++pos_;
      parts.push_back(statement());
    }
    return ast::seq(std::move(parts));
  }

  Stmt block() {
    expect_sym("{");
    Stmt s = sequence();
    expect_sym("}");
    return s;
  }

  Stmt statement() {
    if (at_kw("skip")) {
      ++pos_;
      return ast::skip();
    }
    if (at_kw("dispose")) {
      ++pos_;
      expect_sym("(");
      AExp e = aexp();
      expect_sym(")");
      return ast::dispose(std::move(e));
    }
    if (at_kw("if")) {
      ++pos_;
      BExp b = bexp();
      expect_kw("then");
      Stmt t = block();
      expect_kw("else");
      Stmt f = block();
      return ast::if_(std::move(b), std::move(t), std::move(f));
    }
    if (at_kw("while")) {
      ++pos_;
      BExp b = bexp();
      expect_kw("do");
      Stmt body = block();
      return ast::while_(std::move(b), std::move(body));
    }
    if (at_sym("[")) {
      ++pos_;
      AExp lhs = aexp();
      expect_sym("]");
      expect_sym(":=");
      AExp rhs = aexp();
      return ast::mutate(std::move(lhs), std::move(rhs));
    }
    if (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
      VarName x = ident();
      expect_sym(":=");
      if (at_kw("cons")) {
        ++pos_;
        expect_sym("(");
        std::vector<AExp> args{aexp()};
        while (at_sym(",")) {
          ++pos_;
          args.push_back(aexp());
        }
        expect_sym(")");
        return ast::cons(std::move(x), std::move(args));
      }
      if (at_sym("[")) {
        ++pos_;
        AExp e = aexp();
        expect_sym("]");
        return ast::lookup(std::move(x), std::move(e));
      }
      return ast::assign(std::move(x), aexp());
    }
    fail("statement");
  }

  AExp aexp() {
    AExp lhs = term();
    while (at_sym("+") || at_sym("-")) {
      ArithOp op = peek().text == "+" ? ArithOp::Add : ArithOp::Sub;
      ++pos_;
      lhs = ast::bin(op, std::move(lhs), term());
    }
    return lhs;
  }

  AExp term() {
    AExp lhs = primary();
    while (at_sym("*")) {
      ++pos_;
      lhs = ast::bin(ArithOp::Mul, std::move(lhs), primary());
    }
    return lhs;
  }

  AExp primary() {
    if (peek().kind == Tok::Int) return ast::num(static_cast<std::int64_t>(integer(false)));
    if (at_sym("-") && toks_[pos_ + 1].kind == Tok::Int) {
      ++pos_;
      return ast::num(integer(true));
    }
    if (at_kw("nil")) {
      ++pos_;
      return ast::nil();
    }
    if (at_sym("(")) {
      ++pos_;
      AExp e = aexp();
      expect_sym(")");
      return e;
    }
    if (peek().kind == Tok::Ident && !is_keyword(peek().text)) return ast::var(ident());
    fail("arithmetic expression");
  }

  std::int64_t integer(bool negative) {
    const Token& t = toks_[pos_];
    constexpr std::uint64_t kMaxPositive = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (!negative && t.magnitude > kMaxPositive) throw SyntaxError(t.line, t.column, "integer literal out of range");
    ++pos_;
    if (!negative) return static_cast<std::int64_t>(t.magnitude);
    // Two's-complement negation of the magnitude; covers INT64_MIN.
    return static_cast<std::int64_t>(~t.magnitude + 1);
  }

  BExp bexp() {
    BExp lhs = conjunction();
    while (at_kw("or")) {
      ++pos_;
      lhs = ast::disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  BExp conjunction() {
    BExp lhs = unary();
    while (at_kw("and")) {
      ++pos_;
      lhs = ast::conj(std::move(lhs), unary());
    }
    return lhs;
  }

  BExp unary() {
    if (at_kw("not")) {
      ++pos_;
      return ast::negate(unary());
    }
    return atom();
  }

  BExp atom() {
    if (at_kw("true") || at_kw("false")) {
      bool v = peek().text == "true";
      ++pos_;
      return ast::truth(v);
    }
    if (at_sym("(")) {
      // "(" may open a parenthesized condition or an arithmetic operand.
      std::size_t saved = pos_;
      try {
        ++pos_;
        BExp b = bexp();
        expect_sym(")");
        return b;
      } catch (const SyntaxError&) {
        pos_ = saved;
      }
    }
    AExp lhs = aexp();
    CmpOp op;
    if (at_sym("=")) {
      op = CmpOp::Eq;
    } else if (at_sym("<")) {
      op = CmpOp::Lt;
    } else if (at_sym("<=")) {
      op = CmpOp::Le;
    } else {
      fail("'=', '<' or '<='");
    }
    ++pos_;
    return ast::cmp(op, std::move(lhs), aexp());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Stmt parse(std::string_view text) { return Parser(text).program(); }
AExp parse_aexp(std::string_view text) { return Parser(text).whole_aexp(); }
BExp parse_bexp(std::string_view text) { return Parser(text).whole_bexp(); }

}  // namespace whilep
