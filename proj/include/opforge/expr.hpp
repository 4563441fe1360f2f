#pragma once

#include "opforge/hopf.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace opforge {

// Raised by parse with a 1-based line and column.
struct SyntaxError : std::invalid_argument {
    int line, column;
    SyntaxError(int l, int c, const std::string& what);
};

// Raised by evaluate on a family, arity or type mismatch.
struct EvalError : std::invalid_argument {
    int line, column;
    EvalError(int l, int c, const std::string& what);
};

enum class ExprKind {
    Number,     // rational constant
    Literal,    // family-annotated basis key
    Neg,
    Add,
    Sub,
    Scale,      // a * b, one side a scalar
    Concat,     // a · b: words
    Tensor,     // a (x) b
    Compose,    // a o_i b
    Bullet,     // pre-Lie product
    Brace,      // brace(p; q_1 ... q_k)
    Bracket,    // binf(p; q_1 ... q_k)
    StarT,      // star_t(u; v): tensor star product from the braces
    StarS,      // star_s(u; v): symmetric star product
    DendLeft,
    DendRight,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    int line = 1, column = 1;
    Rational number;
    Obj literal;
    bool dual = false;  // literal written with the dual marker x*
    int slot = 0;       // o_i
    std::vector<Expr> args;
};

// Grammar, loosest binding first:
//   sum     := tensor (('+' | '-') tensor)*
//   tensor  := scaled ('(x)' scaled)?
//   scaled  := unary ('*' unary)*
//   unary   := '-' unary | word
//   word    := comp (('·' | '.') comp)*
//   comp    := atom (('o_' INT | 'bullet') atom)*
//   atom    := NUMBER | literal | '(' sum ')' | call
//   call    := brace(p; q ...) | binf(p; q ...) | star_t(u; v) | star_s(u; v)
//            | dend_left(u; v) | dend_right(u; v) | tensor(u; v)
// Literals: perm[..], tree[..], rtree[..], dtree[..], dpair[..;j], qo{..},
// dg{..}, e<n>, x[..], cls(literal), optionally followed by a color
// suffix @(c_1,..,c_n;out) and a dual marker '*' written without a space.
Expr parse_expr(const std::string& source);
// Canonical text of an expression; parse_expr(print_expr(e)) prints back
// identically.
std::string print_expr(const Expr& e);

using Value = std::variant<Rational, OpElem, MElem, MPair>;

// Evaluation context. With colors > 0 and PreLie, star_s is the
// Grossman-Larson product on decorated forests; undecorated tree letters are
// read with every vertex of color 1.
struct EvalContext {
    Operad op = Operad(OperadName::PreLie);
};

Value evaluate(const Expr& e, const EvalContext& cx);
Value evaluate(const std::string& source, const EvalContext& cx);

// "scalar", "operad", "words" or "tensor".
std::string value_kind(const Value& v);
// Same serialization as the element printers; evaluates back to v.
std::string value_text(const Value& v);

}  // namespace opforge
