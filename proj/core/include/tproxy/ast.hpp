#ifndef TPROXY_AST_HPP
#define TPROXY_AST_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tproxy/error.hpp"

namespace tproxy {
namespace ast {

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

enum class BinaryOp {
    Eq,        // ==
    Ne,        // !=
    StrictEq,  // ===
    StrictNe,  // !==
    Add,
    Sub,
    Mul,
    Div,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
};

enum class UnaryOp {
    Not,
    Neg,
};

const char* binaryOpName(BinaryOp op);
bool isEqualityOp(BinaryOp op);

struct NumberLit { double value; };
struct StringLit { std::string value; };
struct BoolLit { bool value; };
struct NullLit {};
struct UndefinedLit {};
struct Identifier { std::string name; };

struct ObjectLit {
    std::vector<std::pair<std::string, ExprPtr>> properties;
};

struct ArrayLit {
    std::vector<ExprPtr> elements;
};

/// obj.name (computed == false) or obj[key] (computed == true).
struct Member {
    ExprPtr object;
    std::string name;
    ExprPtr key;
    bool computed = false;
};

struct Call {
    ExprPtr callee;
    std::vector<ExprPtr> args;
};

struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Unary {
    UnaryOp op;
    ExprPtr operand;
};

/// target is an Identifier or Member expression.
struct Assign {
    ExprPtr target;
    ExprPtr value;
};

struct FunctionLit {
    std::string name; // empty for anonymous expressions
    std::vector<std::string> params;
    std::vector<StmtPtr> body;
};

struct Expr {
    Position pos;
    std::variant<NumberLit, StringLit, BoolLit, NullLit, UndefinedLit,
                 Identifier, ObjectLit, ArrayLit, Member, Call, Binary,
                 Unary, Assign, FunctionLit>
        node;
};

struct VarDecl {
    std::string name;
    ExprPtr init; // null when declared without initializer
};

struct ExprStmt {
    ExprPtr expr;
};

struct If {
    ExprPtr cond;
    std::vector<StmtPtr> thenBranch;
    std::vector<StmtPtr> elseBranch;
};

struct While {
    ExprPtr cond;
    std::vector<StmtPtr> body;
};

struct Return {
    ExprPtr value; // null for bare return
};

struct FunctionDecl {
    FunctionLit fn;
};

struct BlockStmt {
    std::vector<StmtPtr> body;
};

struct Stmt {
    Position pos;
    std::variant<VarDecl, ExprStmt, If, While, Return, FunctionDecl, BlockStmt>
        node;
};

struct Program {
    std::vector<StmtPtr> statements;
};

} // namespace ast
} // namespace tproxy

#endif
