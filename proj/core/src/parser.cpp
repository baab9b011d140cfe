#include "tproxy/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

namespace tproxy {

namespace ast {

const char* binaryOpName(BinaryOp op) {
    switch (op) {
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::StrictEq: return "===";
    case BinaryOp::StrictNe: return "!==";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    }
    return "?";
}

bool isEqualityOp(BinaryOp op) {
    return op == BinaryOp::Eq || op == BinaryOp::Ne ||
           op == BinaryOp::StrictEq || op == BinaryOp::StrictNe;
}

} // namespace ast

namespace {

using namespace ast;

enum class TokKind {
    Number,
    String,
    Identifier,
    Keyword,
    Punct,
    End,
};

struct Token {
    TokKind kind;
    std::string text;
    double number = 0;
    Position pos;
};

bool isKeyword(const std::string& s) {
    return s == "var" || s == "function" || s == "if" || s == "else" ||
           s == "while" || s == "return" || s == "true" || s == "false" ||
           s == "null" || s == "undefined";
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            bool done = t.kind == TokKind::End;
            out.push_back(std::move(t));
            if (done) {
                return out;
            }
        }
    }

private:
    [[noreturn]] void fail(const std::string& msg, Position pos) {
        throw ScriptError(ErrorKind::Syntax, msg, pos);
    }

    char peek(size_t ahead = 0) const {
        return idx_ + ahead < src_.size() ? src_[idx_ + ahead] : '\0';
    }

    char advance() {
        char c = src_[idx_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skipTrivia() {
        for (;;) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (peek() != '\n' && peek() != '\0') {
                    advance();
                }
            } else if (c == '/' && peek(1) == '*') {
                Position start{line_, col_};
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (peek() == '\0') {
                        fail("unterminated block comment", start);
                    }
                    advance();
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    Token next() {
        skipTrivia();
        Position pos{line_, col_};
        char c = peek();
        if (c == '\0') {
            return Token{TokKind::End, "", 0, pos};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return lexNumber(pos);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                text += advance();
            }
            return Token{isKeyword(text) ? TokKind::Keyword : TokKind::Identifier,
                         std::move(text), 0, pos};
        }
        if (c == '"') {
            return lexString(pos);
        }
        return lexPunct(pos);
    }

    Token lexNumber(Position pos) {
        std::string text;
        auto digits = [&] {
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                text += advance();
            }
        };
        digits();
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            text += advance();
            digits();
        }
        if (peek() == 'e' || peek() == 'E') {
            text += advance();
            if (peek() == '+' || peek() == '-') {
                text += advance();
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("malformed number literal", pos);
            }
            digits();
        }
        return Token{TokKind::Number, text, std::strtod(text.c_str(), nullptr), pos};
    }

    Token lexString(Position pos) {
        advance(); // opening quote
        std::string text;
        for (;;) {
            char c = peek();
            if (c == '\0' || c == '\n') {
                fail("unterminated string literal", pos);
            }
            advance();
            if (c == '"') {
                return Token{TokKind::String, std::move(text), 0, pos};
            }
            if (c == '\\') {
                char esc = peek();
                advance();
                switch (esc) {
                case 'n': text += '\n'; break;
                case 't': text += '\t'; break;
                case 'r': text += '\r'; break;
                case '"': text += '"'; break;
                case '\\': text += '\\'; break;
                default:
                    fail("unknown escape sequence", pos);
                }
            } else {
                text += c;
            }
        }
    }

    Token lexPunct(Position pos) {
        static const char* const threes[] = {"===", "!=="};
        static const char* const twos[] = {"==", "!=", "<=", ">=", "&&", "||"};
        for (const char* p : threes) {
            if (src_.compare(idx_, 3, p) == 0) {
                advance();
                advance();
                advance();
                return Token{TokKind::Punct, p, 0, pos};
            }
        }
        for (const char* p : twos) {
            if (src_.compare(idx_, 2, p) == 0) {
                advance();
                advance();
                return Token{TokKind::Punct, p, 0, pos};
            }
        }
        static const std::string singles = "(){}[],;:.=<>+-*/!";
        char c = peek();
        if (singles.find(c) != std::string::npos) {
            advance();
            return Token{TokKind::Punct, std::string(1, c), 0, pos};
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    const std::string& src_;
    size_t idx_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Program parse() {
        Program prog;
        while (!atEnd()) {
            prog.statements.push_back(statement());
        }
        return prog;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ScriptError(ErrorKind::Syntax, msg, current().pos);
    }

    const Token& current() const { return tokens_[idx_]; }
    bool atEnd() const { return current().kind == TokKind::End; }

    const Token& advance() { return tokens_[idx_++]; }

    bool checkPunct(const char* p) const {
        return current().kind == TokKind::Punct && current().text == p;
    }
    bool checkKeyword(const char* k) const {
        return current().kind == TokKind::Keyword && current().text == k;
    }

    bool matchPunct(const char* p) {
        if (checkPunct(p)) {
            ++idx_;
            return true;
        }
        return false;
    }
    bool matchKeyword(const char* k) {
        if (checkKeyword(k)) {
            ++idx_;
            return true;
        }
        return false;
    }

    void expectPunct(const char* p, const char* what) {
        if (!matchPunct(p)) {
            fail(std::string("expected '") + p + "' " + what);
        }
    }

    std::string expectIdentifier(const char* what) {
        if (current().kind != TokKind::Identifier) {
            fail(std::string("expected identifier ") + what);
        }
        return advance().text;
    }

    template <typename Node>
    ExprPtr makeExpr(Position pos, Node node) {
        return std::make_unique<Expr>(Expr{pos, std::move(node)});
    }

    template <typename Node>
    StmtPtr makeStmt(Position pos, Node node) {
        return std::make_unique<Stmt>(Stmt{pos, std::move(node)});
    }

    // --- statements ---------------------------------------------------------

    StmtPtr statement() {
        Position pos = current().pos;
        if (matchKeyword("var")) {
            return varDecl(pos);
        }
        if (checkKeyword("function")) {
            return functionDecl(pos);
        }
        if (matchKeyword("if")) {
            return ifStatement(pos);
        }
        if (matchKeyword("while")) {
            return whileStatement(pos);
        }
        if (matchKeyword("return")) {
            return returnStatement(pos);
        }
        if (checkPunct("{")) {
            return makeStmt(pos, BlockStmt{block()});
        }
        ExprPtr e = expression();
        expectPunct(";", "after expression");
        return makeStmt(pos, ExprStmt{std::move(e)});
    }

    StmtPtr varDecl(Position pos) {
        std::string name = expectIdentifier("after 'var'");
        ExprPtr init;
        if (matchPunct("=")) {
            init = expression();
        }
        expectPunct(";", "after variable declaration");
        return makeStmt(pos, VarDecl{std::move(name), std::move(init)});
    }

    StmtPtr functionDecl(Position pos) {
        // Statement-position 'function' with a name is a declaration.
        if (tokens_[idx_ + 1].kind != TokKind::Identifier) {
            ExprPtr e = expression();
            expectPunct(";", "after expression");
            return makeStmt(pos, ExprStmt{std::move(e)});
        }
        advance(); // 'function'
        FunctionLit fn = functionRest(expectIdentifier("after 'function'"));
        return makeStmt(pos, FunctionDecl{std::move(fn)});
    }

    FunctionLit functionRest(std::string name) {
        expectPunct("(", "before parameter list");
        std::vector<std::string> params;
        if (!checkPunct(")")) {
            do {
                params.push_back(expectIdentifier("in parameter list"));
            } while (matchPunct(","));
        }
        expectPunct(")", "after parameter list");
        std::vector<StmtPtr> body = block();
        return FunctionLit{std::move(name), std::move(params), std::move(body)};
    }

    std::vector<StmtPtr> block() {
        expectPunct("{", "to open block");
        std::vector<StmtPtr> body;
        while (!checkPunct("}")) {
            if (atEnd()) {
                fail("unterminated block");
            }
            body.push_back(statement());
        }
        expectPunct("}", "to close block");
        return body;
    }

    StmtPtr ifStatement(Position pos) {
        expectPunct("(", "after 'if'");
        ExprPtr cond = expression();
        expectPunct(")", "after condition");
        std::vector<StmtPtr> thenBranch = block();
        std::vector<StmtPtr> elseBranch;
        if (matchKeyword("else")) {
            if (matchKeyword("if")) {
                elseBranch.push_back(ifStatement(current().pos));
            } else {
                elseBranch = block();
            }
        }
        return makeStmt(pos, If{std::move(cond), std::move(thenBranch),
                                std::move(elseBranch)});
    }

    StmtPtr whileStatement(Position pos) {
        expectPunct("(", "after 'while'");
        ExprPtr cond = expression();
        expectPunct(")", "after condition");
        std::vector<StmtPtr> body = block();
        return makeStmt(pos, While{std::move(cond), std::move(body)});
    }

    StmtPtr returnStatement(Position pos) {
        ExprPtr value;
        if (!checkPunct(";")) {
            value = expression();
        }
        expectPunct(";", "after return");
        return makeStmt(pos, Return{std::move(value)});
    }

    // --- expressions --------------------------------------------------------

    ExprPtr expression() { return assignment(); }

    ExprPtr assignment() {
        ExprPtr lhs = logicalOr();
        if (checkPunct("=")) {
            Position pos = current().pos;
            advance();
            if (!std::holds_alternative<Identifier>(lhs->node) &&
                !std::holds_alternative<Member>(lhs->node)) {
                throw ScriptError(ErrorKind::Syntax,
                                  "invalid assignment target", pos);
            }
            ExprPtr value = assignment();
            return makeExpr(pos, Assign{std::move(lhs), std::move(value)});
        }
        return lhs;
    }

    ExprPtr logicalOr() {
        ExprPtr lhs = logicalAnd();
        while (checkPunct("||")) {
            Position pos = current().pos;
            advance();
            ExprPtr rhs = logicalAnd();
            lhs = makeExpr(pos,
                           Binary{BinaryOp::Or, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr logicalAnd() {
        ExprPtr lhs = equality();
        while (checkPunct("&&")) {
            Position pos = current().pos;
            advance();
            ExprPtr rhs = equality();
            lhs = makeExpr(pos,
                           Binary{BinaryOp::And, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr equality() {
        ExprPtr lhs = relational();
        for (;;) {
            BinaryOp op;
            if (checkPunct("===")) {
                op = BinaryOp::StrictEq;
            } else if (checkPunct("!==")) {
                op = BinaryOp::StrictNe;
            } else if (checkPunct("==")) {
                op = BinaryOp::Eq;
            } else if (checkPunct("!=")) {
                op = BinaryOp::Ne;
            } else {
                return lhs;
            }
            Position pos = current().pos;
            advance();
            ExprPtr rhs = relational();
            lhs = makeExpr(pos, Binary{op, std::move(lhs), std::move(rhs)});
        }
    }

    ExprPtr relational() {
        ExprPtr lhs = additive();
        for (;;) {
            BinaryOp op;
            if (checkPunct("<=")) {
                op = BinaryOp::Le;
            } else if (checkPunct(">=")) {
                op = BinaryOp::Ge;
            } else if (checkPunct("<")) {
                op = BinaryOp::Lt;
            } else if (checkPunct(">")) {
                op = BinaryOp::Gt;
            } else {
                return lhs;
            }
            Position pos = current().pos;
            advance();
            ExprPtr rhs = additive();
            lhs = makeExpr(pos, Binary{op, std::move(lhs), std::move(rhs)});
        }
    }

    ExprPtr additive() {
        ExprPtr lhs = multiplicative();
        for (;;) {
            BinaryOp op;
            if (checkPunct("+")) {
                op = BinaryOp::Add;
            } else if (checkPunct("-")) {
                op = BinaryOp::Sub;
            } else {
                return lhs;
            }
            Position pos = current().pos;
            advance();
            ExprPtr rhs = multiplicative();
            lhs = makeExpr(pos, Binary{op, std::move(lhs), std::move(rhs)});
        }
    }

    ExprPtr multiplicative() {
        ExprPtr lhs = unary();
        for (;;) {
            BinaryOp op;
            if (checkPunct("*")) {
                op = BinaryOp::Mul;
            } else if (checkPunct("/")) {
                op = BinaryOp::Div;
            } else {
                return lhs;
            }
            Position pos = current().pos;
            advance();
            ExprPtr rhs = unary();
            lhs = makeExpr(pos, Binary{op, std::move(lhs), std::move(rhs)});
        }
    }

    ExprPtr unary() {
        if (checkPunct("!") || checkPunct("-")) {
            Position pos = current().pos;
            UnaryOp op = current().text == "!" ? UnaryOp::Not : UnaryOp::Neg;
            advance();
            return makeExpr(pos, Unary{op, unary()});
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr expr = primary();
        for (;;) {
            if (checkPunct(".")) {
                Position pos = current().pos;
                advance();
                std::string name = expectIdentifier("after '.'");
                Member m;
                m.object = std::move(expr);
                m.name = std::move(name);
                m.computed = false;
                expr = makeExpr(pos, std::move(m));
            } else if (checkPunct("[")) {
                Position pos = current().pos;
                advance();
                ExprPtr key = expression();
                expectPunct("]", "after index expression");
                Member m;
                m.object = std::move(expr);
                m.key = std::move(key);
                m.computed = true;
                expr = makeExpr(pos, std::move(m));
            } else if (checkPunct("(")) {
                Position pos = current().pos;
                advance();
                std::vector<ExprPtr> args;
                if (!checkPunct(")")) {
                    do {
                        args.push_back(expression());
                    } while (matchPunct(","));
                }
                expectPunct(")", "after arguments");
                expr = makeExpr(pos, Call{std::move(expr), std::move(args)});
            } else {
                return expr;
            }
        }
    }

    ExprPtr primary() {
        Position pos = current().pos;
        switch (current().kind) {
        case TokKind::Number: {
            double v = advance().number;
            return makeExpr(pos, NumberLit{v});
        }
        case TokKind::String: {
            std::string s = advance().text;
            return makeExpr(pos, StringLit{std::move(s)});
        }
        case TokKind::Identifier: {
            std::string name = advance().text;
            return makeExpr(pos, Identifier{std::move(name)});
        }
        case TokKind::Keyword: {
            const std::string& kw = current().text;
            if (kw == "true" || kw == "false") {
                bool v = kw == "true";
                advance();
                return makeExpr(pos, BoolLit{v});
            }
            if (kw == "null") {
                advance();
                return makeExpr(pos, NullLit{});
            }
            if (kw == "undefined") {
                advance();
                return makeExpr(pos, UndefinedLit{});
            }
            if (kw == "function") {
                advance();
                std::string name;
                if (current().kind == TokKind::Identifier) {
                    name = advance().text;
                }
                return makeExpr(pos, functionRest(std::move(name)));
            }
            fail("unexpected keyword '" + kw + "'");
        }
        case TokKind::Punct: {
            if (matchPunct("(")) {
                ExprPtr e = expression();
                expectPunct(")", "after parenthesized expression");
                return e;
            }
            if (checkPunct("{")) {
                return objectLiteral(pos);
            }
            if (checkPunct("[")) {
                return arrayLiteral(pos);
            }
            fail("unexpected token '" + current().text + "'");
        }
        case TokKind::End:
            fail("unexpected end of input");
        }
        fail("unexpected token");
    }

    ExprPtr objectLiteral(Position pos) {
        expectPunct("{", "to open object literal");
        ObjectLit lit;
        if (!checkPunct("}")) {
            do {
                std::string key;
                if (current().kind == TokKind::Identifier ||
                    current().kind == TokKind::Keyword) {
                    key = advance().text;
                } else if (current().kind == TokKind::String) {
                    key = advance().text;
                } else {
                    fail("expected property name");
                }
                expectPunct(":", "after property name");
                lit.properties.emplace_back(std::move(key), expression());
            } while (matchPunct(","));
        }
        expectPunct("}", "to close object literal");
        return makeExpr(pos, std::move(lit));
    }

    ExprPtr arrayLiteral(Position pos) {
        expectPunct("[", "to open array literal");
        ArrayLit lit;
        if (!checkPunct("]")) {
            do {
                lit.elements.push_back(expression());
            } while (matchPunct(","));
        }
        expectPunct("]", "to close array literal");
        return makeExpr(pos, std::move(lit));
    }

    std::vector<Token> tokens_;
    size_t idx_ = 0;
};

} // namespace

ast::Program parseProgram(const std::string& source) {
    Lexer lexer(source);
    Parser parser(lexer.run());
    return parser.parse();
}

} // namespace tproxy
