#include "tproxy/interpreter.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tproxy/equality.hpp"
#include "tproxy/stdlib.hpp"

namespace tproxy {

using namespace ast;

std::string Diagnostic::format() const {
    std::string out = errorKindName(kind);
    out += ": ";
    out += message;
    if (pos) {
        out += " (line " + std::to_string(pos->line) + ", col " +
               std::to_string(pos->col) + ")";
    }
    return out;
}

Value* Environment::find(const std::string& name) {
    for (Environment* env = this; env != nullptr; env = env->parent_.get()) {
        auto it = env->bindings_.find(name);
        if (it != env->bindings_.end()) {
            return &it->second;
        }
    }
    return nullptr;
}

std::string formatValue(const Heap& heap, const Value& v) {
    switch (v.tag()) {
    case Tag::Undefined: return "undefined";
    case Tag::Null: return "null";
    case Tag::Boolean: return v.asBoolean() ? "true" : "false";
    case Tag::Number: return formatNumber(v.asNumber());
    case Tag::String: return v.asString();
    case Tag::Object: return heap.isCallable(v) ? "[function]" : "[object]";
    }
    return "";
}

std::vector<std::string> topLevelFunctionNames(const Program& program) {
    std::vector<std::string> names;
    for (const StmtPtr& stmt : program.statements) {
        if (const auto* decl = std::get_if<FunctionDecl>(&stmt->node)) {
            if (std::find(names.begin(), names.end(), decl->fn.name) ==
                names.end()) {
                names.push_back(decl->fn.name);
            }
        }
    }
    return names;
}

namespace {
constexpr int kMaxCallDepth = 1000;
}

Interpreter::Interpreter() : globals_(std::make_shared<Environment>()) {
    bindBuiltins();
}

void Interpreter::enableInstrumentation(bool retainEvents) {
    recorder_ = std::make_unique<ComparisonRecorder>(heap_, retainEvents);
}

std::optional<Value> Interpreter::globalLookup(const std::string& name) {
    if (Value* slot = globals_->find(name)) {
        return *slot;
    }
    return std::nullopt;
}

void Interpreter::globalBind(const std::string& name, Value v) {
    globals_->define(name, std::move(v));
}

Value Interpreter::callFunction(const Value& fn, std::span<const Value> args) {
    return heap_.callValue(fn, args);
}

void Interpreter::hoistTopLevelFunctions(const Program& program) {
    for (const StmtPtr& stmt : program.statements) {
        if (const auto* decl = std::get_if<FunctionDecl>(&stmt->node)) {
            globals_->define(decl->fn.name, makeClosure(decl->fn, globals_));
        }
    }
}

Outcome Interpreter::execute(const Program& program) {
    Outcome outcome;
    try {
        for (const StmtPtr& stmt : program.statements) {
            if (std::holds_alternative<FunctionDecl>(stmt->node)) {
                continue; // bound by hoisting
            }
            execStatement(*stmt, globals_);
        }
    } catch (const ScriptError& err) {
        Diagnostic diag{err.kind(), err.message(), err.position()};
        if (!diag.pos && lastPos_.line > 0) {
            diag.pos = lastPos_;
        }
        outcome.error = std::move(diag);
    }
    outcome.output = output_;
    if (recorder_) {
        outcome.report = recorder_->report();
    }
    return outcome;
}

Outcome Interpreter::runProgram(const Program& program) {
    hoistTopLevelFunctions(program);
    return execute(program);
}

Value Interpreter::makeClosure(const FunctionLit& fn,
                               const std::shared_ptr<Environment>& env) {
    const FunctionLit* ast = &fn;
    return Value::object(heap_.makeFunction(
        [this, ast, env](std::span<const Value> args) {
            if (callDepth_ >= kMaxCallDepth) {
                throwTypeError("maximum call depth exceeded");
            }
            ++callDepth_;
            auto frame = std::make_shared<Environment>(env);
            for (size_t i = 0; i < ast->params.size(); ++i) {
                frame->define(ast->params[i],
                              i < args.size() ? args[i] : Value::undefined());
            }
            Completion c;
            try {
                c = execStatements(ast->body, frame);
            } catch (...) {
                --callDepth_;
                throw;
            }
            --callDepth_;
            return c.kind == Completion::Kind::Return ? c.value
                                                      : Value::undefined();
        }));
}

Interpreter::Completion Interpreter::execStatements(
    const std::vector<StmtPtr>& stmts, const std::shared_ptr<Environment>& env) {
    for (const StmtPtr& stmt : stmts) {
        Completion c = execStatement(*stmt, env);
        if (c.kind == Completion::Kind::Return) {
            return c;
        }
    }
    return Completion{};
}

Interpreter::Completion Interpreter::execStatement(
    const Stmt& stmt, const std::shared_ptr<Environment>& env) {
    lastPos_ = stmt.pos;
    return std::visit(
        [&](const auto& node) -> Completion {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, VarDecl>) {
                Value init = node.init ? evalExpr(*node.init, env)
                                       : Value::undefined();
                env->define(node.name, std::move(init));
                return Completion{};
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                evalExpr(*node.expr, env);
                return Completion{};
            } else if constexpr (std::is_same_v<T, If>) {
                if (toBoolean(evalExpr(*node.cond, env))) {
                    return execStatements(node.thenBranch, env);
                }
                return execStatements(node.elseBranch, env);
            } else if constexpr (std::is_same_v<T, While>) {
                while (toBoolean(evalExpr(*node.cond, env))) {
                    Completion c = execStatements(node.body, env);
                    if (c.kind == Completion::Kind::Return) {
                        return c;
                    }
                }
                return Completion{};
            } else if constexpr (std::is_same_v<T, Return>) {
                Completion c;
                c.kind = Completion::Kind::Return;
                c.value = node.value ? evalExpr(*node.value, env)
                                     : Value::undefined();
                return c;
            } else if constexpr (std::is_same_v<T, FunctionDecl>) {
                env->define(node.fn.name, makeClosure(node.fn, env));
                return Completion{};
            } else {
                static_assert(std::is_same_v<T, BlockStmt>);
                return execStatements(node.body, env);
            }
        },
        stmt.node);
}

std::string Interpreter::propertyKey(const Member& member,
                                     const std::shared_ptr<Environment>& env) {
    if (!member.computed) {
        return member.name;
    }
    Value key = evalExpr(*member.key, env);
    if (key.isObject()) {
        throwTypeError("property keys must be primitive");
    }
    return formatValue(heap_, key);
}

Value Interpreter::evalBinary(const Binary& bin, Position pos,
                              const std::shared_ptr<Environment>& env) {
    if (bin.op == BinaryOp::And) {
        Value lhs = evalExpr(*bin.lhs, env);
        if (!toBoolean(lhs)) {
            return Value::boolean(false);
        }
        return Value::boolean(toBoolean(evalExpr(*bin.rhs, env)));
    }
    if (bin.op == BinaryOp::Or) {
        Value lhs = evalExpr(*bin.lhs, env);
        if (toBoolean(lhs)) {
            return Value::boolean(true);
        }
        return Value::boolean(toBoolean(evalExpr(*bin.rhs, env)));
    }

    Value lhs = evalExpr(*bin.lhs, env);
    Value rhs = evalExpr(*bin.rhs, env);

    if (isEqualityOp(bin.op)) {
        if (recorder_) {
            recorder_->record(pos, compareOpOf(bin.op), lhs, rhs);
        }
        switch (bin.op) {
        case BinaryOp::Eq:
            return Value::boolean(abstractEquals(heap_, lhs, rhs));
        case BinaryOp::Ne:
            return Value::boolean(!abstractEquals(heap_, lhs, rhs));
        case BinaryOp::StrictEq:
            return Value::boolean(strictEquals(heap_, lhs, rhs));
        default:
            return Value::boolean(!strictEquals(heap_, lhs, rhs));
        }
    }

    switch (bin.op) {
    case BinaryOp::Add:
        if (lhs.isNumber() && rhs.isNumber()) {
            return Value::number(lhs.asNumber() + rhs.asNumber());
        }
        if (lhs.isString() || rhs.isString()) {
            return Value::string(formatValue(heap_, lhs) + formatValue(heap_, rhs));
        }
        throwTypeError("operands of '+' must be numbers or strings");
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div: {
        if (!lhs.isNumber() || !rhs.isNumber()) {
            throwTypeError(std::string("operands of '") + binaryOpName(bin.op) +
                           "' must be numbers");
        }
        double a = lhs.asNumber();
        double b = rhs.asNumber();
        double r = bin.op == BinaryOp::Sub   ? a - b
                   : bin.op == BinaryOp::Mul ? a * b
                                             : a / b;
        return Value::number(r);
    }
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: {
        bool result;
        if (lhs.isNumber() && rhs.isNumber()) {
            double a = lhs.asNumber();
            double b = rhs.asNumber();
            result = bin.op == BinaryOp::Lt   ? a < b
                     : bin.op == BinaryOp::Le ? a <= b
                     : bin.op == BinaryOp::Gt ? a > b
                                              : a >= b;
        } else if (lhs.isString() && rhs.isString()) {
            const std::string& a = lhs.asString();
            const std::string& b = rhs.asString();
            result = bin.op == BinaryOp::Lt   ? a < b
                     : bin.op == BinaryOp::Le ? a <= b
                     : bin.op == BinaryOp::Gt ? a > b
                                              : a >= b;
        } else {
            throwTypeError(std::string("operands of '") + binaryOpName(bin.op) +
                           "' must both be numbers or both be strings");
        }
        return Value::boolean(result);
    }
    default:
        throwTypeError("unsupported operator");
    }
}

Value Interpreter::evalExpr(const Expr& expr,
                            const std::shared_ptr<Environment>& env) {
    lastPos_ = expr.pos;
    return std::visit(
        [&](const auto& node) -> Value {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                return Value::number(node.value);
            } else if constexpr (std::is_same_v<T, StringLit>) {
                return Value::string(node.value);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return Value::boolean(node.value);
            } else if constexpr (std::is_same_v<T, NullLit>) {
                return Value::null();
            } else if constexpr (std::is_same_v<T, UndefinedLit>) {
                return Value::undefined();
            } else if constexpr (std::is_same_v<T, Identifier>) {
                if (Value* slot = env->find(node.name)) {
                    return *slot;
                }
                throw ScriptError(ErrorKind::Reference,
                                  "'" + node.name + "' is not defined",
                                  expr.pos);
            } else if constexpr (std::is_same_v<T, ObjectLit>) {
                std::vector<std::pair<std::string, Value>> props;
                props.reserve(node.properties.size());
                for (const auto& [key, valueExpr] : node.properties) {
                    props.emplace_back(key, evalExpr(*valueExpr, env));
                }
                return Value::object(heap_.makeNative(std::move(props)));
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                std::vector<Value> elements;
                elements.reserve(node.elements.size());
                for (const ExprPtr& e : node.elements) {
                    elements.push_back(evalExpr(*e, env));
                }
                return Value::object(heap_.makeArray(elements));
            } else if constexpr (std::is_same_v<T, Member>) {
                Value obj = evalExpr(*node.object, env);
                std::string key = propertyKey(node, env);
                lastPos_ = expr.pos;
                return heap_.dispatchGet(obj, key);
            } else if constexpr (std::is_same_v<T, Call>) {
                Value callee = evalExpr(*node.callee, env);
                std::vector<Value> args;
                args.reserve(node.args.size());
                for (const ExprPtr& a : node.args) {
                    args.push_back(evalExpr(*a, env));
                }
                lastPos_ = expr.pos;
                return heap_.dispatchApply(callee, Value::undefined(), args);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return evalBinary(node, expr.pos, env);
            } else if constexpr (std::is_same_v<T, Unary>) {
                Value operand = evalExpr(*node.operand, env);
                if (node.op == UnaryOp::Not) {
                    return Value::boolean(!toBoolean(operand));
                }
                if (!operand.isNumber()) {
                    throwTypeError("operand of unary '-' must be a number");
                }
                return Value::number(-operand.asNumber());
            } else if constexpr (std::is_same_v<T, Assign>) {
                if (const auto* ident = std::get_if<Identifier>(&node.target->node)) {
                    Value value = evalExpr(*node.value, env);
                    if (Value* slot = env->find(ident->name)) {
                        *slot = value;
                        return value;
                    }
                    throw ScriptError(ErrorKind::Reference,
                                      "assignment to undeclared name '" +
                                          ident->name + "'",
                                      expr.pos);
                }
                const auto& member = std::get<Member>(node.target->node);
                Value obj = evalExpr(*member.object, env);
                std::string key = propertyKey(member, env);
                Value value = evalExpr(*node.value, env);
                lastPos_ = expr.pos;
                return heap_.dispatchSet(obj, key, value);
            } else {
                static_assert(std::is_same_v<T, FunctionLit>);
                return makeClosure(node, env);
            }
        },
        expr.node);
}

} // namespace tproxy
