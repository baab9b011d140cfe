#ifndef TPROXY_INTERPRETER_HPP
#define TPROXY_INTERPRETER_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tproxy/ast.hpp"
#include "tproxy/collections.hpp"
#include "tproxy/heap.hpp"
#include "tproxy/instrument.hpp"
#include "tproxy/value.hpp"

namespace tproxy {

struct Diagnostic {
    ErrorKind kind;
    std::string message;
    std::optional<Position> pos;

    /// "TypeError: message (line 3, col 7)"
    std::string format() const;
};

struct Outcome {
    std::vector<std::string> output;
    std::optional<Diagnostic> error;
    std::optional<ComparisonReport> report;

    bool ok() const { return !error.has_value(); }
};

/// Lexically scoped binding frames. Frames exist per function activation
/// and for the global scope; blocks share their enclosing frame.
class Environment {
public:
    explicit Environment(std::shared_ptr<Environment> parent = nullptr)
        : parent_(std::move(parent)) {}

    void define(const std::string& name, Value v) { bindings_[name] = std::move(v); }
    Value* find(const std::string& name);

private:
    std::unordered_map<std::string, Value> bindings_;
    std::shared_ptr<Environment> parent_;
};

/// Deterministic display form: "undefined", "null", "true"/"false",
/// shortest round-trip numbers (NaN as "NaN", both zeroes as "0"), raw
/// strings, and "[object]"/"[function]" for objects, where callability
/// is judged at the base target so proxies print like what they wrap.
std::string formatValue(const Heap& heap, const Value& v);

/// The tree-walking evaluator. Owns the heap and the global scope;
/// scripts reach the runtime exclusively through the bound builtins.
/// Programs passed to run/hoist must outlive the interpreter, since
/// closures keep pointers into the AST.
class Interpreter {
public:
    Interpreter();

    Heap& heap() { return heap_; }

    /// Binds every top-level function declaration. Call before execute;
    /// runProgram does both. Names bound here are the wrappable ones.
    void hoistTopLevelFunctions(const ast::Program& program);

    /// Runs the program's top-level statements (function declarations
    /// are skipped — hoisting already bound them). Runtime errors land
    /// in the outcome, not as exceptions.
    Outcome execute(const ast::Program& program);

    /// hoistTopLevelFunctions + execute.
    Outcome runProgram(const ast::Program& program);

    void enableInstrumentation(bool retainEvents = false);
    ComparisonRecorder* recorder() { return recorder_.get(); }

    std::optional<Value> globalLookup(const std::string& name);
    void globalBind(const std::string& name, Value v);

    /// Evaluates a call to a callable value (used by tests and the
    /// function-wrapping machinery).
    Value callFunction(const Value& fn, std::span<const Value> args);

private:
    struct Completion {
        enum class Kind { Normal, Return } kind = Kind::Normal;
        Value value;
    };

    void bindBuiltins();
    Value makeClosure(const ast::FunctionLit& fn,
                      const std::shared_ptr<Environment>& env);

    Completion execStatements(const std::vector<ast::StmtPtr>& stmts,
                              const std::shared_ptr<Environment>& env);
    Completion execStatement(const ast::Stmt& stmt,
                             const std::shared_ptr<Environment>& env);
    Value evalExpr(const ast::Expr& expr, const std::shared_ptr<Environment>& env);
    Value evalBinary(const ast::Binary& bin, Position pos,
                     const std::shared_ptr<Environment>& env);
    std::string propertyKey(const ast::Member& member,
                            const std::shared_ptr<Environment>& env);

    // Builtin helpers.
    IdentityMap& mapArg(const Value& v);
    IdentitySet& setArg(const Value& v);
    IdentityWeakMap& weakMapArg(const Value& v);

    Heap heap_;
    std::shared_ptr<Environment> globals_;
    std::vector<std::string> output_;
    std::unique_ptr<ComparisonRecorder> recorder_;
    std::unordered_map<uint32_t, IdentityMap> maps_;
    std::unordered_map<uint32_t, IdentitySet> sets_;
    std::unordered_map<uint32_t, IdentityWeakMap> weakMaps_;
    Position lastPos_{0, 0};
    int callDepth_ = 0;
};

/// Names of top-level function declarations, in declaration order,
/// first occurrence wins.
std::vector<std::string> topLevelFunctionNames(const ast::Program& program);

} // namespace tproxy

#endif
