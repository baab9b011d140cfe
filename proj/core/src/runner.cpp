#include "tproxy/runner.hpp"

#include <nlohmann/json.hpp>

#include "tproxy/parser.hpp"
#include "tproxy/stdlib.hpp"

namespace tproxy {

void wrapFunctionArguments(Interpreter& interp, const std::string& name,
                           bool opaque) {
    std::optional<Value> bound = interp.globalLookup(name);
    if (!bound || !interp.heap().isCallable(*bound)) {
        throw ScriptError(ErrorKind::Reference,
                          "unknown function '" + name + "'");
    }
    Heap* heap = &interp.heap();
    Membrane membrane(*heap, /*transparent=*/!opaque);
    Value original = *bound;
    Value wrapper = Value::object(heap->makeFunction(
        [heap, membrane, original](std::span<const Value> args) mutable {
            std::vector<Value> wrapped;
            wrapped.reserve(args.size());
            for (const Value& a : args) {
                wrapped.push_back(membrane.wrap(a));
            }
            Value result = heap->dispatchApply(original, Value::undefined(), wrapped);
            return membrane.wrap(result);
        }));
    interp.globalBind(name, wrapper);
}

Outcome runSource(const std::string& source, const RunConfig& config) {
    ast::Program program = parseProgram(source);
    Interpreter interp;
    if (config.instrument) {
        interp.enableInstrumentation(config.retainEvents);
    }
    interp.hoistTopLevelFunctions(program);
    for (const std::string& name : config.wrapFunctions) {
        wrapFunctionArguments(interp, name, config.wrapOpaque);
    }
    return interp.execute(program);
}

std::vector<VariantResult> enumerateVariants(const std::string& source,
                                             bool wrapOpaque) {
    ast::Program probe = parseProgram(source);
    std::vector<std::string> names = topLevelFunctionNames(probe);

    std::vector<VariantResult> results;
    RunConfig base;
    base.instrument = true;
    results.push_back(VariantResult{std::nullopt, runSource(source, base)});
    for (const std::string& name : names) {
        RunConfig cfg;
        cfg.instrument = true;
        cfg.wrapFunctions = {name};
        cfg.wrapOpaque = wrapOpaque;
        results.push_back(VariantResult{name, runSource(source, cfg)});
    }
    return results;
}

std::string variantsToJson(const std::vector<VariantResult>& variants) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const VariantResult& v : variants) {
        nlohmann::ordered_json entry;
        if (v.function) {
            entry["function"] = *v.function;
        } else {
            entry["function"] = nullptr;
        }
        if (v.outcome.report) {
            entry["report"] =
                nlohmann::ordered_json::parse(emitReportJson(*v.outcome.report));
        } else {
            entry["report"] = nullptr;
        }
        if (v.outcome.error) {
            entry["error"] = v.outcome.error->format();
        }
        arr.push_back(std::move(entry));
    }
    return arr.dump(2);
}

std::vector<std::string> listFunctions(const std::string& source) {
    ast::Program program = parseProgram(source);
    return topLevelFunctionNames(program);
}

} // namespace tproxy
