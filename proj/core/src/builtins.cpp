#include <array>
#include <cmath>

#include "tproxy/equality.hpp"
#include "tproxy/interpreter.hpp"
#include "tproxy/stdlib.hpp"

namespace tproxy {

namespace {

Value argAt(std::span<const Value> args, size_t i) {
    return i < args.size() ? args[i] : Value::undefined();
}

void requireArity(std::span<const Value> args, size_t n, const char* name) {
    if (args.size() < n) {
        throwTypeError(std::string(name) + " expects at least " +
                       std::to_string(n) + " argument(s)");
    }
}

} // namespace

IdentityMap& Interpreter::mapArg(const Value& v) {
    Value id = getIdentityObject(heap_, v);
    if (id.isObject()) {
        auto it = maps_.find(id.asObject().id);
        if (it != maps_.end()) {
            return it->second;
        }
    }
    throwTypeError("not a map");
}

IdentitySet& Interpreter::setArg(const Value& v) {
    Value id = getIdentityObject(heap_, v);
    if (id.isObject()) {
        auto it = sets_.find(id.asObject().id);
        if (it != sets_.end()) {
            return it->second;
        }
    }
    throwTypeError("not a set");
}

IdentityWeakMap& Interpreter::weakMapArg(const Value& v) {
    Value id = getIdentityObject(heap_, v);
    if (id.isObject()) {
        auto it = weakMaps_.find(id.asObject().id);
        if (it != weakMaps_.end()) {
            return it->second;
        }
    }
    throwTypeError("not a weak map");
}

void Interpreter::bindBuiltins() {
    auto bind = [this](const char* name, NativeFn fn) {
        globals_->define(name, Value::object(heap_.makeFunction(std::move(fn))));
    };

    // --- object model -------------------------------------------------------

    bind("proxy", [this](std::span<const Value> args) {
        requireArity(args, 2, "proxy");
        return Value::object(heap_.makeProxy(args[0], args[1]));
    });
    bind("transparentProxy", [this](std::span<const Value> args) {
        requireArity(args, 3, "transparentProxy");
        return Value::object(heap_.makeTransparentProxy(args[0], args[1], args[2]));
    });
    bind("revocable", [this](std::span<const Value> args) {
        requireArity(args, 2, "revocable");
        bool transparent = toBoolean(argAt(args, 2));
        std::optional<Value> token;
        if (args.size() > 3) {
            token = args[3];
        }
        Revocable rev = heap_.makeRevocable(args[0], args[1], transparent, token);
        return Value::object(heap_.makeNative({
            {"proxy", Value::object(rev.proxy)},
            {"revoke", Value::object(rev.revoke)},
        }));
    });

    // --- equality -----------------------------------------------------------

    bind("objectEquals", [this](std::span<const Value> args) {
        if (args.size() < 2) {
            throwTypeError("objectEquals called with fewer than 2 arguments");
        }
        if (args.size() == 2) {
            return Value::boolean(objectEquals(heap_, args[0], args[1]));
        }
        return Value::boolean(objectEquals(heap_, args[0], args[1], args[2]));
    });
    bind("sameValue", [this](std::span<const Value> args) {
        requireArity(args, 2, "sameValue");
        return Value::boolean(sameValue(heap_, args[0], args[1]));
    });

    // --- collections --------------------------------------------------------

    bind("mapNew", [this](std::span<const Value> args) {
        ObjectRef handle = heap_.makeNative();
        std::optional<Value> secret;
        if (!args.empty()) {
            secret = args[0];
        }
        maps_.emplace(handle.id, IdentityMap(heap_, secret));
        return Value::object(handle);
    });
    bind("mapSet", [this](std::span<const Value> args) {
        requireArity(args, 3, "mapSet");
        mapArg(args[0]).set(args[1], args[2]);
        return Value::undefined();
    });
    bind("mapGet", [this](std::span<const Value> args) {
        requireArity(args, 2, "mapGet");
        return mapArg(args[0]).get(args[1]);
    });
    bind("mapHas", [this](std::span<const Value> args) {
        requireArity(args, 2, "mapHas");
        return Value::boolean(mapArg(args[0]).has(args[1]));
    });
    bind("mapDelete", [this](std::span<const Value> args) {
        requireArity(args, 2, "mapDelete");
        return Value::boolean(mapArg(args[0]).erase(args[1]));
    });
    bind("mapKeys", [this](std::span<const Value> args) {
        requireArity(args, 1, "mapKeys");
        std::vector<Value> keys = mapArg(args[0]).keys();
        return Value::object(heap_.makeArray(keys));
    });

    bind("setNew", [this](std::span<const Value>) {
        ObjectRef handle = heap_.makeNative();
        sets_.emplace(handle.id, IdentitySet(heap_));
        return Value::object(handle);
    });
    bind("setAdd", [this](std::span<const Value> args) {
        requireArity(args, 2, "setAdd");
        setArg(args[0]).add(args[1]);
        return Value::undefined();
    });
    bind("setHas", [this](std::span<const Value> args) {
        requireArity(args, 2, "setHas");
        return Value::boolean(setArg(args[0]).has(args[1]));
    });

    bind("weakMapNew", [this](std::span<const Value> args) {
        ObjectRef handle = heap_.makeNative();
        std::optional<Value> secret;
        if (!args.empty()) {
            secret = args[0];
        }
        weakMaps_.emplace(handle.id, IdentityWeakMap(heap_, secret));
        return Value::object(handle);
    });
    bind("weakMapSet", [this](std::span<const Value> args) {
        requireArity(args, 3, "weakMapSet");
        weakMapArg(args[0]).set(args[1], args[2]);
        return Value::undefined();
    });
    bind("weakMapGet", [this](std::span<const Value> args) {
        requireArity(args, 2, "weakMapGet");
        return weakMapArg(args[0]).get(args[1]);
    });
    bind("weakMapHas", [this](std::span<const Value> args) {
        requireArity(args, 2, "weakMapHas");
        return Value::boolean(weakMapArg(args[0]).has(args[1]));
    });

    // --- io and introspection -----------------------------------------------

    bind("print", [this](std::span<const Value> args) {
        output_.push_back(formatValue(heap_, argAt(args, 0)));
        return Value::undefined();
    });
    bind("typeOf", [this](std::span<const Value> args) {
        Value v = argAt(args, 0);
        if (v.isObject()) {
            // Callability resolves at the base target: proxies answer
            // exactly like what they wrap.
            return Value::string(heap_.isCallable(v) ? "function" : "object");
        }
        return Value::string(tagName(v.tag()));
    });

    // --- arrays -------------------------------------------------------------

    bind("arrayNew", [this](std::span<const Value> args) {
        size_t n = 0;
        if (!args.empty()) {
            if (!args[0].isNumber()) {
                throwTypeError("arrayNew length must be a number");
            }
            n = static_cast<size_t>(args[0].asNumber());
        }
        std::vector<Value> elements(n, Value::undefined());
        return Value::object(heap_.makeArray(elements));
    });
    bind("arrayGet", [this](std::span<const Value> args) {
        requireArity(args, 2, "arrayGet");
        if (!args[1].isNumber()) {
            throwTypeError("arrayGet index must be a number");
        }
        return heap_.dispatchGet(args[0], formatNumber(args[1].asNumber()));
    });
    bind("arraySet", [this](std::span<const Value> args) {
        requireArity(args, 3, "arraySet");
        if (!args[1].isNumber()) {
            throwTypeError("arraySet index must be a number");
        }
        double idx = args[1].asNumber();
        heap_.dispatchSet(args[0], formatNumber(idx), args[2]);
        Value len = heap_.dispatchGet(args[0], "length");
        if (len.isNumber() && idx == std::floor(idx) && idx >= len.asNumber()) {
            heap_.dispatchSet(args[0], "length", Value::number(idx + 1));
        }
        return Value::undefined();
    });
    bind("arrayLength", [this](std::span<const Value> args) {
        requireArity(args, 1, "arrayLength");
        Value len = heap_.dispatchGet(args[0], "length");
        if (!len.isNumber()) {
            throwTypeError("array length is not a number");
        }
        return len;
    });

    // --- proxy pattern library ----------------------------------------------

    bind("makeMembrane", [this](std::span<const Value> args) {
        requireArity(args, 1, "makeMembrane");
        bool transparent = toBoolean(argAt(args, 1));
        MembraneResult result = makeMembrane(heap_, args[0], transparent);
        Membrane membrane = result.membrane;
        Value revoke = Value::object(heap_.makeFunction(
            [membrane](std::span<const Value>) mutable {
                membrane.revoke();
                return Value::undefined();
            }));
        return Value::object(heap_.makeNative({
            {"wrapper", result.wrapper},
            {"revoke", revoke},
        }));
    });
    bind("assertContract", [this](std::span<const Value> args) {
        requireArity(args, 2, "assertContract");
        return assertContract(heap_, args[0], args[1], toBoolean(argAt(args, 2)));
    });
    bind("functionContract", [this](std::span<const Value> args) {
        requireArity(args, 3, "functionContract");
        return functionContract(heap_, args[0], args[1], args[2]);
    });
    bind("makeObserver", [this](std::span<const Value> args) {
        requireArity(args, 2, "makeObserver");
        return makeObserver(heap_, args[0], args[1]);
    });
    bind("createProxyConstructor", [this](std::span<const Value>) {
        return createProxyConstructor(heap_);
    });
}

} // namespace tproxy
