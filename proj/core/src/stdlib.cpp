#include "tproxy/stdlib.hpp"

#include <array>
#include <unordered_map>
#include <vector>

#include "tproxy/equality.hpp"

namespace tproxy {

struct Membrane::State {
    State(Heap& h, bool transp, bool cacheOn)
        : heap(&h), transparent(transp), useCache(cacheOn),
          id(h.freshMembraneId()), token(Value::object(h.makeNative())) {}

    Heap* heap;
    bool transparent;
    bool useCache;
    bool revoked = false;
    // Raw target reference -> proxy. Keyed by the exact object that
    // crossed, so two aliases of one identity class each get their own
    // proxy; what is deduplicated is repeated crossings of one reference.
    std::unordered_map<uint32_t, Value> cache;
    int id;
    Value token;
    Value handler; // one handler object shared by all proxies of the membrane
    std::vector<ObjectRef> minted;
};

namespace {

Value membraneHandlerObject(const std::shared_ptr<Membrane::State>& state);

Value wrapThrough(const std::shared_ptr<Membrane::State>& state, const Value& v) {
    if (!v.isObject()) {
        return v;
    }
    Membrane::State& st = *state;
    if (st.revoked) {
        throwRevoked("membrane has been revoked");
    }
    Heap& heap = *st.heap;
    const ObjectRecord& rec = heap.record(v.asObject());
    if (rec.membraneId && *rec.membraneId == st.id) {
        return v; // already one of ours; never build chains
    }
    if (st.useCache) {
        auto it = st.cache.find(v.asObject().id);
        if (it != st.cache.end()) {
            return it->second;
        }
    }
    ObjectRef proxy =
        st.transparent
            ? heap.makeTransparentProxy(v, st.handler, st.token)
            : heap.makeProxy(v, st.handler);
    heap.stampMembrane(proxy, st.id);
    st.minted.push_back(proxy);
    Value wrapped = Value::object(proxy);
    if (st.useCache) {
        st.cache.emplace(v.asObject().id, wrapped);
    }
    return wrapped;
}

} // namespace

Membrane::Membrane(Heap& heap, bool transparent, bool useCache)
    : state_(std::make_shared<State>(heap, transparent, useCache)) {
    state_->handler = membraneHandlerObject(state_);
}

Value Membrane::wrap(const Value& v) { return wrapThrough(state_, v); }

void Membrane::revoke() {
    State& st = *state_;
    if (st.revoked) {
        return;
    }
    st.revoked = true;
    for (ObjectRef proxy : st.minted) {
        st.heap->revoke(proxy);
    }
}

bool Membrane::revoked() const { return state_->revoked; }
int Membrane::id() const { return state_->id; }
bool Membrane::transparent() const { return state_->transparent; }
size_t Membrane::mintedCount() const { return state_->minted.size(); }

namespace {

Value membraneHandlerObject(const std::shared_ptr<Membrane::State>& state) {
    Heap& heap = *state->heap;
    std::weak_ptr<Membrane::State> weak = state;

    auto locked = [weak]() {
        auto st = weak.lock();
        if (!st) {
            throwRevoked("membrane is gone");
        }
        return st;
    };

    auto wrapOut = [locked](const Value& v) { return wrapThrough(locked(), v); };

    Value getTrap = Value::object(heap.makeFunction(
        [locked, wrapOut](std::span<const Value> args) {
            auto st = locked();
            Value raw = st->heap->dispatchGet(args[0], args[1].asString());
            return wrapOut(raw);
        }));
    Value setTrap = Value::object(heap.makeFunction(
        [locked](std::span<const Value> args) {
            auto st = locked();
            Value value = args[2];
            if (value.isObject()) {
                const ObjectRecord& rec = st->heap->record(value.asObject());
                if (rec.membraneId && *rec.membraneId == st->id) {
                    value = Value::object(rec.target);
                }
            }
            st->heap->dispatchSet(args[0], args[1].asString(), value);
            return Value::undefined();
        }));
    Value hasTrap = Value::object(heap.makeFunction(
        [locked](std::span<const Value> args) {
            auto st = locked();
            return Value::boolean(st->heap->dispatchHas(args[0], args[1].asString()));
        }));
    Value deleteTrap = Value::object(heap.makeFunction(
        [locked](std::span<const Value> args) {
            auto st = locked();
            return Value::boolean(
                st->heap->dispatchDelete(args[0], args[1].asString()));
        }));
    Value applyTrap = Value::object(heap.makeFunction(
        [locked, wrapOut](std::span<const Value> args) {
            auto st = locked();
            std::vector<Value> callArgs = st->heap->arrayElements(args[2]);
            Value result = st->heap->dispatchApply(args[0], args[1], callArgs);
            return wrapOut(result);
        }));

    return Value::object(heap.makeNative({
        {"get", getTrap},
        {"set", setTrap},
        {"has", hasTrap},
        {"deleteProperty", deleteTrap},
        {"apply", applyTrap},
    }));
}

} // namespace

MembraneResult makeMembrane(Heap& heap, const Value& root, bool transparent,
                            bool useCache) {
    if (!root.isObject()) {
        throwTypeError("membrane root must be an object");
    }
    Membrane membrane(heap, transparent, useCache);
    return MembraneResult{membrane.wrap(root), membrane};
}

Value assertContract(Heap& heap, const Value& target, const Value& pred,
                     bool opaque) {
    if (!target.isObject()) {
        throwTypeError("contract target must be an object");
    }
    if (!heap.isCallable(pred)) {
        throwTypeError("contract predicate must be callable");
    }
    Heap* h = &heap;
    Value setTrap = Value::object(heap.makeFunction(
        [h, pred](std::span<const Value> args) {
            std::array<Value, 1> predArgs{args[2]};
            if (!toBoolean(h->callValue(pred, predArgs))) {
                throw ScriptError(ErrorKind::Contract,
                                  "value rejected by contract on property '" +
                                      args[1].asString() + "'");
            }
            h->dispatchSet(args[0], args[1].asString(), args[2]);
            return Value::undefined();
        }));
    Value handler = Value::object(heap.makeNative({{"set", setTrap}}));
    if (opaque) {
        return Value::object(heap.makeProxy(target, handler));
    }
    Value token = Value::object(heap.makeNative());
    return Value::object(heap.makeTransparentProxy(target, handler, token));
}

Value functionContract(Heap& heap, const Value& fn, const Value& argPred,
                       const Value& retPred) {
    if (!heap.isCallable(fn)) {
        throwTypeError("function contract target must be callable");
    }
    if (!heap.isCallable(argPred) || !heap.isCallable(retPred)) {
        throwTypeError("function contract predicates must be callable");
    }
    Heap* h = &heap;
    Value applyTrap = Value::object(heap.makeFunction(
        [h, argPred, retPred](std::span<const Value> args) {
            std::vector<Value> callArgs = h->arrayElements(args[2]);
            Value first = callArgs.empty() ? Value::undefined() : callArgs[0];
            std::array<Value, 1> checkArg{first};
            if (!toBoolean(h->callValue(argPred, checkArg))) {
                throw ScriptError(ErrorKind::Contract,
                                  "argument rejected by function contract");
            }
            Value result = h->dispatchApply(args[0], args[1], callArgs);
            std::array<Value, 1> checkRet{result};
            if (!toBoolean(h->callValue(retPred, checkRet))) {
                throw ScriptError(ErrorKind::Contract,
                                  "result rejected by function contract");
            }
            return result;
        }));
    Value handler = Value::object(heap.makeNative({{"apply", applyTrap}}));
    Value token = Value::object(heap.makeNative());
    return Value::object(heap.makeTransparentProxy(fn, handler, token));
}

Value makeObserver(Heap& heap, const Value& target, const Value& userHandler) {
    if (!target.isObject() || !userHandler.isObject()) {
        throwTypeError("observer target and handler must be objects");
    }
    Heap* h = &heap;
    ObjectRef userRef = userHandler.asObject();
    Value getTrap = Value::object(heap.makeFunction(
        [h, userRef](std::span<const Value> args) {
            Value result = Value::undefined();
            if (std::optional<Value> trap = h->trapLookup(userRef, "get")) {
                std::array<Value, 3> trapArgs{args[0], args[1], args[2]};
                result = h->callValue(*trap, trapArgs);
            }
            // The raw read follows the user trap and is the reference
            // both for the projection check and for the fallback value.
            Value raw = h->dispatchGet(args[0], args[1].asString());
            return strictEquals(*h, result, raw) ? result : raw;
        }));
    Value controller = Value::object(heap.makeNative({{"get", getTrap}}));
    Value token = Value::object(heap.makeNative());
    return Value::object(heap.makeTransparentProxy(target, controller, token));
}

Value createProxyConstructor(Heap& heap) {
    Heap* h = &heap;
    Value token = Value::object(heap.makeNative());
    Value constructor = Value::object(heap.makeFunction(
        [h, token](std::span<const Value> args) {
            if (args.size() < 2) {
                throwTypeError("realm constructor expects target and handler");
            }
            return Value::object(h->makeTransparentProxy(args[0], args[1], token));
        }));
    Value equals = Value::object(heap.makeFunction(
        [h, token](std::span<const Value> args) {
            if (args.size() < 2) {
                throwTypeError("realm equals expects two arguments");
            }
            return Value::boolean(objectEquals(*h, args[0], args[1], token));
        }));
    return Value::object(heap.makeNative({
        {"Constructor", constructor},
        {"equals", equals},
    }));
}

} // namespace tproxy
