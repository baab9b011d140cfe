#include "tproxy/heap.hpp"

#include <algorithm>
#include <array>

namespace tproxy {

namespace {
const char* kRevokedMessage = "proxy has been revoked";
}

ObjectRef Heap::append(ObjectRecord rec) {
    ObjectRef ref{static_cast<uint32_t>(records_.size())};
    records_.push_back(std::move(rec));
    return ref;
}

ObjectRef Heap::requireObject(const Value& v, const char* what) const {
    if (!v.isObject()) {
        throwTypeError(std::string(what) + " must be an object, got " +
                       tagName(v.tag()));
    }
    return v.asObject();
}

ObjectRef Heap::makeNative(std::vector<std::pair<std::string, Value>> props) {
    ObjectRecord rec;
    rec.kind = ObjectKind::Native;
    rec.properties = std::move(props);
    return append(std::move(rec));
}

ObjectRef Heap::makeFunction(NativeFn fn,
                             std::vector<std::pair<std::string, Value>> props) {
    ObjectRecord rec;
    rec.kind = ObjectKind::Native;
    rec.properties = std::move(props);
    rec.callBehavior = std::move(fn);
    return append(std::move(rec));
}

ObjectRef Heap::makeArray(std::span<const Value> elements) {
    std::vector<std::pair<std::string, Value>> props;
    props.reserve(elements.size() + 1);
    for (size_t i = 0; i < elements.size(); ++i) {
        props.emplace_back(std::to_string(i), elements[i]);
    }
    props.emplace_back("length", Value::number(static_cast<double>(elements.size())));
    return makeNative(std::move(props));
}

ObjectRef Heap::makeProxy(const Value& target, const Value& handler) {
    ObjectRecord rec;
    rec.kind = ObjectKind::OpaqueProxy;
    rec.target = requireObject(target, "proxy target");
    rec.handler = requireObject(handler, "proxy handler");
    return append(std::move(rec));
}

ObjectRef Heap::makeTransparentProxy(const Value& target, const Value& handler,
                                     const Value& token) {
    ObjectRecord rec;
    rec.kind = ObjectKind::TransparentProxy;
    rec.target = requireObject(target, "proxy target");
    rec.handler = requireObject(handler, "proxy handler");
    rec.token = requireObject(token, "proxy token");
    return append(std::move(rec));
}

Revocable Heap::makeRevocable(const Value& target, const Value& handler,
                              bool transparent, std::optional<Value> token) {
    ObjectRef proxy;
    if (transparent) {
        if (!token) {
            throwTypeError("transparent revocable proxy requires a token");
        }
        proxy = makeTransparentProxy(target, handler, *token);
    } else {
        proxy = makeProxy(target, handler);
    }
    ObjectRef revoke = makeFunction([this, proxy](std::span<const Value>) {
        this->revoke(proxy);
        return Value::undefined();
    });
    return Revocable{proxy, revoke};
}

void Heap::revoke(ObjectRef proxy) {
    ObjectRecord& rec = record(proxy);
    if (rec.kind == ObjectKind::Native) {
        throwTypeError("cannot revoke a non-proxy object");
    }
    rec.handler.reset();
}

ObjectRef Heap::baseTarget(ObjectRef ref) const {
    while (record(ref).kind != ObjectKind::Native) {
        ref = record(ref).target;
    }
    return ref;
}

bool Heap::isCallable(const Value& v) const {
    if (!v.isObject()) {
        return false;
    }
    const ObjectRecord& base = record(baseTarget(v.asObject()));
    return static_cast<bool>(base.callBehavior);
}

void Heap::stampMembrane(ObjectRef proxy, int membraneId) {
    ObjectRecord& rec = record(proxy);
    if (rec.kind == ObjectKind::Native) {
        throwTypeError("membrane tag applies to proxies only");
    }
    rec.membraneId = membraneId;
}

std::optional<Value> Heap::ownProperty(ObjectRef ref, const std::string& key) const {
    const ObjectRecord& rec = record(ref);
    for (const auto& [name, value] : rec.properties) {
        if (name == key) {
            return value;
        }
    }
    return std::nullopt;
}

void Heap::setOwnProperty(ObjectRef ref, const std::string& key, Value value) {
    ObjectRecord& rec = record(ref);
    for (auto& [name, slot] : rec.properties) {
        if (name == key) {
            slot = std::move(value);
            return;
        }
    }
    rec.properties.emplace_back(key, std::move(value));
}

bool Heap::deleteOwnProperty(ObjectRef ref, const std::string& key) {
    ObjectRecord& rec = record(ref);
    auto it = std::find_if(rec.properties.begin(), rec.properties.end(),
                           [&](const auto& p) { return p.first == key; });
    if (it == rec.properties.end()) {
        return false;
    }
    rec.properties.erase(it);
    return true;
}

std::optional<Value> Heap::trapLookup(ObjectRef handler, const std::string& name) const {
    ObjectRef base = baseTarget(handler);
    std::optional<Value> slot = ownProperty(base, name);
    if (!slot || slot->isUndefined() || slot->isNull()) {
        return std::nullopt;
    }
    if (!isCallable(*slot)) {
        throwTypeError("'" + name + "' trap is not callable");
    }
    return slot;
}

Value Heap::dispatchGet(const Value& obj, const std::string& key) {
    return dispatchGet(obj, key, obj);
}

Value Heap::dispatchGet(const Value& obj, const std::string& key,
                        const Value& receiver) {
    ObjectRef ref = requireObject(obj, "property access target");
    const ObjectRecord& rec = record(ref);
    if (rec.kind == ObjectKind::Native) {
        std::optional<Value> v = ownProperty(ref, key);
        return v ? *v : Value::undefined();
    }
    if (!rec.handler) {
        throwRevoked(kRevokedMessage);
    }
    Value target = Value::object(rec.target);
    if (std::optional<Value> trap = trapLookup(*rec.handler, "get")) {
        ++counters_.trapInvocations;
        std::array<Value, 3> args{target, Value::string(key), receiver};
        return callValue(*trap, args);
    }
    return dispatchGet(target, key, receiver);
}

Value Heap::dispatchSet(const Value& obj, const std::string& key, const Value& value) {
    return dispatchSet(obj, key, value, obj);
}

Value Heap::dispatchSet(const Value& obj, const std::string& key, const Value& value,
                        const Value& receiver) {
    ObjectRef ref = requireObject(obj, "property assignment target");
    const ObjectRecord& rec = record(ref);
    if (rec.kind == ObjectKind::Native) {
        setOwnProperty(ref, key, value);
        return value;
    }
    if (!rec.handler) {
        throwRevoked(kRevokedMessage);
    }
    Value target = Value::object(rec.target);
    if (std::optional<Value> trap = trapLookup(*rec.handler, "set")) {
        ++counters_.trapInvocations;
        std::array<Value, 4> args{target, Value::string(key), value, receiver};
        callValue(*trap, args);
        return value;
    }
    return dispatchSet(target, key, value, receiver);
}

bool Heap::dispatchHas(const Value& obj, const std::string& key) {
    ObjectRef ref = requireObject(obj, "property query target");
    const ObjectRecord& rec = record(ref);
    if (rec.kind == ObjectKind::Native) {
        return ownProperty(ref, key).has_value();
    }
    if (!rec.handler) {
        throwRevoked(kRevokedMessage);
    }
    Value target = Value::object(rec.target);
    if (std::optional<Value> trap = trapLookup(*rec.handler, "has")) {
        ++counters_.trapInvocations;
        std::array<Value, 2> args{target, Value::string(key)};
        return toBoolean(callValue(*trap, args));
    }
    return dispatchHas(target, key);
}

bool Heap::dispatchDelete(const Value& obj, const std::string& key) {
    ObjectRef ref = requireObject(obj, "property delete target");
    const ObjectRecord& rec = record(ref);
    if (rec.kind == ObjectKind::Native) {
        return deleteOwnProperty(ref, key);
    }
    if (!rec.handler) {
        throwRevoked(kRevokedMessage);
    }
    Value target = Value::object(rec.target);
    if (std::optional<Value> trap = trapLookup(*rec.handler, "deleteProperty")) {
        ++counters_.trapInvocations;
        std::array<Value, 2> args{target, Value::string(key)};
        return toBoolean(callValue(*trap, args));
    }
    return dispatchDelete(target, key);
}

Value Heap::dispatchApply(const Value& obj, const Value& thisArg,
                          std::span<const Value> args) {
    ObjectRef ref = requireObject(obj, "call target");
    if (!isCallable(obj)) {
        throwTypeError("value is not callable");
    }
    const ObjectRecord& rec = record(ref);
    if (rec.kind == ObjectKind::Native) {
        return rec.callBehavior(args);
    }
    if (!rec.handler) {
        throwRevoked(kRevokedMessage);
    }
    Value target = Value::object(rec.target);
    if (std::optional<Value> trap = trapLookup(*rec.handler, "apply")) {
        ++counters_.trapInvocations;
        Value argsArray = Value::object(makeArray(args));
        std::array<Value, 3> trapArgs{target, thisArg, argsArray};
        return callValue(*trap, trapArgs);
    }
    return dispatchApply(target, thisArg, args);
}

Value Heap::callValue(const Value& fn, std::span<const Value> args) {
    return dispatchApply(fn, Value::undefined(), args);
}

std::vector<Value> Heap::arrayElements(const Value& arr) {
    Value lenVal = dispatchGet(arr, "length");
    if (!lenVal.isNumber()) {
        throwTypeError("array length is not a number");
    }
    auto len = static_cast<size_t>(lenVal.asNumber());
    std::vector<Value> out;
    out.reserve(len);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(dispatchGet(arr, std::to_string(i)));
    }
    return out;
}

} // namespace tproxy
