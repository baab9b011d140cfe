#include "tproxy/equality.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace tproxy {

IdentityResolution resolveIdentity(Heap& heap, const Value& v) {
    if (!v.isObject()) {
        return IdentityResolution{v, 0};
    }
    ObjectRef current = v.asObject();
    int hops = 0;
    for (;;) {
        ++heap.counters().identityLoopIterations;
        const ObjectRecord& rec = heap.record(current);
        switch (rec.kind) {
        case ObjectKind::Native:
            return IdentityResolution{Value::object(current), hops};
        case ObjectKind::TransparentProxy:
            // The target slot survives revocation; no handler is consulted.
            current = rec.target;
            ++hops;
            break;
        case ObjectKind::OpaqueProxy: {
            if (!rec.handler) {
                throwTypeError("identity of a revoked proxy");
            }
            std::optional<Value> trap = heap.trapLookup(*rec.handler, "isTransparent");
            if (!trap) {
                return IdentityResolution{Value::object(current), hops};
            }
            ++heap.counters().isTransparentInvocations;
            Value answer = heap.callValue(*trap, {});
            if (!toBoolean(answer)) {
                return IdentityResolution{Value::object(current), hops};
            }
            current = rec.target;
            ++hops;
            break;
        }
        }
    }
}

Value getIdentityObject(Heap& heap, const Value& v) {
    return resolveIdentity(heap, v).identityObject;
}

namespace {

bool numberEquals(double a, double b) {
    // IEEE ==: NaN != NaN, +0 == -0.
    return a == b;
}

bool sameValueNumber(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) {
        return true;
    }
    if (a == 0.0 && b == 0.0) {
        return std::signbit(a) == std::signbit(b);
    }
    return a == b;
}

bool identityObjectsEqual(Heap& heap, const Value& x, const Value& y) {
    ObjectRef lhs = getIdentityObject(heap, x).asObject();
    ObjectRef rhs = getIdentityObject(heap, y).asObject();
    return lhs == rhs;
}

} // namespace

bool abstractEquals(Heap& heap, const Value& x, const Value& y) {
    if (x.tag() == y.tag()) {
        switch (x.tag()) {
        case Tag::Undefined:
        case Tag::Null:
            return true;
        case Tag::Number:
            return numberEquals(x.asNumber(), y.asNumber());
        case Tag::String:
            return x.asString() == y.asString();
        case Tag::Boolean:
            return x.asBoolean() == y.asBoolean();
        case Tag::Object:
            return identityObjectsEqual(heap, x, y);
        }
    }
    if ((x.isNull() && y.isUndefined()) || (x.isUndefined() && y.isNull())) {
        return true;
    }
    if (x.isNumber() && y.isString()) {
        return abstractEquals(heap, x, Value::number(toNumber(y)));
    }
    if (x.isString() && y.isNumber()) {
        return abstractEquals(heap, Value::number(toNumber(x)), y);
    }
    if (x.isBoolean()) {
        return abstractEquals(heap, Value::number(toNumber(x)), y);
    }
    if (y.isBoolean()) {
        return abstractEquals(heap, x, Value::number(toNumber(y)));
    }
    if ((x.isString() || x.isNumber()) && y.isObject()) {
        return abstractEquals(heap, x, toPrimitive(heap, y));
    }
    if (x.isObject() && (y.isString() || y.isNumber())) {
        return abstractEquals(heap, toPrimitive(heap, x), y);
    }
    return false;
}

bool strictEquals(Heap& heap, const Value& x, const Value& y) {
    if (x.tag() != y.tag()) {
        return false;
    }
    switch (x.tag()) {
    case Tag::Undefined:
    case Tag::Null:
        return true;
    case Tag::Number:
        return numberEquals(x.asNumber(), y.asNumber());
    case Tag::String:
        return x.asString() == y.asString();
    case Tag::Boolean:
        return x.asBoolean() == y.asBoolean();
    case Tag::Object:
        return identityObjectsEqual(heap, x, y);
    }
    return false;
}

bool sameValue(Heap& heap, const Value& x, const Value& y) {
    if (x.tag() != y.tag()) {
        return false;
    }
    if (x.isNumber()) {
        return sameValueNumber(x.asNumber(), y.asNumber());
    }
    if (x.isObject()) {
        return identityObjectsEqual(heap, x, y);
    }
    return strictEquals(heap, x, y);
}

bool rawSameValue(const Value& x, const Value& y) {
    if (x.tag() != y.tag()) {
        return false;
    }
    switch (x.tag()) {
    case Tag::Undefined:
    case Tag::Null:
        return true;
    case Tag::Number:
        return sameValueNumber(x.asNumber(), y.asNumber());
    case Tag::String:
        return x.asString() == y.asString();
    case Tag::Boolean:
        return x.asBoolean() == y.asBoolean();
    case Tag::Object:
        return x.asObject() == y.asObject();
    }
    return false;
}

namespace {

bool tokenMatches(Heap& heap, const Value& v, const Value& secret) {
    if (!v.isObject() || !secret.isObject()) {
        return false;
    }
    const ObjectRecord& rec = heap.record(v.asObject());
    return rec.kind == ObjectKind::TransparentProxy &&
           rec.token == secret.asObject();
}

} // namespace

bool objectEquals(Heap& heap, const Value& a, const Value& b) {
    return strictEquals(heap, a, b);
}

bool objectEquals(Heap& heap, const Value& a, const Value& b, const Value& secret) {
    bool doRefEquality = tokenMatches(heap, a, secret) || tokenMatches(heap, b, secret);
    if (doRefEquality) {
        return rawSameValue(a, b);
    }
    return strictEquals(heap, a, b);
}

double toNumber(const Value& v) {
    if (v.isBoolean()) {
        return v.asBoolean() ? 1.0 : 0.0;
    }
    if (v.isNumber()) {
        return v.asNumber();
    }
    if (!v.isString()) {
        throwTypeError("toNumber expects a string or boolean");
    }
    const std::string& s = v.asString();
    size_t begin = 0;
    size_t end = s.size();
    auto isSpace = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
               c == '\v';
    };
    while (begin < end && isSpace(s[begin])) {
        ++begin;
    }
    while (end > begin && isSpace(s[end - 1])) {
        --end;
    }
    if (begin == end) {
        return 0.0;
    }

    // [+-]? ( digits [ '.' digits? ] | '.' digits ) ( [eE] [+-]? digits )?
    size_t i = begin;
    auto digitsFrom = [&](size_t& pos) {
        size_t start = pos;
        while (pos < end && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
        return pos > start;
    };
    if (s[i] == '+' || s[i] == '-') {
        ++i;
    }
    bool intPart = digitsFrom(i);
    bool fracPart = false;
    if (i < end && s[i] == '.') {
        ++i;
        fracPart = digitsFrom(i);
    }
    if (!intPart && !fracPart) {
        return std::nan("");
    }
    if (i < end && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < end && (s[i] == '+' || s[i] == '-')) {
            ++i;
        }
        if (!digitsFrom(i)) {
            return std::nan("");
        }
    }
    if (i != end) {
        return std::nan("");
    }
    return std::strtod(s.substr(begin, end - begin).c_str(), nullptr);
}

Value toPrimitive(Heap& heap, const Value& obj) {
    if (!obj.isObject()) {
        return obj;
    }
    for (const char* name : {"valueOf", "toString"}) {
        Value method = heap.dispatchGet(obj, name);
        if (method.isObject() && heap.isCallable(method)) {
            Value result = heap.callValue(method, {});
            if (!result.isObject()) {
                return result;
            }
        }
    }
    throwTypeError("cannot convert object to a primitive value");
}

} // namespace tproxy
