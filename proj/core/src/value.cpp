#include "tproxy/value.hpp"

#include <charconv>
#include <cmath>

namespace tproxy {

bool toBoolean(const Value& v) {
    switch (v.tag()) {
    case Tag::Undefined:
    case Tag::Null:
        return false;
    case Tag::Boolean:
        return v.asBoolean();
    case Tag::Number: {
        double d = v.asNumber();
        return d != 0.0 && !std::isnan(d);
    }
    case Tag::String:
        return !v.asString().empty();
    case Tag::Object:
        return true;
    }
    return false;
}

std::string formatNumber(double d) {
    if (std::isnan(d)) {
        return "NaN";
    }
    if (d == 0.0) {
        return "0";
    }
    if (std::isinf(d)) {
        return d > 0 ? "Infinity" : "-Infinity";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, res.ptr);
}

const char* tagName(Tag t) {
    switch (t) {
    case Tag::Undefined: return "undefined";
    case Tag::Null: return "null";
    case Tag::Boolean: return "boolean";
    case Tag::Number: return "number";
    case Tag::String: return "string";
    case Tag::Object: return "object";
    }
    return "unknown";
}

} // namespace tproxy
