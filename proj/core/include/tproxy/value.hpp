#ifndef TPROXY_VALUE_HPP
#define TPROXY_VALUE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>

namespace tproxy {

/// Handle to an ObjectRecord in a Heap. Reference identity is index
/// identity; handles are never invalidated during a run.
struct ObjectRef {
    uint32_t id = 0;

    friend bool operator==(ObjectRef a, ObjectRef b) { return a.id == b.id; }
    friend bool operator!=(ObjectRef a, ObjectRef b) { return a.id != b.id; }
};

enum class Tag : uint8_t {
    Undefined,
    Null,
    Boolean,
    Number,
    String,
    Object,
};

/// A runtime value: one of undefined, null, boolean, 64-bit float,
/// string, or object reference. NaN, +0 and -0 are stored as-is.
class Value {
public:
    Value() : repr_(Undef{}) {}

    static Value undefined() { return Value(); }
    static Value null() { return Value(Nul{}); }
    static Value boolean(bool b) { return Value(b); }
    static Value number(double d) { return Value(d); }
    static Value string(std::string s) { return Value(std::move(s)); }
    static Value object(ObjectRef r) { return Value(r); }

    Tag tag() const { return static_cast<Tag>(repr_.index()); }

    bool isUndefined() const { return tag() == Tag::Undefined; }
    bool isNull() const { return tag() == Tag::Null; }
    bool isBoolean() const { return tag() == Tag::Boolean; }
    bool isNumber() const { return tag() == Tag::Number; }
    bool isString() const { return tag() == Tag::String; }
    bool isObject() const { return tag() == Tag::Object; }

    bool asBoolean() const { return std::get<bool>(repr_); }
    double asNumber() const { return std::get<double>(repr_); }
    const std::string& asString() const { return std::get<std::string>(repr_); }
    ObjectRef asObject() const { return std::get<ObjectRef>(repr_); }

private:
    struct Undef {};
    struct Nul {};
    using Repr = std::variant<Undef, Nul, bool, double, std::string, ObjectRef>;

    explicit Value(Repr r) : repr_(std::move(r)) {}

    Repr repr_;
};

/// Truthiness: false, 0, NaN, "", null and undefined are falsy;
/// every object is truthy.
bool toBoolean(const Value& v);

/// Shortest round-trip decimal form. NaN prints "NaN", both zeroes
/// print "0", infinities print "Infinity"/"-Infinity".
std::string formatNumber(double d);

const char* tagName(Tag t);

} // namespace tproxy

#endif
