#ifndef TPROXY_HEAP_HPP
#define TPROXY_HEAP_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tproxy/error.hpp"
#include "tproxy/value.hpp"

namespace tproxy {

enum class ObjectKind : uint8_t {
    Native,
    OpaqueProxy,
    TransparentProxy,
};

/// Behavior of a callable native object. The language has no `this`;
/// callees receive exactly their positional arguments.
using NativeFn = std::function<Value(std::span<const Value>)>;

/// A heap entity. Native records own properties and an optional call
/// behavior; proxy records own a target, a handler slot (empty once
/// revoked) and, for transparent proxies, a token slot.
struct ObjectRecord {
    ObjectKind kind = ObjectKind::Native;
    std::vector<std::pair<std::string, Value>> properties; // insertion order
    NativeFn callBehavior;
    ObjectRef target{};
    std::optional<ObjectRef> handler;
    ObjectRef token{};
    std::optional<int> membraneId;
};

/// Counters used by the invariant suites. Trap invocations cover the
/// get/set/has/deleteProperty/apply traps; isTransparent is counted
/// separately so equality stability can be asserted against the first
/// counter alone. identityLoopIterations increments once per object
/// record examined by identity resolution.
struct RuntimeCounters {
    uint64_t trapInvocations = 0;
    uint64_t isTransparentInvocations = 0;
    uint64_t identityLoopIterations = 0;
};

struct Revocable {
    ObjectRef proxy;
    ObjectRef revoke; // zero-argument callable; second call is a no-op
};

/// The single-threaded heap. Records are append-only; an ObjectRef is an
/// index into the record store and stays valid for the whole run.
class Heap {
public:
    Heap() = default;
    Heap(const Heap&) = delete;
    Heap& operator=(const Heap&) = delete;

    // --- construction -----------------------------------------------------

    ObjectRef makeNative(std::vector<std::pair<std::string, Value>> props = {});
    ObjectRef makeFunction(NativeFn fn,
                           std::vector<std::pair<std::string, Value>> props = {});
    /// Fresh native object with properties "0".."n-1" and "length".
    ObjectRef makeArray(std::span<const Value> elements);

    ObjectRef makeProxy(const Value& target, const Value& handler);
    ObjectRef makeTransparentProxy(const Value& target, const Value& handler,
                                   const Value& token);
    Revocable makeRevocable(const Value& target, const Value& handler,
                            bool transparent,
                            std::optional<Value> token = std::nullopt);

    /// Detaches a proxy from its handler. Idempotent; the target slot is
    /// retained (identity of a revoked transparent proxy still resolves).
    void revoke(ObjectRef proxy);

    // --- record access ----------------------------------------------------

    ObjectRecord& record(ObjectRef ref) { return records_[ref.id]; }
    const ObjectRecord& record(ObjectRef ref) const { return records_[ref.id]; }
    size_t objectCount() const { return records_.size(); }

    bool isProxy(ObjectRef ref) const {
        return record(ref).kind != ObjectKind::Native;
    }
    bool isRevoked(ObjectRef ref) const {
        return isProxy(ref) && !record(ref).handler.has_value();
    }

    /// Unwraps every proxy layer, transparent and opaque, ignoring traps
    /// and revocation. Total: target slots survive revocation.
    ObjectRef baseTarget(ObjectRef ref) const;

    /// True for native records with call behavior and for proxies whose
    /// base target is callable.
    bool isCallable(const Value& v) const;

    void stampMembrane(ObjectRef proxy, int membraneId);
    int freshMembraneId() { return nextMembraneId_++; }

    // --- raw property access (Native records) ------------------------------

    std::optional<Value> ownProperty(ObjectRef ref, const std::string& key) const;
    void setOwnProperty(ObjectRef ref, const std::string& key, Value value);
    bool deleteOwnProperty(ObjectRef ref, const std::string& key);

    /// Trap lookup on a handler object. The lookup is a raw own-property
    /// read on the handler's base record; it never invokes traps, so
    /// equality stays stable even for exotic handler objects.
    /// Returns nothing when the slot is absent, undefined or null; throws
    /// a type error when the slot holds a non-callable value.
    std::optional<Value> trapLookup(ObjectRef handler, const std::string& name) const;

    // --- dispatch -----------------------------------------------------------

    Value dispatchGet(const Value& obj, const std::string& key);
    Value dispatchGet(const Value& obj, const std::string& key, const Value& receiver);
    Value dispatchSet(const Value& obj, const std::string& key, const Value& value);
    Value dispatchSet(const Value& obj, const std::string& key, const Value& value,
                      const Value& receiver);
    bool dispatchHas(const Value& obj, const std::string& key);
    bool dispatchDelete(const Value& obj, const std::string& key);
    Value dispatchApply(const Value& obj, const Value& thisArg,
                        std::span<const Value> args);

    /// Invokes a callable value with the given arguments (no `this`).
    Value callValue(const Value& fn, std::span<const Value> args);

    /// Reads elements "0".."length-1" of an array-shaped object.
    std::vector<Value> arrayElements(const Value& arr);

    RuntimeCounters& counters() { return counters_; }
    const RuntimeCounters& counters() const { return counters_; }

private:
    ObjectRef requireObject(const Value& v, const char* what) const;
    ObjectRef append(ObjectRecord rec);

    std::deque<ObjectRecord> records_;
    RuntimeCounters counters_;
    int nextMembraneId_ = 1;
};

} // namespace tproxy

#endif
