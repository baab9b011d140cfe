#ifndef TPROXY_STDLIB_HPP
#define TPROXY_STDLIB_HPP

#include <memory>

#include "tproxy/collections.hpp"
#include "tproxy/heap.hpp"
#include "tproxy/value.hpp"

namespace tproxy {

/// A wrapping discipline: every object-valued result read through a
/// membrane proxy is itself wrapped, on demand, with at most one proxy
/// per target (a weak-map-style cache from targets to their proxies).
/// Values written through a membrane proxy are unwrapped to their
/// targets before they cross inward. Revocation detaches every proxy
/// the membrane has minted.
///
/// Membrane is a cheap handle; copies share one membrane.
class Membrane {
public:
    Membrane(Heap& heap, bool transparent, bool useCache = true);

    /// Wraps an object in this membrane's proxy (primitives pass
    /// through). Returns the cached proxy when the target has crossed
    /// before, and the value itself when it is already one of ours.
    Value wrap(const Value& v);

    void revoke();
    bool revoked() const;
    int id() const;
    bool transparent() const;
    size_t mintedCount() const;

    struct State;

private:
    std::shared_ptr<State> state_;
};

struct MembraneResult {
    Value wrapper;
    Membrane membrane;
};

/// Wraps root in a fresh membrane.
MembraneResult makeMembrane(Heap& heap, const Value& root, bool transparent,
                            bool useCache = true);

/// Contract wrapper: a proxy whose set trap raises a contract violation
/// whenever pred rejects the assigned value and forwards otherwise.
/// Transparent by default; the opaque flag exists to reproduce the
/// interference the wrapper otherwise avoids.
Value assertContract(Heap& heap, const Value& target, const Value& pred,
                     bool opaque = false);

/// Function contract: checks argPred on the first argument before the
/// call and retPred on the result after it; either failing raises a
/// contract violation. The wrapper is a transparent proxy.
Value functionContract(Heap& heap, const Value& fn, const Value& argPred,
                       const Value& retPred);

/// Observer proxy: a transparent proxy whose get trap runs the user's
/// get trap (when present), then performs the raw read, and keeps the
/// user's result only when it is identity-equal to the raw value — the
/// projection restriction. Other operations forward to the target.
Value makeObserver(Heap& heap, const Value& target, const Value& userHandler);

/// A transparency realm: an object with a "Constructor" property that
/// mints transparent proxies carrying a hidden fresh token, and an
/// "equals" property revealing exactly this realm's proxies.
Value createProxyConstructor(Heap& heap);

} // namespace tproxy

#endif
