#ifndef TPROXY_COLLECTIONS_HPP
#define TPROXY_COLLECTIONS_HPP

#include <optional>
#include <vector>

#include "tproxy/equality.hpp"
#include "tproxy/heap.hpp"
#include "tproxy/value.hpp"

namespace tproxy {

/// Map keyed by identity objects. Hashing and lookup use the identity
/// object of a key; the originally inserted key is retained and is what
/// iteration returns. The identity key is a snapshot taken at insertion
/// time: a trap that later changes its transparency answer does not
/// rekey existing entries. An optional secret makes the map realm-aware:
/// keys that are transparent proxies carrying that token are stored by
/// raw reference instead of by identity.
class IdentityMap {
public:
    explicit IdentityMap(Heap& heap, std::optional<Value> secret = std::nullopt)
        : heap_(&heap), secret_(std::move(secret)) {}

    void set(const Value& key, const Value& value);
    Value get(const Value& key) const;
    bool has(const Value& key) const;
    bool erase(const Value& key);
    std::vector<Value> keys() const;
    size_t size() const { return entries_.size(); }

private:
    struct Entry {
        Value storedKey;
        Value identityKey;
        Value value;
    };

    Value identityKeyFor(const Value& key) const;
    const Entry* find(const Value& key) const;
    Entry* find(const Value& key);

    Heap* heap_;
    std::optional<Value> secret_;
    std::vector<Entry> entries_;
};

/// Identity-keyed set: the keying discipline of IdentityMap with unit
/// values.
class IdentitySet {
public:
    explicit IdentitySet(Heap& heap, std::optional<Value> secret = std::nullopt)
        : map_(heap, std::move(secret)) {}

    void add(const Value& v) { map_.set(v, Value::boolean(true)); }
    bool has(const Value& v) const { return map_.has(v); }
    bool erase(const Value& v) { return map_.erase(v); }
    std::vector<Value> values() const { return map_.keys(); }
    size_t size() const { return map_.size(); }

private:
    IdentityMap map_;
};

/// Non-iterable identity-keyed map restricted to object keys. Entry
/// lifetime is not tied to key reachability; the runtime has no
/// observable reclamation.
class IdentityWeakMap {
public:
    explicit IdentityWeakMap(Heap& heap, std::optional<Value> secret = std::nullopt)
        : map_(heap, std::move(secret)) {}

    void set(const Value& key, const Value& value);
    Value get(const Value& key) const;
    bool has(const Value& key) const;
    size_t size() const { return map_.size(); }

private:
    static void requireObjectKey(const Value& key);

    IdentityMap map_;
};

} // namespace tproxy

#endif
