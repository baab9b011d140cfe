#include "tproxy/collections.hpp"

#include <algorithm>

namespace tproxy {

namespace {

bool secretTokenMatches(Heap& heap, const Value& key, const Value& secret) {
    if (!key.isObject() || !secret.isObject()) {
        return false;
    }
    const ObjectRecord& rec = heap.record(key.asObject());
    return rec.kind == ObjectKind::TransparentProxy &&
           rec.token == secret.asObject();
}

} // namespace

Value IdentityMap::identityKeyFor(const Value& key) const {
    if (secret_ && secretTokenMatches(*heap_, key, *secret_)) {
        return key;
    }
    return getIdentityObject(*heap_, key);
}

const IdentityMap::Entry* IdentityMap::find(const Value& key) const {
    Value ik = identityKeyFor(key);
    // Stored identity keys are snapshots; compare them raw so a trap flip
    // after insertion cannot silently rekey old entries.
    for (const Entry& e : entries_) {
        if (rawSameValue(e.identityKey, ik)) {
            return &e;
        }
    }
    return nullptr;
}

IdentityMap::Entry* IdentityMap::find(const Value& key) {
    return const_cast<Entry*>(static_cast<const IdentityMap*>(this)->find(key));
}

void IdentityMap::set(const Value& key, const Value& value) {
    if (Entry* e = find(key)) {
        e->value = value; // original stored key is retained
        return;
    }
    entries_.push_back(Entry{key, identityKeyFor(key), value});
}

Value IdentityMap::get(const Value& key) const {
    const Entry* e = find(key);
    return e ? e->value : Value::undefined();
}

bool IdentityMap::has(const Value& key) const {
    return find(key) != nullptr;
}

bool IdentityMap::erase(const Value& key) {
    Value ik = identityKeyFor(key);
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) {
        return rawSameValue(e.identityKey, ik);
    });
    if (it == entries_.end()) {
        return false;
    }
    entries_.erase(it);
    return true;
}

std::vector<Value> IdentityMap::keys() const {
    std::vector<Value> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) {
        out.push_back(e.storedKey);
    }
    return out;
}

void IdentityWeakMap::requireObjectKey(const Value& key) {
    if (!key.isObject()) {
        throwTypeError("weak map keys must be objects");
    }
}

void IdentityWeakMap::set(const Value& key, const Value& value) {
    requireObjectKey(key);
    map_.set(key, value);
}

Value IdentityWeakMap::get(const Value& key) const {
    requireObjectKey(key);
    return map_.get(key);
}

bool IdentityWeakMap::has(const Value& key) const {
    requireObjectKey(key);
    return map_.has(key);
}

} // namespace tproxy
