#ifndef TPROXY_EQUALITY_HPP
#define TPROXY_EQUALITY_HPP

#include <optional>

#include "tproxy/heap.hpp"
#include "tproxy/value.hpp"

namespace tproxy {

/// Result of unwrapping transparent layers: the identity object and the
/// number of layers removed. The identity object is never a transparent
/// proxy nor an opaque proxy whose isTransparent trap currently answers
/// truthy.
struct IdentityResolution {
    Value identityObject;
    int hops = 0;
};

/// Resolves a value to its identity object.
///
/// Non-objects and native objects pass through. A transparent proxy
/// resolves through its retained target slot, revoked or not. An opaque
/// proxy consults its handler: revoked handlers raise a type error, an
/// isTransparent trap is invoked (afresh on every resolution) and a
/// truthy answer continues through the target, anything else stops at
/// the proxy itself.
IdentityResolution resolveIdentity(Heap& heap, const Value& v);
Value getIdentityObject(Heap& heap, const Value& v);

/// Equality comparison with type coercion (the == operator). On two
/// objects, compares identity objects by reference.
bool abstractEquals(Heap& heap, const Value& x, const Value& y);

/// Strict equality (the === operator): false on tag mismatch, never
/// coerces; NaN compares false to itself and +0 equals -0. On two
/// objects, compares identity objects by reference.
bool strictEquals(Heap& heap, const Value& x, const Value& y);

/// Like strictEquals except NaN equals NaN and +0 differs from -0; the
/// key predicate of the identity-keyed collections.
bool sameValue(Heap& heap, const Value& x, const Value& y);

/// Value equality with no identity resolution at all: reference identity
/// on objects, sameValue rules on primitives.
bool rawSameValue(const Value& x, const Value& y);

/// Object.equals. Without a secret, identity-object equality. With a
/// secret, raw reference equality whenever either argument is a
/// transparent proxy whose token slot is reference-identical to the
/// secret; identity-object equality otherwise. Arity checking (fewer
/// than two arguments is a type error) lives at the builtin boundary.
bool objectEquals(Heap& heap, const Value& a, const Value& b);
bool objectEquals(Heap& heap, const Value& a, const Value& b, const Value& secret);

/// String/boolean to number conversion used by abstract equality.
/// Booleans map to 0/1. Strings parse as optional sign, decimal digits,
/// optional fraction and exponent; empty or whitespace-only strings are
/// +0; anything else is NaN.
double toNumber(const Value& v);

/// Object to primitive conversion: valueOf first, then toString, both
/// looked up and applied through full trap dispatch; a type error when
/// neither yields a primitive.
Value toPrimitive(Heap& heap, const Value& obj);

} // namespace tproxy

#endif
