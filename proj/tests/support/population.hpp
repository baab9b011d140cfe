// Randomized heap populations for the equality property suites: a few
// native bases plus proxy layers of every kind (transparent, trap-true,
// trap-false, plain opaque), capped at three layers per chain.
#ifndef TPROXY_TESTS_POPULATION_HPP
#define TPROXY_TESTS_POPULATION_HPP

#include <random>
#include <unordered_map>
#include <vector>

#include "tproxy/heap.hpp"

namespace tproxy::testsupport {

enum class LayerKind {
    Transparent,
    TrapTrue,
    TrapFalse,
    PlainOpaque,
};

struct Population {
    std::vector<Value> values;   // objects: bases first, then proxies
    std::vector<Value> bases;    // the native records
};

inline Value makeHandler(Heap& heap, std::mt19937_64& rng,
                         std::optional<bool> trapAnswer) {
    std::vector<std::pair<std::string, Value>> props;
    if (trapAnswer) {
        bool answer = *trapAnswer;
        props.emplace_back("isTransparent",
                           Value::object(heap.makeFunction(
                               [answer](std::span<const Value>) {
                                   return Value::boolean(answer);
                               })));
    }
    // Half the handlers get a real get trap so the stability check bites.
    if (rng() % 2 == 0) {
        props.emplace_back("get", Value::object(heap.makeFunction(
                                      [](std::span<const Value>) {
                                          return Value::undefined();
                                      })));
    }
    return Value::object(heap.makeNative(props));
}

inline Population makePopulation(Heap& heap, std::mt19937_64& rng,
                                 size_t maxValues = 10, int maxLayers = 3) {
    Population pop;
    std::unordered_map<uint32_t, int> depth;

    size_t nBases = 1 + rng() % 4;
    for (size_t i = 0; i < nBases && pop.values.size() < maxValues; ++i) {
        Value base = Value::object(
            heap.makeNative({{"tag", Value::number(static_cast<double>(i))}}));
        depth[base.asObject().id] = 0;
        pop.values.push_back(base);
        pop.bases.push_back(base);
    }

    while (pop.values.size() < maxValues) {
        const Value& target = pop.values[rng() % pop.values.size()];
        if (depth[target.asObject().id] >= maxLayers) {
            continue;
        }
        auto kind = static_cast<LayerKind>(rng() % 4);
        Value proxy;
        switch (kind) {
        case LayerKind::Transparent: {
            Value token = Value::object(heap.makeNative());
            proxy = Value::object(heap.makeTransparentProxy(
                target, makeHandler(heap, rng, std::nullopt), token));
            break;
        }
        case LayerKind::TrapTrue:
            proxy = Value::object(
                heap.makeProxy(target, makeHandler(heap, rng, true)));
            break;
        case LayerKind::TrapFalse:
            proxy = Value::object(
                heap.makeProxy(target, makeHandler(heap, rng, false)));
            break;
        case LayerKind::PlainOpaque:
            proxy = Value::object(
                heap.makeProxy(target, makeHandler(heap, rng, std::nullopt)));
            break;
        }
        depth[proxy.asObject().id] = depth[target.asObject().id] + 1;
        pop.values.push_back(proxy);
    }
    return pop;
}

} // namespace tproxy::testsupport

#endif
