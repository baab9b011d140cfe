// Acceptance suite: runs every criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "population.hpp"
#include "tproxy/equality.hpp"
#include "tproxy/instrument.hpp"
#include "tproxy/interpreter.hpp"
#include "tproxy/parser.hpp"
#include "tproxy/runner.hpp"
#include "tproxy/stdlib.hpp"

using namespace tproxy;
using testsupport::makePopulation;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) {
        throw Failure(what);
    }
}

std::string readFixture(const std::string& name) {
    std::ifstream in(std::string(TPROXY_FIXTURE_DIR) + "/" + name);
    require(in.good(), "missing fixture " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> runFixture(const std::string& name) {
    Outcome out = runSource(readFixture(name), RunConfig{});
    require(out.ok(), name + " failed: " +
                          (out.error ? out.error->format() : ""));
    return out.output;
}

void expectOutput(const std::string& fixture,
                  const std::vector<std::string>& expected) {
    std::vector<std::string> got = runFixture(fixture);
    require(got == expected, fixture + " output mismatch");
}

Value num(double d) { return Value::number(d); }
Value str(const char* s) { return Value::string(s); }

// --- criteria ----------------------------------------------------------------

void criterion1_listing1() {
    expectOutput("listing_proxy_opacity.tps", {"false", "true"});
}

void criterion2_listing2() {
    expectOutput("listing_contract_transparent.tps", {"90"});
    expectOutput("listing_contract_opaque.tps", {"130"});
}

void criterion3_tokens() {
    expectOutput("listing_tokens.tps",
                 {"true", "true", "false", "false", "true", "true"});
}

void criterion4_realm() {
    expectOutput("listing_realm.tps", {"true", "true", "false"});
}

void criterion5_mapSequence() {
    expectOutput("listing_map.tps", {"2", "true", "true", "B", "B", "C"});

    // The same sequence at the library level.
    Heap heap;
    Value target = Value::object(heap.makeNative());
    Value empty = Value::object(heap.makeNative());
    Value tok = Value::object(heap.makeNative());
    Value proxy1 = Value::object(heap.makeTransparentProxy(target, empty, tok));
    Value proxy2 = Value::object(heap.makeProxy(target, empty));
    IdentityMap map(heap);
    map.set(target, str("A"));
    map.set(proxy1, str("B"));
    map.set(proxy2, str("C"));
    std::vector<Value> keys = map.keys();
    require(keys.size() == 2, "map sequence: key count");
    require(keys[0].asObject() == target.asObject(), "map sequence: key 0");
    require(keys[1].asObject() == proxy2.asObject(), "map sequence: key 1");
    require(map.get(keys[0]).asString() == "B", "map sequence: value 0");
    require(map.get(keys[1]).asString() == "C", "map sequence: value 1");
}

void criterion6_conformanceTables() {
    Heap heap;
    auto native = [&] { return Value::object(heap.makeNative()); };
    Value empty = native();
    auto tp = [&](const Value& t) {
        return Value::object(heap.makeTransparentProxy(t, empty, native()));
    };
    auto op = [&](const Value& t) {
        return Value::object(heap.makeProxy(t, empty));
    };
    auto trapProxy = [&](const Value& t, bool answer) {
        Value trap = Value::object(heap.makeFunction(
            [answer](std::span<const Value>) { return Value::boolean(answer); }));
        return Value::object(heap.makeProxy(
            t, Value::object(heap.makeNative({{"isTransparent", trap}}))));
    };
    Value valueOf3 = Value::object(heap.makeNative(
        {{"valueOf", Value::object(heap.makeFunction([](std::span<const Value>) {
             return Value::number(3);
         }))}}));
    Value toStringFoo = Value::object(heap.makeNative(
        {{"toString", Value::object(heap.makeFunction([](std::span<const Value>) {
             return Value::string("foo");
         }))}}));

    Value t = native();
    Value o1 = native();
    Value o2 = native();
    double nan = std::nan("");

    struct Row {
        Value lhs, rhs;
        bool expected;
    };
    const Row abstractRows[] = {
        {Value::undefined(), Value::undefined(), true},
        {Value::null(), Value::null(), true},
        {num(nan), num(nan), false},
        {num(nan), num(1), false},
        {num(+0.0), num(-0.0), true},
        {num(2.5), num(2.5), true},
        {num(1), num(2), false},
        {str("abc"), str("abc"), true},
        {str("abc"), str("abd"), false},
        {Value::boolean(true), Value::boolean(true), true},
        {Value::boolean(true), Value::boolean(false), false},
        {Value::null(), Value::undefined(), true},
        {Value::undefined(), Value::null(), true},
        {Value::null(), num(0), false},
        {Value::undefined(), num(0), false},
        {num(1), str("1"), true},
        {str("1.5"), num(1.5), true},
        {str(""), num(0), true},
        {str("  "), num(0), true},
        {str("abc"), num(0), false},
        {str("0.5e1"), num(5), true},
        {str("-0"), num(0), true},
        {Value::boolean(true), num(1), true},
        {Value::boolean(false), num(0), true},
        {Value::boolean(true), str("1"), true},
        {Value::boolean(false), str(""), true},
        {valueOf3, num(3), true},
        {num(3), valueOf3, true},
        {toStringFoo, str("foo"), true},
        {valueOf3, str("3"), true},
        {o1, Value::null(), false},
        {o1, Value::undefined(), false},
        {o1, o1, true},
        {o1, o2, false},
        {t, tp(t), true},
        {t, op(t), false},
        {tp(t), tp(t), true},
        {tp(tp(t)), t, true},
        {trapProxy(t, true), t, true},
        {trapProxy(t, false), t, false},
    };
    int i = 0;
    for (const Row& row : abstractRows) {
        require(abstractEquals(heap, row.lhs, row.rhs) == row.expected,
                "abstract row " + std::to_string(i));
        require(abstractEquals(heap, row.rhs, row.lhs) == row.expected,
                "abstract row (sym) " + std::to_string(i));
        ++i;
    }

    const Row strictRows[] = {
        {num(1), num(1), true},
        {num(1), str("1"), false},
        {str("1"), str("1"), true},
        {num(nan), num(nan), false},
        {num(+0.0), num(-0.0), true},
        {Value::null(), Value::null(), true},
        {Value::undefined(), Value::undefined(), true},
        {Value::null(), Value::undefined(), false},
        {Value::boolean(true), Value::boolean(true), true},
        {num(1), Value::boolean(true), false},
        {str(""), Value::boolean(false), false},
        {o1, o1, true},
        {o1, o2, false},
        {op(t), t, false},
        {tp(t), t, true},
        {tp(t), tp(t), true},
        {trapProxy(t, true), t, true},
        {trapProxy(t, false), t, false},
        {o1, Value::null(), false},
        {valueOf3, num(3), false},
        {tp(tp(t)), t, true},
        {o1, str("x"), false},
    };
    i = 0;
    for (const Row& row : strictRows) {
        require(strictEquals(heap, row.lhs, row.rhs) == row.expected,
                "strict row " + std::to_string(i));
        require(strictEquals(heap, row.rhs, row.lhs) == row.expected,
                "strict row (sym) " + std::to_string(i));
        ++i;
    }
}

void criterion7_equivalence() {
    std::mt19937_64 rng(0xEC00F);
    for (int trial = 0; trial < 1000; ++trial) {
        Heap heap;
        auto pop = makePopulation(heap, rng);
        const auto& vs = pop.values;
        for (size_t a = 0; a < vs.size(); ++a) {
            require(strictEquals(heap, vs[a], vs[a]), "reflexivity");
            for (size_t b = 0; b < vs.size(); ++b) {
                bool ab = strictEquals(heap, vs[a], vs[b]);
                require(ab == strictEquals(heap, vs[b], vs[a]), "symmetry");
                require(ab == abstractEquals(heap, vs[a], vs[b]),
                        "abstract/strict agreement on objects");
                for (size_t c = 0; c < vs.size(); ++c) {
                    if (ab && strictEquals(heap, vs[b], vs[c])) {
                        require(strictEquals(heap, vs[a], vs[c]), "transitivity");
                    }
                }
            }
        }
    }
}

void criterion8_stability() {
    std::mt19937_64 rng(0x57AB);
    for (int trial = 0; trial < 1000; ++trial) {
        Heap heap;
        auto pop = makePopulation(heap, rng);
        const auto& vs = pop.values;
        for (size_t a = 0; a < vs.size(); ++a) {
            for (size_t b = 0; b < vs.size(); ++b) {
                uint64_t before = heap.counters().trapInvocations;
                strictEquals(heap, vs[a], vs[b]);
                require(heap.counters().trapInvocations == before,
                        "trap counter moved during strictEquals");
            }
        }
    }
}

void criterion9_collectionsOracle() {
    std::mt19937_64 rng(0xC0117);
    for (int trial = 0; trial < 500; ++trial) {
        Heap heap;
        auto pop = makePopulation(heap, rng, 12);
        std::vector<Value> keyPool = pop.values;
        keyPool.push_back(num(1));
        keyPool.push_back(num(std::nan("")));
        keyPool.push_back(str("k"));

        IdentityMap map(heap);
        // Association-list oracle keyed by sameValue over identity objects.
        struct Entry {
            Value key, value;
        };
        std::vector<Entry> oracle;
        auto oracleFind = [&](const Value& key) -> Entry* {
            for (Entry& e : oracle) {
                if (sameValue(heap, getIdentityObject(heap, e.key),
                              getIdentityObject(heap, key))) {
                    return &e;
                }
            }
            return nullptr;
        };

        for (int step = 0; step < 200; ++step) {
            const Value& key = keyPool[rng() % keyPool.size()];
            switch (rng() % 5) {
            case 0:
            case 1: {
                Value v = num(static_cast<double>(rng() % 100));
                map.set(key, v);
                if (Entry* e = oracleFind(key)) {
                    e->value = v;
                } else {
                    oracle.push_back({key, v});
                }
                break;
            }
            case 2:
                require(map.has(key) == (oracleFind(key) != nullptr),
                        "oracle divergence: has");
                break;
            case 3: {
                Entry* e = oracleFind(key);
                Value expected = e ? e->value : Value::undefined();
                require(rawSameValue(map.get(key), expected),
                        "oracle divergence: get");
                break;
            }
            case 4: {
                bool inOracle = false;
                for (size_t k = 0; k < oracle.size(); ++k) {
                    if (sameValue(heap, getIdentityObject(heap, oracle[k].key),
                                  getIdentityObject(heap, key))) {
                        oracle.erase(oracle.begin() + static_cast<long>(k));
                        inOracle = true;
                        break;
                    }
                }
                require(map.erase(key) == inOracle, "oracle divergence: delete");
                break;
            }
            }
            require(map.size() == oracle.size(), "oracle divergence: size");
        }
        std::vector<Value> keys = map.keys();
        require(keys.size() == oracle.size(), "oracle divergence: keys size");
        for (size_t k = 0; k < keys.size(); ++k) {
            require(rawSameValue(keys[k], oracle[k].key),
                    "oracle divergence: key order");
        }
    }
}

void criterion10_membranePreservation() {
    std::mt19937_64 rng(0x3E3B);
    const char* edges[] = {"x", "y", "z"};
    for (bool transparent : {false, true}) {
        for (int trial = 0; trial < 150; ++trial) {
            Heap heap;
            std::vector<Value> nodes;
            size_t n = 3 + rng() % 13; // up to 15 nodes
            for (size_t k = 0; k < n; ++k) {
                nodes.push_back(Value::object(heap.makeNative()));
            }
            for (const Value& node : nodes) {
                for (const char* e : edges) {
                    if (rng() % 3 != 0) {
                        heap.dispatchSet(node, e, nodes[rng() % nodes.size()]);
                    }
                }
            }
            MembraneResult mr = makeMembrane(heap, nodes[0], transparent);
            for (int probe = 0; probe < 25; ++probe) {
                std::vector<std::string> p1, p2;
                for (size_t k = 0, len = 1 + rng() % 4; k < len; ++k) {
                    p1.push_back(edges[rng() % 3]);
                }
                for (size_t k = 0, len = 1 + rng() % 4; k < len; ++k) {
                    p2.push_back(edges[rng() % 3]);
                }
                auto follow = [&heap](Value start,
                                      const std::vector<std::string>& path) {
                    for (const std::string& e : path) {
                        if (!start.isObject()) {
                            return Value::undefined();
                        }
                        start = heap.dispatchGet(start, e);
                    }
                    return start;
                };
                Value t1 = follow(nodes[0], p1);
                Value t2 = follow(nodes[0], p2);
                if (!t1.isObject() || !t2.isObject()) {
                    continue;
                }
                Value w1 = follow(mr.wrapper, p1);
                Value w2 = follow(mr.wrapper, p2);
                if (strictEquals(heap, t1, t2)) {
                    require(strictEquals(heap, w1, w2),
                            "membrane identity preservation violated");
                }
            }
        }
    }
}

void criterion11_observerProjection() {
    std::mt19937_64 rng(0x0B5E);
    for (int trial = 0; trial < 500; ++trial) {
        Heap heap;
        Heap* h = &heap;
        Value inner = Value::object(heap.makeNative());
        Value target = Value::object(heap.makeNative(
            {{"obj", inner}, {"n", num(5)}, {"s", str("v")}}));

        Value trap;
        int flavor = static_cast<int>(rng() % 3);
        switch (flavor) {
        case 0: // forward
            trap = Value::object(heap.makeFunction(
                [h](std::span<const Value> args) {
                    return h->dispatchGet(args[0], args[1].asString());
                }));
            break;
        case 1: // wrap object results in a transparent proxy
            trap = Value::object(heap.makeFunction(
                [h](std::span<const Value> args) {
                    Value raw = h->dispatchGet(args[0], args[1].asString());
                    if (!raw.isObject()) {
                        return raw;
                    }
                    Value empty = Value::object(h->makeNative());
                    Value tok = Value::object(h->makeNative());
                    return Value::object(h->makeTransparentProxy(raw, empty, tok));
                }));
            break;
        default: // return an unrelated fresh object
            trap = Value::object(heap.makeFunction(
                [h](std::span<const Value>) {
                    return Value::object(h->makeNative());
                }));
            break;
        }
        Value observed = makeObserver(
            heap, target, Value::object(heap.makeNative({{"get", trap}})));

        for (const char* key : {"obj", "n", "s", "missing"}) {
            Value raw = heap.dispatchGet(target, key);
            Value r = heap.dispatchGet(observed, key);
            require(strictEquals(heap, r, raw), "observer projection violated");
            if (flavor == 2 && raw.isObject()) {
                require(r.asObject() == raw.asObject(),
                        "fresh-object result was not discarded");
            }
        }
    }
}

void criterion12_classificationOracle() {
    std::mt19937_64 rng(0xC1A55);
    Heap heap;
    std::vector<Value> pool;
    for (int i = 0; i < 8; ++i) {
        pool.push_back(Value::object(heap.makeNative()));
    }
    Membrane mA(heap, true);
    Membrane mB(heap, true);
    Membrane mC(heap, false);
    for (int i = 0; i < 8; ++i) {
        pool.push_back(mA.wrap(pool[rng() % 8]));
        pool.push_back(mB.wrap(pool[rng() % 8]));
        pool.push_back(mC.wrap(pool[rng() % 8]));
    }
    Value empty = Value::object(heap.makeNative());
    for (int i = 0; i < 6; ++i) {
        pool.push_back(Value::object(
            heap.makeProxy(pool[rng() % pool.size()], empty)));
        Value tok = Value::object(heap.makeNative());
        pool.push_back(Value::object(heap.makeTransparentProxy(
            pool[rng() % pool.size()], empty, tok)));
    }
    pool.push_back(num(1));
    pool.push_back(str("s"));
    pool.push_back(Value::null());

    auto brute = [&heap](const Value& x, const Value& y) {
        if (!x.isObject() || !y.isObject()) {
            return ComparisonClass::NonObject;
        }
        auto unwrap = [&heap](ObjectRef r) {
            while (heap.record(r).kind != ObjectKind::Native) {
                r = heap.record(r).target;
            }
            return r;
        };
        const ObjectRecord& rx = heap.record(x.asObject());
        const ObjectRecord& ry = heap.record(y.asObject());
        bool xp = rx.kind != ObjectKind::Native;
        bool yp = ry.kind != ObjectKind::Native;
        if (!xp && !yp) {
            return ComparisonClass::ObjectObjectNoProxy;
        }
        bool same = unwrap(x.asObject()) == unwrap(y.asObject());
        if (xp && yp && rx.membraneId && ry.membraneId &&
            *rx.membraneId == *ry.membraneId) {
            return same ? ComparisonClass::TypeIIb : ComparisonClass::TypeIIa;
        }
        return same ? ComparisonClass::TypeIb : ComparisonClass::TypeIa;
    };

    for (int i = 0; i < 10000; ++i) {
        const Value& x = pool[rng() % pool.size()];
        const Value& y = pool[rng() % pool.size()];
        require(classifyComparison(heap, x, y) == brute(x, y),
                "classifier disagrees with brute force at pair " +
                    std::to_string(i));
    }

    // Flip soundness over recorded events on transparent membranes.
    ComparisonRecorder rec(heap, /*retainEvents=*/true);
    std::vector<Value> transparentPool;
    for (int i = 0; i < 8; ++i) {
        transparentPool.push_back(pool[static_cast<size_t>(i)]);
        transparentPool.push_back(mA.wrap(pool[static_cast<size_t>(i)]));
        transparentPool.push_back(mB.wrap(pool[static_cast<size_t>(i)]));
    }
    for (int i = 0; i < 5000; ++i) {
        rec.record({1, 1}, CompareOp::StrictEq,
                   transparentPool[rng() % transparentPool.size()],
                   transparentPool[rng() % transparentPool.size()]);
    }
    int checked = 0;
    for (const ComparisonEvent& e : rec.events()) {
        if (e.cls != ComparisonClass::TypeIb && e.cls != ComparisonClass::TypeIIb) {
            continue;
        }
        // Skip events whose operands are not fully transparent (the pool
        // contains natives wrapped by opaque membrane C as targets).
        Value lhsId = getIdentityObject(heap, e.lhs);
        Value rhsId = getIdentityObject(heap, e.rhs);
        ObjectRef lhsBase = heap.baseTarget(e.lhs.asObject());
        ObjectRef rhsBase = heap.baseTarget(e.rhs.asObject());
        if (lhsId.asObject() != lhsBase || rhsId.asObject() != rhsBase) {
            continue;
        }
        require(strictEquals(heap, e.lhs, e.rhs),
                "flip soundness: transparent Ib/IIb must compare true");
        if (!rawSameValue(e.lhs, e.rhs)) {
            ++checked;
        } else {
            require(e.cls == ComparisonClass::TypeIIb,
                    "flip soundness: reflexive event must be Type-IIb");
        }
    }
    require(checked > 0, "flip soundness: no flippable events were recorded");
}

void criterion13_sweep() {
    const char* fixtures[] = {"sweep_accounts.tps", "sweep_graph.tps",
                              "sweep_registry.tps", "sweep_primitives.tps",
                              "sweep_pipeline.tps"};
    bool sawTypeIb = false;
    for (const char* fixture : fixtures) {
        std::string source = readFixture(fixture);
        auto variants = enumerateVariants(source);
        require(variants.size() >= 2, std::string(fixture) + ": no variants");
        const Outcome& baseline = variants[0].outcome;
        require(baseline.ok(), std::string(fixture) + ": baseline failed");
        for (size_t i = 1; i < variants.size(); ++i) {
            const Outcome& v = variants[i].outcome;
            require(v.ok(), std::string(fixture) + ": variant failed");
            require(v.output == baseline.output,
                    std::string(fixture) + ": variant '" +
                        *variants[i].function + "' output diverged");
            if (v.report && v.report->totals.typeIb > 0) {
                sawTypeIb = true;
            }
        }
    }
    require(sawTypeIb, "no variant produced a Type-Ib comparison");
}

void criterion14_fastPath() {
    // Library level: random comparisons with a non-object operand.
    std::mt19937_64 rng(0xFA57);
    for (int trial = 0; trial < 200; ++trial) {
        Heap heap;
        auto pop = makePopulation(heap, rng);
        std::vector<Value> primitives = {num(1), str("x"), Value::boolean(true),
                                         Value::null(), Value::undefined(),
                                         num(std::nan(""))};
        for (const Value& obj : pop.values) {
            for (const Value& p : primitives) {
                uint64_t before = heap.counters().identityLoopIterations;
                strictEquals(heap, obj, p);
                strictEquals(heap, p, obj);
                require(heap.counters().identityLoopIterations == before,
                        "identity loop ran for a non-object comparison");
            }
        }
    }

    // Script level: a run whose comparisons all have a primitive operand
    // never enters the resolution loop.
    const char* source =
        "var o = { x: 1 };\n"
        "var p = proxy(o, {});\n"
        "var tok = {};\n"
        "var tp = transparentProxy(o, {}, tok);\n"
        "var n = 0;\n"
        "while (n < 50) {\n"
        "  print(p === null);\n"
        "  print(tp === 1);\n"
        "  print(n == \"7\");\n"
        "  print(o === undefined);\n"
        "  n = n + 1;\n"
        "}\n";
    ast::Program program = parseProgram(source);
    Interpreter interp;
    Outcome out = interp.runProgram(program);
    require(out.ok(), "fast-path script failed");
    require(interp.heap().counters().identityLoopIterations == 0,
            "fast-path script entered the identity loop");
}

struct Criterion {
    int id;
    const char* title;
    std::function<void()> body;
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {1, "opaque proxy prints false, transparent prints true",
         criterion1_listing1},
        {2, "contract run ends at 90 transparent / 130 opaque",
         criterion2_listing2},
        {3, "token listing prints true,true,false,false,true,true",
         criterion3_tokens},
        {4, "realm listing reveals only through realm.equals",
         criterion4_realm},
        {5, "map sequence keeps [target, proxy2] with values [B, C]",
         criterion5_mapSequence},
        {6, "abstract and strict equality conformance tables",
         criterion6_conformanceTables},
        {7, "strict equality is an equivalence relation (1000 populations)",
         criterion7_equivalence},
        {8, "strict equality never moves the get/set/apply trap counter",
         criterion8_stability},
        {9, "identity map matches the association-list oracle (500 runs)",
         criterion9_collectionsOracle},
        {10, "membranes preserve identity on random graphs, both kinds",
         criterion10_membranePreservation},
        {11, "observer reads always project to the raw value",
         criterion11_observerProjection},
        {12, "classification matches brute force; Ib/IIb flips are sound",
         criterion12_classificationOracle},
        {13, "transparent sweep is output-identical; some variant shows Ib",
         criterion13_sweep},
        {14, "non-object comparisons never enter the identity loop",
         criterion14_fastPath},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        try {
            c.body();
            std::printf("[PASS] %2d. %s\n", c.id, c.title);
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] %2d. %s — %s\n", c.id, c.title, e.what());
        }
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 14 criteria passed\n");
    return 0;
}
