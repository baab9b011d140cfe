#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "population.hpp"
#include "tproxy/equality.hpp"
#include "tproxy/instrument.hpp"
#include "tproxy/interpreter.hpp"
#include "tproxy/parser.hpp"
#include "tproxy/stdlib.hpp"

using namespace tproxy;

namespace {

std::string readFile(const std::string& dir, const std::string& name) {
    std::ifstream in(dir + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string readFixture(const std::string& name) {
    return readFile(TPROXY_FIXTURE_DIR, name);
}

std::string readGolden(const std::string& name) {
    return readFile(TPROXY_GOLDEN_DIR, name);
}

/// Independent classifier: full unwrap by walking records plus the
/// membrane-tag rule, written against the taxonomy definition.
ComparisonClass bruteClassify(const Heap& heap, const Value& x, const Value& y) {
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
    bool xIsProxy = rx.kind != ObjectKind::Native;
    bool yIsProxy = ry.kind != ObjectKind::Native;
    if (!xIsProxy && !yIsProxy) {
        return ComparisonClass::ObjectObjectNoProxy;
    }
    bool same = unwrap(x.asObject()) == unwrap(y.asObject());
    bool sameMembrane = xIsProxy && yIsProxy && rx.membraneId.has_value() &&
                        ry.membraneId.has_value() &&
                        *rx.membraneId == *ry.membraneId;
    if (sameMembrane) {
        return same ? ComparisonClass::TypeIIb : ComparisonClass::TypeIIa;
    }
    return same ? ComparisonClass::TypeIb : ComparisonClass::TypeIa;
}

} // namespace

TEST_CASE("classification of the published shapes") {
    Heap heap;
    Value t = Value::object(heap.makeNative());
    Value t2 = Value::object(heap.makeNative());
    Value empty = Value::object(heap.makeNative());

    CHECK(classifyComparison(heap, Value::number(1), t) ==
          ComparisonClass::NonObject);
    CHECK(classifyComparison(heap, Value::number(1), Value::string("1")) ==
          ComparisonClass::NonObject);
    CHECK(classifyComparison(heap, t, t2) ==
          ComparisonClass::ObjectObjectNoProxy);

    Membrane m1(heap, true);
    Membrane m2(heap, true);
    Value p1t = m1.wrap(t);
    Value p1t2 = m1.wrap(t2);
    Value p2t = m2.wrap(t);

    // membrane proxy vs its bare target
    CHECK(classifyComparison(heap, p1t, t) == ComparisonClass::TypeIb);
    // two proxies of distinct targets, one membrane
    CHECK(classifyComparison(heap, p1t, p1t2) == ComparisonClass::TypeIIa);
    // same target through two membranes counts as Type-I
    CHECK(classifyComparison(heap, p1t, p2t) == ComparisonClass::TypeIb);
    // same membrane, same target (the reflexive case)
    CHECK(classifyComparison(heap, p1t, p1t) == ComparisonClass::TypeIIb);
    // loose proxies (no membrane) classify under Type-I
    Value loose = Value::object(heap.makeProxy(t, empty));
    CHECK(classifyComparison(heap, loose, t) == ComparisonClass::TypeIb);
    CHECK(classifyComparison(heap, loose, t2) == ComparisonClass::TypeIa);
    CHECK(classifyComparison(heap, loose, p1t) == ComparisonClass::TypeIb);
}

TEST_CASE("classification never raises, even for revoked proxies") {
    Heap heap;
    Value t = Value::object(heap.makeNative());
    Value empty = Value::object(heap.makeNative());
    Revocable rev = heap.makeRevocable(t, empty, false);
    heap.callValue(Value::object(rev.revoke), {});
    Value revoked = Value::object(rev.proxy);

    CHECK(classifyComparison(heap, revoked, t) == ComparisonClass::TypeIb);
    // Equality on the same operands would raise; classification must not.
    CHECK_THROWS_AS(strictEquals(heap, revoked, t), ScriptError);
}

TEST_CASE("classifier agrees with the brute-force oracle on random pairs") {
    std::mt19937_64 rng(616);
    Heap heap;

    std::vector<Value> pool;
    for (int i = 0; i < 6; ++i) {
        pool.push_back(Value::object(heap.makeNative()));
    }
    Membrane mA(heap, true);
    Membrane mB(heap, false);
    for (int i = 0; i < 6; ++i) {
        pool.push_back(mA.wrap(pool[rng() % 6]));
        pool.push_back(mB.wrap(pool[rng() % 6]));
    }
    Value empty = Value::object(heap.makeNative());
    for (int i = 0; i < 4; ++i) {
        pool.push_back(Value::object(heap.makeProxy(pool[rng() % pool.size()], empty)));
        Value tok = Value::object(heap.makeNative());
        pool.push_back(Value::object(
            heap.makeTransparentProxy(pool[rng() % pool.size()], empty, tok)));
    }
    pool.push_back(Value::number(1));
    pool.push_back(Value::string("s"));
    pool.push_back(Value::undefined());

    for (int i = 0; i < 20000; ++i) {
        const Value& x = pool[rng() % pool.size()];
        const Value& y = pool[rng() % pool.size()];
        CHECK(classifyComparison(heap, x, y) == bruteClassify(heap, x, y));
    }
}

TEST_CASE("classification does not touch the identity-resolution counter") {
    Heap heap;
    Value t = Value::object(heap.makeNative());
    Membrane m(heap, true);
    Value p = m.wrap(t);
    uint64_t before = heap.counters().identityLoopIterations;
    classifyComparison(heap, p, t);
    classifyComparison(heap, p, p);
    CHECK(heap.counters().identityLoopIterations == before);
}

TEST_CASE("recorder counts per class, per operator, per site") {
    Heap heap;
    ComparisonRecorder rec(heap);
    Value t = Value::object(heap.makeNative());
    Membrane m(heap, true);
    Value p = m.wrap(t);

    rec.record({1, 1}, CompareOp::StrictEq, p, t);
    rec.record({1, 1}, CompareOp::StrictEq, p, t);
    rec.record({1, 1}, CompareOp::StrictEq, p, t);
    rec.record({2, 5}, CompareOp::Eq, Value::number(1), Value::number(2));
    rec.record({3, 9}, CompareOp::Ne, t, t);

    const ComparisonReport& report = rec.report();
    CHECK(report.totalComparisons() == 5);
    CHECK(report.totals.typeIb == 3);
    CHECK(report.totals.nonObject == 1);
    CHECK(report.totals.objectObjectNoProxy == 1);
    CHECK(report.byOperator[size_t(CompareOp::StrictEq)].typeIb == 3);
    CHECK(report.byOperator[size_t(CompareOp::Eq)].nonObject == 1);
    CHECK(report.sites.at({1, 1}).typeIb == 3);
    CHECK(report.flippedSites() ==
          std::vector<std::pair<int, int>>{{1, 1}});

    // Partition: class totals sum to the total count.
    const ClassCounts& c = report.totals;
    CHECK(c.nonObject + c.objectObjectNoProxy + c.proxyTotal() ==
          report.totalComparisons());
}

TEST_CASE("the report schema holds a Table-2-sized row") {
    ComparisonReport report;
    report.totals.typeIa = 29228;
    report.totals.typeIb = 1411;
    report.totals.typeIIa = 33789;
    report.totals.typeIIb = 79698;
    CHECK(report.totals.proxyTotal() == 144126);

    std::string table = emitReportTable(report);
    CHECK(table.find("144126") != std::string::npos);
    CHECK(table.find("29228") != std::string::npos);
    CHECK(table.find("79698") != std::string::npos);
}

TEST_CASE("an empty run emits the all-zero report") {
    ComparisonReport report;
    std::string json = emitReportJson(report);
    CHECK(json.find("\"totalComparisons\": 0") != std::string::npos);
    CHECK(json.find("\"sites\": []") != std::string::npos);
}

TEST_CASE("report json matches the golden fixture for the contract run") {
    ast::Program program =
        parseProgram(readFixture("listing_contract_transparent.tps"));
    Interpreter interp;
    interp.enableInstrumentation();
    Outcome out = interp.runProgram(program);
    REQUIRE(out.ok());
    REQUIRE(out.report.has_value());

    // Exactly one Type-Ib comparison: the second call's acc1 !== acc2.
    CHECK(out.report->totals.typeIb == 1);
    CHECK(out.report->totals.objectObjectNoProxy == 1);

    CHECK(emitReportJson(*out.report) == readGolden("contract_report.json"));
    CHECK(emitReportTable(*out.report) == readGolden("contract_report.table"));
}

TEST_CASE("instrumentation does not change program output") {
    for (const char* fixture :
         {"listing_contract_transparent.tps", "listing_tokens.tps",
          "sweep_graph.tps", "sweep_pipeline.tps"}) {
        std::string source = readFixture(fixture);
        ast::Program p1 = parseProgram(source);
        Interpreter plain;
        Outcome a = plain.runProgram(p1);

        ast::Program p2 = parseProgram(source);
        Interpreter instrumented;
        instrumented.enableInstrumentation();
        Outcome b = instrumented.runProgram(p2);

        CHECK(a.output == b.output);
        CHECK(a.ok() == b.ok());
        CHECK_FALSE(a.report.has_value());
        CHECK(b.report.has_value());
    }
}

TEST_CASE("flip soundness on recorded Ib/IIb events") {
    std::mt19937_64 rng(88);
    Heap heap;
    ComparisonRecorder rec(heap, /*retainEvents=*/true);

    std::vector<Value> bases;
    for (int i = 0; i < 5; ++i) {
        bases.push_back(Value::object(heap.makeNative()));
    }
    Membrane membrane(heap, true);
    std::vector<Value> pool = bases;
    for (const Value& b : bases) {
        pool.push_back(membrane.wrap(b));
    }
    for (int i = 0; i < 2000; ++i) {
        rec.record({1, 1}, CompareOp::StrictEq, pool[rng() % pool.size()],
                   pool[rng() % pool.size()]);
    }

    int flippable = 0;
    for (const ComparisonEvent& e : rec.events()) {
        if (e.cls != ComparisonClass::TypeIb && e.cls != ComparisonClass::TypeIIb) {
            continue;
        }
        // All proxies here are transparent, so the comparison holds...
        CHECK(strictEquals(heap, e.lhs, e.rhs));
        // ...and with identity resolution disabled it is raw reference
        // equality, which fails whenever the operands are distinct
        // references (an identity-preserving membrane can make a IIb
        // comparison reflexive; those stay true under opacity too).
        if (!rawSameValue(e.lhs, e.rhs)) {
            ++flippable;
        }
        if (e.cls == ComparisonClass::TypeIb) {
            CHECK_FALSE(rawSameValue(e.lhs, e.rhs));
        }
    }
    CHECK(flippable > 0);
}
