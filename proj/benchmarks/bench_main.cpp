#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "tproxy/collections.hpp"
#include "tproxy/equality.hpp"
#include "tproxy/instrument.hpp"
#include "tproxy/parser.hpp"
#include "tproxy/runner.hpp"
#include "tproxy/stdlib.hpp"

namespace {

using namespace tproxy;

void BM_StrictEqualsNonObject(benchmark::State& state) {
    Heap heap;
    Value a = Value::number(1);
    Value b = Value::string("1");
    for (auto _ : state) {
        benchmark::DoNotOptimize(strictEquals(heap, a, b));
    }
}
BENCHMARK(BM_StrictEqualsNonObject);

void BM_StrictEqualsNativePair(benchmark::State& state) {
    Heap heap;
    Value a = Value::object(heap.makeNative());
    Value b = Value::object(heap.makeNative());
    for (auto _ : state) {
        benchmark::DoNotOptimize(strictEquals(heap, a, b));
    }
}
BENCHMARK(BM_StrictEqualsNativePair);

void BM_StrictEqualsTransparentChain(benchmark::State& state) {
    Heap heap;
    Value empty = Value::object(heap.makeNative());
    Value token = Value::object(heap.makeNative());
    Value target = Value::object(heap.makeNative());
    Value chain = target;
    for (int64_t i = 0; i < state.range(0); ++i) {
        chain = Value::object(heap.makeTransparentProxy(chain, empty, token));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(strictEquals(heap, chain, target));
    }
}
BENCHMARK(BM_StrictEqualsTransparentChain)->Arg(1)->Arg(4)->Arg(8);

void BM_StrictEqualsTrapProxy(benchmark::State& state) {
    Heap heap;
    Value target = Value::object(heap.makeNative());
    Value trap = Value::object(heap.makeFunction(
        [](std::span<const Value>) { return Value::boolean(true); }));
    Value handler = Value::object(heap.makeNative({{"isTransparent", trap}}));
    Value proxy = Value::object(heap.makeProxy(target, handler));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strictEquals(heap, proxy, target));
    }
}
BENCHMARK(BM_StrictEqualsTrapProxy);

void BM_AbstractEqualsCoercion(benchmark::State& state) {
    Heap heap;
    Value a = Value::string("123.5");
    Value b = Value::number(123.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(abstractEquals(heap, a, b));
    }
}
BENCHMARK(BM_AbstractEqualsCoercion);

void BM_IdentityMapSetGet(benchmark::State& state) {
    Heap heap;
    Value empty = Value::object(heap.makeNative());
    Value token = Value::object(heap.makeNative());
    std::vector<Value> keys;
    for (int i = 0; i < 16; ++i) {
        Value base = Value::object(heap.makeNative());
        keys.push_back(base);
        keys.push_back(Value::object(heap.makeTransparentProxy(base, empty, token)));
    }
    for (auto _ : state) {
        IdentityMap map(heap);
        for (const Value& k : keys) {
            map.set(k, Value::number(1));
        }
        for (const Value& k : keys) {
            benchmark::DoNotOptimize(map.get(k));
        }
    }
}
BENCHMARK(BM_IdentityMapSetGet);

void BM_ClassifyComparison(benchmark::State& state) {
    Heap heap;
    Value target = Value::object(heap.makeNative());
    Membrane membrane(heap, true);
    Value proxy = membrane.wrap(target);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classifyComparison(heap, proxy, target));
    }
}
BENCHMARK(BM_ClassifyComparison);

void BM_MembraneCachedWrap(benchmark::State& state) {
    Heap heap;
    Value target = Value::object(heap.makeNative());
    Membrane membrane(heap, true);
    benchmark::DoNotOptimize(membrane.wrap(target));
    for (auto _ : state) {
        benchmark::DoNotOptimize(membrane.wrap(target));
    }
}
BENCHMARK(BM_MembraneCachedWrap);

const char* kContractScript = R"(
function addBonus(acc1, acc2, amount) {
  acc1.balance = acc1.balance + amount;
  if (acc1 !== acc2) {
    acc2.balance = acc2.balance + amount;
  }
}
var account = { balance: 10 };
var restricted = assertContract(account, function(x) { return x >= 0; });
addBonus(account, account, 40);
addBonus(restricted, account, 40);
)";

void BM_InterpretContractScript(benchmark::State& state) {
    std::string source(kContractScript);
    for (auto _ : state) {
        benchmark::DoNotOptimize(runSource(source, RunConfig{}));
    }
}
BENCHMARK(BM_InterpretContractScript);

void BM_ParseContractScript(benchmark::State& state) {
    std::string source(kContractScript);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parseProgram(source));
    }
}
BENCHMARK(BM_ParseContractScript);

} // namespace

BENCHMARK_MAIN();
