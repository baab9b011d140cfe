#ifndef TPROXY_INSTRUMENT_HPP
#define TPROXY_INSTRUMENT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tproxy/ast.hpp"
#include "tproxy/error.hpp"
#include "tproxy/heap.hpp"
#include "tproxy/value.hpp"

namespace tproxy {

/// The comparison taxonomy. Type-I covers proxy-vs-native and
/// cross-membrane proxy pairs; Type-II covers proxy pairs from one
/// membrane. The a/b split is by base target: b means the base targets
/// coincide (the comparisons opacity can flip).
enum class ComparisonClass : uint8_t {
    NonObject,
    ObjectObjectNoProxy,
    TypeIa,
    TypeIb,
    TypeIIa,
    TypeIIb,
};

const char* comparisonClassName(ComparisonClass c);

/// Classifies one comparison. Never raises: base targets are read from
/// retained target slots without consulting handlers, so revoked proxies
/// classify normally and no counter or trap is disturbed.
ComparisonClass classifyComparison(const Heap& heap, const Value& x, const Value& y);

enum class CompareOp : uint8_t { Eq, Ne, StrictEq, StrictNe };

CompareOp compareOpOf(ast::BinaryOp op);
const char* compareOpName(CompareOp op);

struct ClassCounts {
    uint64_t nonObject = 0;
    uint64_t objectObjectNoProxy = 0;
    uint64_t typeIa = 0;
    uint64_t typeIb = 0;
    uint64_t typeIIa = 0;
    uint64_t typeIIb = 0;

    void bump(ComparisonClass c);
    uint64_t total() const;
    uint64_t proxyTotal() const { return typeIa + typeIb + typeIIa + typeIIb; }
};

struct SiteCounts {
    uint64_t typeIa = 0;
    uint64_t typeIb = 0;
    uint64_t typeIIa = 0;
    uint64_t typeIIb = 0;

    uint64_t proxyTotal() const { return typeIa + typeIb + typeIIa + typeIIb; }
};

/// Accumulated counts for one run: totals, per-operator and per-site
/// breakdowns. Sites are keyed by source position.
struct ComparisonReport {
    ClassCounts totals;
    std::array<ClassCounts, 4> byOperator; // indexed by CompareOp
    std::map<std::pair<int, int>, SiteCounts> sites;

    uint64_t totalComparisons() const { return totals.total(); }
    /// Sites that recorded at least one Type-Ib comparison — the ones an
    /// opaque wrapper would flip.
    std::vector<std::pair<int, int>> flippedSites() const;
};

/// One recorded comparison, retained only when event retention is on.
struct ComparisonEvent {
    Position site;
    CompareOp op;
    Value lhs;
    Value rhs;
    ComparisonClass cls;
};

class ComparisonRecorder {
public:
    explicit ComparisonRecorder(Heap& heap, bool retainEvents = false)
        : heap_(&heap), retainEvents_(retainEvents) {}

    /// Classifies and counts; the comparison's evaluation is unaffected.
    void record(Position site, CompareOp op, const Value& x, const Value& y);

    const ComparisonReport& report() const { return report_; }
    const std::vector<ComparisonEvent>& events() const { return events_; }

private:
    Heap* heap_;
    bool retainEvents_;
    ComparisonReport report_;
    std::vector<ComparisonEvent> events_;
};

/// Deterministic JSON rendering of a report; keys follow the documented
/// schema order and sites with no proxy-involved comparisons are
/// omitted.
std::string emitReportJson(const ComparisonReport& report);

/// Aligned-column rendering: Total | Type-Ia | Type-Ib | Type-IIa |
/// Type-IIb, one row for the whole run and one per site. The Total
/// column counts proxy-involved comparisons.
std::string emitReportTable(const ComparisonReport& report);

} // namespace tproxy

#endif
