#include "tproxy/instrument.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tproxy {

const char* comparisonClassName(ComparisonClass c) {
    switch (c) {
    case ComparisonClass::NonObject: return "nonObject";
    case ComparisonClass::ObjectObjectNoProxy: return "objectObjectNoProxy";
    case ComparisonClass::TypeIa: return "typeIa";
    case ComparisonClass::TypeIb: return "typeIb";
    case ComparisonClass::TypeIIa: return "typeIIa";
    case ComparisonClass::TypeIIb: return "typeIIb";
    }
    return "?";
}

ComparisonClass classifyComparison(const Heap& heap, const Value& x, const Value& y) {
    if (!x.isObject() || !y.isObject()) {
        return ComparisonClass::NonObject;
    }
    ObjectRef xr = x.asObject();
    ObjectRef yr = y.asObject();
    bool xProxy = heap.isProxy(xr);
    bool yProxy = heap.isProxy(yr);
    if (!xProxy && !yProxy) {
        return ComparisonClass::ObjectObjectNoProxy;
    }
    bool sameBase = heap.baseTarget(xr) == heap.baseTarget(yr);
    if (xProxy && yProxy) {
        const std::optional<int>& mx = heap.record(xr).membraneId;
        const std::optional<int>& my = heap.record(yr).membraneId;
        if (mx && my && *mx == *my) {
            return sameBase ? ComparisonClass::TypeIIb : ComparisonClass::TypeIIa;
        }
    }
    return sameBase ? ComparisonClass::TypeIb : ComparisonClass::TypeIa;
}

CompareOp compareOpOf(ast::BinaryOp op) {
    switch (op) {
    case ast::BinaryOp::Eq: return CompareOp::Eq;
    case ast::BinaryOp::Ne: return CompareOp::Ne;
    case ast::BinaryOp::StrictEq: return CompareOp::StrictEq;
    case ast::BinaryOp::StrictNe: return CompareOp::StrictNe;
    default:
        throwTypeError("not a comparison operator");
    }
}

const char* compareOpName(CompareOp op) {
    switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::StrictEq: return "===";
    case CompareOp::StrictNe: return "!==";
    }
    return "?";
}

void ClassCounts::bump(ComparisonClass c) {
    switch (c) {
    case ComparisonClass::NonObject: ++nonObject; break;
    case ComparisonClass::ObjectObjectNoProxy: ++objectObjectNoProxy; break;
    case ComparisonClass::TypeIa: ++typeIa; break;
    case ComparisonClass::TypeIb: ++typeIb; break;
    case ComparisonClass::TypeIIa: ++typeIIa; break;
    case ComparisonClass::TypeIIb: ++typeIIb; break;
    }
}

uint64_t ClassCounts::total() const {
    return nonObject + objectObjectNoProxy + proxyTotal();
}

std::vector<std::pair<int, int>> ComparisonReport::flippedSites() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [site, counts] : sites) {
        if (counts.typeIb > 0) {
            out.push_back(site);
        }
    }
    return out;
}

void ComparisonRecorder::record(Position site, CompareOp op, const Value& x,
                                const Value& y) {
    ComparisonClass cls = classifyComparison(*heap_, x, y);
    report_.totals.bump(cls);
    report_.byOperator[static_cast<size_t>(op)].bump(cls);
    SiteCounts& sc = report_.sites[{site.line, site.col}];
    switch (cls) {
    case ComparisonClass::TypeIa: ++sc.typeIa; break;
    case ComparisonClass::TypeIb: ++sc.typeIb; break;
    case ComparisonClass::TypeIIa: ++sc.typeIIa; break;
    case ComparisonClass::TypeIIb: ++sc.typeIIb; break;
    default:
        break;
    }
    if (retainEvents_) {
        events_.push_back(ComparisonEvent{site, op, x, y, cls});
    }
}

namespace {

nlohmann::ordered_json classCountsJson(const ClassCounts& c) {
    nlohmann::ordered_json j;
    j["nonObject"] = c.nonObject;
    j["objectObjectNoProxy"] = c.objectObjectNoProxy;
    j["typeIa"] = c.typeIa;
    j["typeIb"] = c.typeIb;
    j["typeIIa"] = c.typeIIa;
    j["typeIIb"] = c.typeIIb;
    return j;
}

} // namespace

std::string emitReportJson(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["totalComparisons"] = report.totalComparisons();
    j["nonObject"] = report.totals.nonObject;
    j["objectObjectNoProxy"] = report.totals.objectObjectNoProxy;
    j["typeIa"] = report.totals.typeIa;
    j["typeIb"] = report.totals.typeIb;
    j["typeIIa"] = report.totals.typeIIa;
    j["typeIIb"] = report.totals.typeIIb;

    nlohmann::ordered_json ops;
    static const CompareOp order[] = {CompareOp::Eq, CompareOp::Ne,
                                      CompareOp::StrictEq, CompareOp::StrictNe};
    for (CompareOp op : order) {
        ops[compareOpName(op)] =
            classCountsJson(report.byOperator[static_cast<size_t>(op)]);
    }
    j["byOperator"] = std::move(ops);

    nlohmann::ordered_json sites = nlohmann::ordered_json::array();
    for (const auto& [site, counts] : report.sites) {
        if (counts.proxyTotal() == 0) {
            continue;
        }
        nlohmann::ordered_json s;
        s["line"] = site.first;
        s["col"] = site.second;
        s["typeIa"] = counts.typeIa;
        s["typeIb"] = counts.typeIb;
        s["typeIIa"] = counts.typeIIa;
        s["typeIIb"] = counts.typeIIb;
        sites.push_back(std::move(s));
    }
    j["sites"] = std::move(sites);
    return j.dump(2);
}

std::string emitReportTable(const ComparisonReport& report) {
    struct Row {
        std::string label;
        uint64_t total, ia, ib, iia, iib;
    };
    std::vector<Row> rows;
    rows.push_back(Row{"<run>", report.totals.proxyTotal(), report.totals.typeIa,
                       report.totals.typeIb, report.totals.typeIIa,
                       report.totals.typeIIb});
    for (const auto& [site, counts] : report.sites) {
        if (counts.proxyTotal() == 0) {
            continue;
        }
        rows.push_back(Row{std::to_string(site.first) + ":" +
                               std::to_string(site.second),
                           counts.proxyTotal(), counts.typeIa, counts.typeIb,
                           counts.typeIIa, counts.typeIIb});
    }

    size_t labelWidth = std::string("Site").size();
    for (const Row& r : rows) {
        labelWidth = std::max(labelWidth, r.label.size());
    }

    std::ostringstream out;
    std::string line;
    auto cell = [&](const std::string& s, size_t w) {
        line += s;
        if (s.size() < w + 2) {
            line.append(w + 2 - s.size(), ' ');
        }
    };
    auto flush = [&] {
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out << line << '\n';
        line.clear();
    };
    cell("Site", labelWidth);
    for (const char* h : {"Total", "Type-Ia", "Type-Ib", "Type-IIa", "Type-IIb"}) {
        cell(h, 9);
    }
    flush();
    for (const Row& r : rows) {
        cell(r.label, labelWidth);
        for (uint64_t v : {r.total, r.ia, r.ib, r.iia, r.iib}) {
            cell(std::to_string(v), 9);
        }
        flush();
    }
    return out.str();
}

} // namespace tproxy
