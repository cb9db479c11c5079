#include "archlab/archgraph.hpp"

#include "archlab/error.hpp"

#include <algorithm>
#include <map>

namespace archlab {

std::string_view violation_code(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::ConditionOne: return "CONDITION1";
    case ViolationKind::ConditionTwo: return "CONDITION2";
    case ViolationKind::ConditionThree: return "CONDITION3";
    case ViolationKind::ConditionFour: return "CONDITION4";
    case ViolationKind::EmptyKind: return "EMPTY_KIND";
    }
    return "UNKNOWN";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

namespace {

std::string describe_edge(const CyclicGraph& graph, std::size_t e) {
    const EdgeSpec spec = graph.edge_spec(e);
    return spec.from.to_string() + " -> " + spec.to.to_string() + " : " + std::to_string(spec.sigma);
}

void check_kinds(const CyclicGraph& graph, ValidationReport& report) {
    for (NodeKind kind : {NodeKind::Input, NodeKind::Hidden, NodeKind::Output}) {
        const bool present = std::any_of(graph.nodes().begin(), graph.nodes().end(),
                                         [kind](const Node& n) { return n.kind == kind; });
        if (!present) {
            report.violations.push_back(
                Violation{ViolationKind::EmptyKind, "no " + std::string(to_string(kind)) + " nodes", {}, {}, {}});
        }
    }
}

void check_periodicity(const CyclicGraph& graph, ValidationReport& report) {
    const std::int64_t m = graph.period();
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        const Edge& edge = graph.edge(e);
        const std::int64_t offset =
            edge.sigma - (graph.node(edge.to).id.time_index - graph.node(edge.from).id.time_index);
        if (offset % m != 0) {
            report.violations.push_back(Violation{
                ViolationKind::ConditionOne,
                "edge " + describe_edge(graph, e) + ": sigma minus time-index difference is not a multiple of period " +
                    std::to_string(m),
                {},
                {e},
                {}});
        }
    }
}

void check_ports(const CyclicGraph& graph, ValidationReport& report) {
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        const Node& node = graph.node(v);
        const bool has_in = !graph.in_edges(v).empty();
        const bool has_out = !graph.out_edges(v).empty();
        std::string problem;
        std::vector<std::size_t> edges;
        switch (node.kind) {
        case NodeKind::Input:
            if (has_in) {
                problem = "input node has incoming edges";
                edges.assign(graph.in_edges(v).begin(), graph.in_edges(v).end());
            }
            break;
        case NodeKind::Output:
            if (has_out) {
                problem = "output node has outgoing edges";
                edges.assign(graph.out_edges(v).begin(), graph.out_edges(v).end());
            }
            break;
        case NodeKind::Hidden:
            if (!has_in || !has_out) problem = has_in ? "hidden node has no outgoing edge" : "hidden node has no incoming edge";
            break;
        }
        if (!problem.empty()) {
            report.violations.push_back(Violation{ViolationKind::ConditionFour, node.id.to_string() + ": " + problem,
                                                  {v}, std::move(edges), {}});
        }
    }
}

// All closed-walk sigma-sums are nonzero iff inside every strongly connected
// component the simple cycles share one strict sign.
void check_cycles(const CyclicGraph& graph, const EnumerationLimits& limits, ValidationReport& report) {
    const auto cycles = enumerate_simple_cycles(graph, limits);
    if (cycles.empty()) {
        report.violations.push_back(Violation{ViolationKind::ConditionTwo, "graph has no directed cycle", {}, {}, {}});
        return;
    }
    for (const SimpleCycle& c : cycles) {
        if (c.sigma_sum == 0) {
            report.violations.push_back(
                Violation{ViolationKind::ConditionThree, "simple cycle has zero sigma-sum", c.nodes(graph), c.edges, {c}});
        }
    }
    const auto component = component_ids(graph);
    std::map<std::size_t, std::pair<const SimpleCycle*, const SimpleCycle*>> by_component; // first positive, negative
    for (const SimpleCycle& c : cycles) {
        auto& slot = by_component[component[graph.edge(c.edges.front()).from]];
        if (c.sigma_sum > 0 && slot.first == nullptr) slot.first = &c;
        if (c.sigma_sum < 0 && slot.second == nullptr) slot.second = &c;
    }
    for (const auto& [id, pair] : by_component) {
        if (pair.first != nullptr && pair.second != nullptr) {
            std::vector<std::size_t> nodes = pair.first->nodes(graph);
            const auto more = pair.second->nodes(graph);
            nodes.insert(nodes.end(), more.begin(), more.end());
            std::sort(nodes.begin(), nodes.end());
            nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
            report.violations.push_back(Violation{
                ViolationKind::ConditionThree,
                "strongly connected component mixes cycles with sigma-sums " +
                    std::to_string(pair.first->sigma_sum) + " and " + std::to_string(pair.second->sigma_sum) +
                    "; they compose into a zero-sum closed walk",
                std::move(nodes),
                {},
                {*pair.first, *pair.second}});
        }
    }
}

} // namespace

ValidationReport validate(const CyclicGraph& graph, const EnumerationLimits& limits) {
    ValidationReport report;
    check_kinds(graph, report);
    check_periodicity(graph, report);
    check_cycles(graph, limits, report);
    check_ports(graph, report);
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const Violation& a, const Violation& b) { return a.kind < b.kind; });
    return report;
}

void require_valid(const CyclicGraph& graph, const EnumerationLimits& limits) {
    const auto report = validate(graph, limits);
    if (!report.valid()) {
        const Violation& first = report.violations.front();
        throw Error(ErrorCode::InvalidGraph, std::string(violation_code(first.kind)) + ": " + first.message);
    }
}

} // namespace archlab
