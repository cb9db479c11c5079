#include "archlab/archgraph.hpp"

#include "archlab/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace archlab {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::Input: return "input";
    case NodeKind::Hidden: return "hidden";
    case NodeKind::Output: return "output";
    }
    return "hidden";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    if (text == "input") return NodeKind::Input;
    if (text == "hidden") return NodeKind::Hidden;
    if (text == "output") return NodeKind::Output;
    return std::nullopt;
}

bool is_identifier(std::string_view text) {
    if (text.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front())) return false;
    return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || digit(c); });
}

CyclicGraph::CyclicGraph(std::int64_t period, std::vector<Node> nodes, std::vector<EdgeSpec> edges)
    : period_(period), nodes_(std::move(nodes)) {
    if (period_ < 1) {
        throw Error(ErrorCode::InvalidGraph, "period must be a positive integer, got " + std::to_string(period_));
    }
    for (const Node& n : nodes_) {
        if (!is_identifier(n.id.label)) {
            throw Error(ErrorCode::InvalidGraph, "node label '" + n.id.label + "' is not an identifier");
        }
        if (n.id.time_index < 0 || n.id.time_index >= period_) {
            throw Error(ErrorCode::InvalidGraph, "node " + n.id.to_string() + " has time index outside [0, " +
                                                     std::to_string(period_) + ")");
        }
    }
    std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (nodes_[i - 1].id == nodes_[i].id) {
            throw Error(ErrorCode::DuplicateNode, "duplicate node " + nodes_[i].id.to_string());
        }
    }

    edges_.reserve(edges.size());
    for (const EdgeSpec& spec : edges) {
        auto from = find(spec.from);
        auto to = find(spec.to);
        if (!from) throw Error(ErrorCode::UnknownNodeReference, "unknown node " + spec.from.to_string());
        if (!to) throw Error(ErrorCode::UnknownNodeReference, "unknown node " + spec.to.to_string());
        edges_.push_back(Edge{*from, *to, spec.sigma});
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1] == edges_[i]) {
            throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + nodes_[edges_[i].from].id.to_string() + " -> " +
                                                      nodes_[edges_[i].to].id.to_string() + " : " +
                                                      std::to_string(edges_[i].sigma));
        }
    }

    out_.resize(nodes_.size());
    in_.resize(nodes_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        out_[edges_[e].from].push_back(e);
        in_[edges_[e].to].push_back(e);
        max_abs_sigma_ = std::max(max_abs_sigma_, std::abs(edges_[e].sigma));
    }
}

std::optional<std::size_t> CyclicGraph::find(const NodeId& id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const Node& n, const NodeId& key) { return n.id < key; });
    if (it == nodes_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

bool CyclicGraph::has_negative_sigma() const noexcept {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.sigma < 0; });
}

EdgeSpec CyclicGraph::edge_spec(std::size_t index) const {
    const Edge& e = edges_.at(index);
    return EdgeSpec{nodes_[e.from].id, nodes_[e.to].id, e.sigma};
}

std::vector<EdgeSpec> CyclicGraph::edge_specs() const {
    std::vector<EdgeSpec> out;
    out.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) out.push_back(edge_spec(e));
    return out;
}

EnumerationLimits EnumerationLimits::from_environment() {
    EnumerationLimits limits;
    if (const char* raw = std::getenv("ARCHLAB_CYCLE_BUDGET"); raw != nullptr && *raw != '\0') {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(raw, &end, 10);
        if (end != nullptr && *end == '\0' && value > 0) {
            limits.max_items = static_cast<std::size_t>(value);
        }
    }
    return limits;
}

std::int64_t sigma_sum(const CyclicGraph& graph, std::span<const std::size_t> edges) {
    std::int64_t total = 0;
    for (std::size_t e : edges) total += graph.edge(e).sigma;
    return total;
}

std::string_view to_string(Orientation orientation) {
    switch (orientation) {
    case Orientation::Positive: return "positive";
    case Orientation::Negative: return "negative";
    case Orientation::Bidirectional: return "bidirectional";
    }
    return "bidirectional";
}

namespace {

std::int64_t floor_mod(std::int64_t value, std::int64_t modulus) {
    const std::int64_t r = value % modulus;
    return r < 0 ? r + modulus : r;
}

CyclicGraph remap_times(const CyclicGraph& graph, auto&& time_map, bool negate_sigma) {
    std::vector<Node> nodes;
    nodes.reserve(graph.node_count());
    for (const Node& n : graph.nodes()) {
        nodes.push_back(Node{NodeId{n.id.label, time_map(n.id.time_index)}, n.kind});
    }
    std::vector<EdgeSpec> edges;
    edges.reserve(graph.edge_count());
    for (const Edge& e : graph.edges()) {
        edges.push_back(EdgeSpec{nodes[e.from].id, nodes[e.to].id, negate_sigma ? -e.sigma : e.sigma});
    }
    return CyclicGraph(graph.period(), std::move(nodes), std::move(edges));
}

} // namespace

CyclicGraph time_reversed(const CyclicGraph& graph) {
    const std::int64_t m = graph.period();
    return remap_times(graph, [m](std::int64_t i) { return floor_mod(-i, m); }, true);
}

CyclicGraph time_shifted(const CyclicGraph& graph, std::int64_t shift) {
    const std::int64_t m = graph.period();
    return remap_times(graph, [m, shift](std::int64_t i) { return floor_mod(i + shift, m); }, false);
}

std::int64_t minimal_period(const CyclicGraph& graph) {
    const std::int64_t m = graph.period();
    for (std::int64_t d = 1; d < m; ++d) {
        if (m % d == 0 && time_shifted(graph, d) == graph) return d;
    }
    return m;
}

} // namespace archlab
