#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace archlab {

enum class NodeKind { Input, Hidden, Output };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

/// A cyclic-graph node is named by its label and its time index within the
/// period. Ordering is (time_index, label), which is the canonical order used
/// everywhere (storage, serialization, DOT output).
struct NodeId {
    std::string label;
    std::int64_t time_index = 0;

    std::string to_string() const { return label + "@" + std::to_string(time_index); }

    friend bool operator==(const NodeId&, const NodeId&) = default;
    friend std::strong_ordering operator<=>(const NodeId& lhs, const NodeId& rhs) {
        if (auto c = lhs.time_index <=> rhs.time_index; c != 0) return c;
        return lhs.label.compare(rhs.label) <=> 0;
    }
};

struct Node {
    NodeId id;
    NodeKind kind = NodeKind::Hidden;

    friend bool operator==(const Node&, const Node&) = default;
};

/// Edge expressed by node names, as written in architecture files.
struct EdgeSpec {
    NodeId from;
    NodeId to;
    std::int64_t sigma = 0;

    friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// Edge expressed by indices into CyclicGraph::nodes(). Because nodes are
/// stored in canonical order, the default ordering here is the canonical
/// (from, to, sigma) edge order.
struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::int64_t sigma = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite weighted directed multigraph with typed, time-indexed nodes.
///
/// Construction enforces only structural well-formedness (identifiers,
/// time indices inside the period, unique nodes and edge triples, resolvable
/// references). The semantic conditions of an RNN cyclic graph are checked by
/// validate(). Instances are immutable.
class CyclicGraph {
public:
    CyclicGraph(std::int64_t period, std::vector<Node> nodes, std::vector<EdgeSpec> edges);

    std::int64_t period() const noexcept { return period_; }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Node& node(std::size_t index) const { return nodes_.at(index); }
    const Edge& edge(std::size_t index) const { return edges_.at(index); }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::optional<std::size_t> find(const NodeId& id) const;

    /// Edge indices leaving / entering a node, in canonical edge order.
    std::span<const std::size_t> out_edges(std::size_t node) const { return out_.at(node); }
    std::span<const std::size_t> in_edges(std::size_t node) const { return in_.at(node); }

    std::int64_t max_abs_sigma() const noexcept { return max_abs_sigma_; }
    bool has_negative_sigma() const noexcept;

    EdgeSpec edge_spec(std::size_t index) const;
    std::vector<EdgeSpec> edge_specs() const;

    friend bool operator==(const CyclicGraph& lhs, const CyclicGraph& rhs) {
        return lhs.period_ == rhs.period_ && lhs.nodes_ == rhs.nodes_ && lhs.edges_ == rhs.edges_;
    }

private:
    std::int64_t period_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::int64_t max_abs_sigma_ = 0;
};

bool is_identifier(std::string_view text);

/// Caps for exhaustive enumeration of cycles and paths.
struct EnumerationLimits {
    static constexpr std::size_t kDefaultBudget = 1'000'000;

    std::size_t max_items = kDefaultBudget;

    /// Default limits, overridden by ARCHLAB_CYCLE_BUDGET when it is set.
    static EnumerationLimits from_environment();
};

/// Ordered edge indices of a simple directed cycle, rotated to start at its
/// smallest node.
struct SimpleCycle {
    std::vector<std::size_t> edges;
    std::int64_t length = 0;
    std::int64_t sigma_sum = 0;

    std::vector<std::size_t> nodes(const CyclicGraph& graph) const;

    friend bool operator==(const SimpleCycle&, const SimpleCycle&) = default;
};

SimpleCycle make_cycle(const CyclicGraph& graph, std::vector<std::size_t> edges);

/// Ordered edge indices of a directed path.
using EdgePath = std::vector<std::size_t>;

std::int64_t sigma_sum(const CyclicGraph& graph, std::span<const std::size_t> edges);

/// All simple cycles of the multigraph (parallel edges give distinct cycles),
/// in canonical order. Throws Error(CycleBudgetExceeded) past the cap.
std::vector<SimpleCycle> enumerate_simple_cycles(const CyclicGraph& graph,
                                                 const EnumerationLimits& limits = {});

/// Strongly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> strongly_connected_components(const CyclicGraph& graph);

/// Component id per node, consistent with strongly_connected_components().
std::vector<std::size_t> component_ids(const CyclicGraph& graph);

enum class Orientation { Positive, Negative, Bidirectional };

std::string_view to_string(Orientation orientation);

Orientation orientation(const CyclicGraph& graph, const EnumerationLimits& limits = {});
Orientation orientation_of(std::span<const SimpleCycle> cycles);

enum class ViolationKind {
    ConditionOne,   // sigma inconsistent with the period
    ConditionTwo,   // no directed cycle
    ConditionThree, // some closed walk has zero sigma-sum
    ConditionFour,  // port connectivity
    EmptyKind,      // no input, hidden or output nodes
};

std::string_view violation_code(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> edges;
    std::vector<SimpleCycle> cycles;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const noexcept { return violations.empty(); }
    bool has(ViolationKind kind) const;
};

/// Checks every condition on an RNN cyclic graph. Violations are reported as
/// data; only exhausting the enumeration budget throws.
ValidationReport validate(const CyclicGraph& graph, const EnumerationLimits& limits = {});

/// Throws Error(InvalidGraph) carrying the first violation when invalid.
void require_valid(const CyclicGraph& graph, const EnumerationLimits& limits = {});

/// Smallest divisor d of the declared period such that (i, p) -> ((i + d) mod m, p)
/// is a kind- and sigma-preserving automorphism.
std::int64_t minimal_period(const CyclicGraph& graph);

/// The graph with every sigma negated and time indices mirrored, whose
/// unfolding is the original unfolding under t -> -t.
CyclicGraph time_reversed(const CyclicGraph& graph);

/// Copy of the graph with time indices shifted by `shift` (mod period).
CyclicGraph time_shifted(const CyclicGraph& graph, std::int64_t shift);

} // namespace archlab
