#pragma once

#include "archlab/archgraph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace archlab {

/// A copy of cyclic node `cyclic` living at absolute time `time`.
struct UnfoldedNode {
    std::int64_t time = 0;
    std::size_t cyclic = 0;

    friend auto operator<=>(const UnfoldedNode&, const UnfoldedNode&) = default;
};

struct UnfoldedEdge {
    std::size_t from = 0;   // index into UnfoldedWindow::nodes()
    std::size_t to = 0;
    std::size_t cyclic = 0; // index of the generating cyclic edge

    friend auto operator<=>(const UnfoldedEdge&, const UnfoldedEdge&) = default;
};

struct UnfoldOptions {
    static constexpr std::size_t kDefaultMaxNodes = 10'000'000;
    std::size_t max_nodes = kDefaultMaxNodes;
};

/// Finite slice [t_lo, t_hi) of the unfolding. Nodes are ordered by
/// (time, label); an edge is present only when both endpoints are inside.
class UnfoldedWindow {
public:
    const CyclicGraph& graph() const noexcept { return graph_; }
    std::int64_t t_lo() const noexcept { return t_lo_; }
    std::int64_t t_hi() const noexcept { return t_hi_; }

    const std::vector<UnfoldedNode>& nodes() const noexcept { return nodes_; }
    const std::vector<UnfoldedEdge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_.at(node); }
    const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_.at(node); }

    /// Kahn order with (time, label) tie-breaking. Shorter than nodes() iff
    /// the window contains a directed cycle.
    const std::vector<std::size_t>& topo_order() const noexcept { return topo_; }

    /// Index of cyclic node `cyclic` at absolute time `time`, if it is in the window.
    std::optional<std::size_t> find(std::int64_t time, std::size_t cyclic) const;

    /// Indices of all window nodes at absolute time `time`.
    std::vector<std::size_t> nodes_at(std::int64_t time) const;

    std::string label(std::size_t node) const;
    NodeKind kind(std::size_t node) const { return graph_.node(nodes_.at(node).cyclic).kind; }

    /// Copy with one edge removed. Used to build deliberately broken windows.
    UnfoldedWindow without_edge(std::size_t edge) const;

private:
    friend UnfoldedWindow unfold(const CyclicGraph&, std::int64_t, std::int64_t, const UnfoldOptions&);

    UnfoldedWindow(CyclicGraph graph, std::int64_t t_lo, std::int64_t t_hi)
        : graph_(std::move(graph)), t_lo_(t_lo), t_hi_(t_hi) {}

    void index_edges();

    CyclicGraph graph_;
    std::int64_t t_lo_;
    std::int64_t t_hi_;
    std::vector<UnfoldedNode> nodes_;
    std::vector<UnfoldedEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::vector<std::size_t> topo_;
    std::vector<std::size_t> time_offset_;    // first node index per time step, plus a sentinel
    std::vector<std::size_t> residue_begin_;  // first cyclic node per time index, plus a sentinel
};

/// Number of nodes unfold(graph, t_lo, t_hi) would materialize.
std::size_t unfolded_node_count(const CyclicGraph& graph, std::int64_t t_lo, std::int64_t t_hi);

/// Materializes the window [t_lo, t_hi). Does not require a valid graph, so
/// that invalid graphs can be inspected too. Throws Error(WindowTooLarge).
UnfoldedWindow unfold(const CyclicGraph& graph, std::int64_t t_lo, std::int64_t t_hi,
                      const UnfoldOptions& options = {});

/// True iff the window has no directed cycle (checked by DFS, independently
/// of the stored topological order).
bool check_dag(const UnfoldedWindow& window);

/// True iff `shifted` equals `base` under t -> t + shift (same nodes, same
/// edges generated by the same cyclic edges).
bool shift_isomorphic(const UnfoldedWindow& base, const UnfoldedWindow& shifted, std::int64_t shift);

/// unfold(g, 0, L) and unfold(g, m, m + L) are isomorphic under t -> t + m.
bool check_shift_invariance(const CyclicGraph& graph, std::int64_t window_len);

/// reach[a][b] is true iff some input node at time a reaches some output
/// node at time b inside the window; times are offsets from t_lo.
std::vector<std::vector<bool>> io_reachability(const UnfoldedWindow& window);

} // namespace archlab
