#include "archlab/unfold.hpp"

#include "archlab/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

namespace archlab {

namespace {

std::int64_t floor_mod(std::int64_t value, std::int64_t modulus) {
    const std::int64_t r = value % modulus;
    return r < 0 ? r + modulus : r;
}

std::vector<std::size_t> residue_starts(const CyclicGraph& graph) {
    const auto m = static_cast<std::size_t>(graph.period());
    std::vector<std::size_t> begin(m + 1, graph.node_count());
    for (std::size_t v = graph.node_count(); v-- > 0;) {
        begin[static_cast<std::size_t>(graph.node(v).id.time_index)] = v;
    }
    // Residues without nodes start where the next residue starts.
    for (std::size_t r = m; r-- > 0;) {
        begin[r] = std::min(begin[r], begin[r + 1]);
    }
    return begin;
}

} // namespace

std::size_t unfolded_node_count(const CyclicGraph& graph, std::int64_t t_lo, std::int64_t t_hi) {
    if (t_hi <= t_lo) return 0;
    const auto begin = residue_starts(graph);
    const std::int64_t m = graph.period();
    const auto span = static_cast<std::size_t>(t_hi - t_lo);
    const auto full = span / static_cast<std::size_t>(m);
    std::size_t count = full * graph.node_count();
    for (std::int64_t t = t_lo + static_cast<std::int64_t>(full) * m; t < t_hi; ++t) {
        const auto r = static_cast<std::size_t>(floor_mod(t, m));
        count += begin[r + 1] - begin[r];
    }
    return count;
}

UnfoldedWindow unfold(const CyclicGraph& graph, std::int64_t t_lo, std::int64_t t_hi, const UnfoldOptions& options) {
    if (t_hi <= t_lo) {
        throw std::invalid_argument("unfold window must satisfy t_lo < t_hi");
    }
    const std::size_t count = unfolded_node_count(graph, t_lo, t_hi);
    if (count > options.max_nodes) {
        throw Error(ErrorCode::WindowTooLarge, "window [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                                                   ") has " + std::to_string(count) + " nodes, cap is " +
                                                   std::to_string(options.max_nodes));
    }

    UnfoldedWindow window(graph, t_lo, t_hi);
    window.residue_begin_ = residue_starts(graph);
    window.nodes_.reserve(count);
    window.time_offset_.reserve(static_cast<std::size_t>(t_hi - t_lo) + 1);
    const std::int64_t m = graph.period();
    for (std::int64_t t = t_lo; t < t_hi; ++t) {
        window.time_offset_.push_back(window.nodes_.size());
        const auto r = static_cast<std::size_t>(floor_mod(t, m));
        for (std::size_t c = window.residue_begin_[r]; c < window.residue_begin_[r + 1]; ++c) {
            window.nodes_.push_back(UnfoldedNode{t, c});
        }
    }
    window.time_offset_.push_back(window.nodes_.size());

    for (std::size_t u = 0; u < window.nodes_.size(); ++u) {
        const UnfoldedNode& node = window.nodes_[u];
        for (std::size_t e : graph.out_edges(node.cyclic)) {
            const Edge& edge = graph.edge(e);
            if (auto v = window.find(node.time + edge.sigma, edge.to)) {
                window.edges_.push_back(UnfoldedEdge{u, *v, e});
            }
        }
    }
    window.index_edges();
    return window;
}

void UnfoldedWindow::index_edges() {
    out_.assign(nodes_.size(), {});
    in_.assign(nodes_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        out_[edges_[e].from].push_back(e);
        in_[edges_[e].to].push_back(e);
    }

    // Node indices already follow (time, label), so the smallest index is the
    // deterministic tie-break.
    std::vector<std::size_t> indegree(nodes_.size());
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        indegree[v] = in_[v].size();
        if (indegree[v] == 0) ready.push(v);
    }
    topo_.clear();
    topo_.reserve(nodes_.size());
    while (!ready.empty()) {
        const std::size_t v = ready.top();
        ready.pop();
        topo_.push_back(v);
        for (std::size_t e : out_[v]) {
            if (--indegree[edges_[e].to] == 0) ready.push(edges_[e].to);
        }
    }
}

std::optional<std::size_t> UnfoldedWindow::find(std::int64_t time, std::size_t cyclic) const {
    if (time < t_lo_ || time >= t_hi_ || cyclic >= graph_.node_count()) return std::nullopt;
    const std::int64_t r = floor_mod(time, graph_.period());
    if (graph_.node(cyclic).id.time_index != r) return std::nullopt;
    return time_offset_[static_cast<std::size_t>(time - t_lo_)] + (cyclic - residue_begin_[static_cast<std::size_t>(r)]);
}

std::vector<std::size_t> UnfoldedWindow::nodes_at(std::int64_t time) const {
    std::vector<std::size_t> out;
    if (time < t_lo_ || time >= t_hi_) return out;
    const auto slot = static_cast<std::size_t>(time - t_lo_);
    for (std::size_t v = time_offset_[slot]; v < time_offset_[slot + 1]; ++v) out.push_back(v);
    return out;
}

std::string UnfoldedWindow::label(std::size_t node) const {
    return graph_.node(nodes_.at(node).cyclic).id.label;
}

UnfoldedWindow UnfoldedWindow::without_edge(std::size_t edge) const {
    UnfoldedWindow copy = *this;
    copy.edges_.erase(copy.edges_.begin() + static_cast<std::ptrdiff_t>(edge));
    copy.index_edges();
    return copy;
}

bool check_dag(const UnfoldedWindow& window) {
    enum class Mark : unsigned char { White, Grey, Black };
    const auto& nodes = window.nodes();
    std::vector<Mark> mark(nodes.size(), Mark::White);
    std::vector<std::pair<std::size_t, std::size_t>> stack; // (node, next out-edge position)
    for (std::size_t root = 0; root < nodes.size(); ++root) {
        if (mark[root] != Mark::White) continue;
        stack.emplace_back(root, 0);
        mark[root] = Mark::Grey;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& out = window.out_edges(v);
            if (next == out.size()) {
                mark[v] = Mark::Black;
                stack.pop_back();
                continue;
            }
            const std::size_t w = window.edges()[out[next++]].to;
            if (mark[w] == Mark::Grey) return false;
            if (mark[w] == Mark::White) {
                mark[w] = Mark::Grey;
                stack.emplace_back(w, 0);
            }
        }
    }
    return true;
}

bool shift_isomorphic(const UnfoldedWindow& base, const UnfoldedWindow& shifted, std::int64_t shift) {
    if (!(base.graph() == shifted.graph())) return false;
    if (base.nodes().size() != shifted.nodes().size()) return false;
    for (std::size_t i = 0; i < base.nodes().size(); ++i) {
        const auto& a = base.nodes()[i];
        const auto& b = shifted.nodes()[i];
        if (a.time + shift != b.time || a.cyclic != b.cyclic) return false;
    }
    using Key = std::tuple<std::int64_t, std::size_t, std::size_t>; // source time, source node, cyclic edge
    auto keys = [](const UnfoldedWindow& w, std::int64_t offset) {
        std::vector<Key> out;
        out.reserve(w.edges().size());
        for (const auto& e : w.edges()) {
            const auto& src = w.nodes()[e.from];
            out.emplace_back(src.time + offset, src.cyclic, e.cyclic);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return keys(base, shift) == keys(shifted, 0);
}

bool check_shift_invariance(const CyclicGraph& graph, std::int64_t window_len) {
    const std::int64_t m = graph.period();
    return shift_isomorphic(unfold(graph, 0, window_len), unfold(graph, m, m + window_len), m);
}

std::vector<std::vector<bool>> io_reachability(const UnfoldedWindow& window) {
    const auto span = static_cast<std::size_t>(window.t_hi() - window.t_lo());
    std::vector<std::vector<bool>> reach(span, std::vector<bool>(span, false));
    std::vector<char> seen(window.nodes().size());
    std::vector<std::size_t> frontier;
    for (std::size_t a = 0; a < span; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        frontier.clear();
        for (std::size_t v : window.nodes_at(window.t_lo() + static_cast<std::int64_t>(a))) {
            if (window.kind(v) == NodeKind::Input) {
                seen[v] = 1;
                frontier.push_back(v);
            }
        }
        while (!frontier.empty()) {
            const std::size_t v = frontier.back();
            frontier.pop_back();
            if (window.kind(v) == NodeKind::Output) {
                reach[a][static_cast<std::size_t>(window.nodes()[v].time - window.t_lo())] = true;
            }
            for (std::size_t e : window.out_edges(v)) {
                const std::size_t w = window.edges()[e].to;
                if (!seen[w]) {
                    seen[w] = 1;
                    frontier.push_back(w);
                }
            }
        }
    }
    return reach;
}

} // namespace archlab
