#include "archlab/archgraph.hpp"

#include "archlab/error.hpp"

#include <algorithm>
#include <functional>

namespace archlab {

namespace {

// Tarjan's algorithm over the node subset `active`.
std::vector<std::vector<std::size_t>> tarjan(const CyclicGraph& graph, const std::vector<bool>& active) {
    const std::size_t n = graph.node_count();
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t e : graph.out_edges(v)) {
            const std::size_t w = graph.edge(e).to;
            if (!active[w]) continue;
            if (index[w] == kUnvisited) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> component;
            std::size_t w = 0;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component.push_back(w);
            } while (w != v);
            std::sort(component.begin(), component.end());
            components.push_back(std::move(component));
        }
    };

    for (std::size_t v = 0; v < n; ++v) {
        if (active[v] && index[v] == kUnvisited) visit(v);
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

class JohnsonEnumerator {
public:
    JohnsonEnumerator(const CyclicGraph& graph, const EnumerationLimits& limits)
        : graph_(graph), limits_(limits), blocked_(graph.node_count(), false),
          blocked_by_(graph.node_count()), in_component_(graph.node_count(), false) {}

    std::vector<SimpleCycle> run() {
        const std::size_t n = graph_.node_count();
        std::vector<bool> active(n, true);
        for (std::size_t s = 0; s < n; ++s) {
            // Cycles whose smallest node is s live in s's component of the
            // subgraph induced by nodes >= s.
            std::fill(in_component_.begin(), in_component_.end(), false);
            for (const auto& component : tarjan(graph_, active)) {
                if (component.front() == s) {
                    for (std::size_t v : component) in_component_[v] = true;
                    break;
                }
            }
            start_ = s;
            for (std::size_t v = 0; v < n; ++v) {
                blocked_[v] = false;
                blocked_by_[v].clear();
            }
            circuit(s);
            active[s] = false;
        }
        std::sort(cycles_.begin(), cycles_.end(),
                  [](const SimpleCycle& a, const SimpleCycle& b) { return a.edges < b.edges; });
        return std::move(cycles_);
    }

private:
    bool circuit(std::size_t v) {
        bool found = false;
        blocked_[v] = true;
        for (std::size_t e : graph_.out_edges(v)) {
            const std::size_t w = graph_.edge(e).to;
            if (!in_component_[w]) continue;
            if (w == start_) {
                path_.push_back(e);
                emit();
                path_.pop_back();
                found = true;
            } else if (!blocked_[w]) {
                path_.push_back(e);
                if (circuit(w)) found = true;
                path_.pop_back();
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (std::size_t e : graph_.out_edges(v)) {
                const std::size_t w = graph_.edge(e).to;
                if (!in_component_[w]) continue;
                auto& list = blocked_by_[w];
                if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
            }
        }
        return found;
    }

    void unblock(std::size_t v) {
        blocked_[v] = false;
        auto pending = std::move(blocked_by_[v]);
        blocked_by_[v].clear();
        for (std::size_t w : pending) {
            if (blocked_[w]) unblock(w);
        }
    }

    void emit() {
        if (cycles_.size() >= limits_.max_items) {
            throw Error(ErrorCode::CycleBudgetExceeded,
                        "more than " + std::to_string(limits_.max_items) + " simple cycles");
        }
        cycles_.push_back(make_cycle(graph_, path_));
    }

    const CyclicGraph& graph_;
    const EnumerationLimits& limits_;
    std::vector<bool> blocked_;
    std::vector<std::vector<std::size_t>> blocked_by_;
    std::vector<bool> in_component_;
    std::vector<std::size_t> path_;
    std::vector<SimpleCycle> cycles_;
    std::size_t start_ = 0;
};

} // namespace

SimpleCycle make_cycle(const CyclicGraph& graph, std::vector<std::size_t> edges) {
    if (!edges.empty()) {
        auto smallest = std::min_element(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
            return graph.edge(a).from < graph.edge(b).from;
        });
        std::rotate(edges.begin(), smallest, edges.end());
    }
    SimpleCycle cycle;
    cycle.length = static_cast<std::int64_t>(edges.size());
    cycle.sigma_sum = sigma_sum(graph, edges);
    cycle.edges = std::move(edges);
    return cycle;
}

std::vector<std::size_t> SimpleCycle::nodes(const CyclicGraph& graph) const {
    std::vector<std::size_t> out;
    out.reserve(edges.size());
    for (std::size_t e : edges) out.push_back(graph.edge(e).from);
    return out;
}

std::vector<SimpleCycle> enumerate_simple_cycles(const CyclicGraph& graph, const EnumerationLimits& limits) {
    return JohnsonEnumerator(graph, limits).run();
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const CyclicGraph& graph) {
    return tarjan(graph, std::vector<bool>(graph.node_count(), true));
}

std::vector<std::size_t> component_ids(const CyclicGraph& graph) {
    std::vector<std::size_t> ids(graph.node_count(), 0);
    const auto components = strongly_connected_components(graph);
    for (std::size_t c = 0; c < components.size(); ++c) {
        for (std::size_t v : components[c]) ids[v] = c;
    }
    return ids;
}

Orientation orientation_of(std::span<const SimpleCycle> cycles) {
    const bool any_positive =
        std::any_of(cycles.begin(), cycles.end(), [](const SimpleCycle& c) { return c.sigma_sum > 0; });
    const bool any_non_positive =
        std::any_of(cycles.begin(), cycles.end(), [](const SimpleCycle& c) { return c.sigma_sum <= 0; });
    if (any_positive && !any_non_positive) return Orientation::Positive;
    const bool all_negative =
        !cycles.empty() && std::all_of(cycles.begin(), cycles.end(), [](const SimpleCycle& c) { return c.sigma_sum < 0; });
    return all_negative ? Orientation::Negative : Orientation::Bidirectional;
}

Orientation orientation(const CyclicGraph& graph, const EnumerationLimits& limits) {
    const auto cycles = enumerate_simple_cycles(graph, limits);
    return orientation_of(cycles);
}

} // namespace archlab
