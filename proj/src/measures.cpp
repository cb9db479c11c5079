#include "archlab/measures.hpp"

#include "archlab/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace archlab {

namespace {

struct Extremes {
    CycleRatio max;
    CycleRatio min;
};

// Ties keep the first cycle in canonical order.
Extremes extremes_of(std::span<const SimpleCycle> cycles) {
    Extremes out{{cycle_ratio(cycles.front()), cycles.front()}, {cycle_ratio(cycles.front()), cycles.front()}};
    for (const SimpleCycle& c : cycles.subspan(1)) {
        const Rational r = cycle_ratio(c);
        if (r > out.max.value) out.max = {r, c};
        if (r < out.min.value) out.min = {r, c};
    }
    return out;
}

std::vector<SimpleCycle> unidirectional_cycles(const CyclicGraph& graph, const EnumerationLimits& limits,
                                               Orientation* orientation_out = nullptr) {
    auto cycles = enumerate_simple_cycles(graph, limits);
    const Orientation o = orientation_of(cycles);
    if (o == Orientation::Bidirectional) {
        throw Error(ErrorCode::BidirectionalGraph,
                    "measures are defined for unidirectional graphs; measure each component instead");
    }
    if (orientation_out != nullptr) *orientation_out = o;
    return cycles;
}

int orientation_sign(Orientation o) { return o == Orientation::Negative ? -1 : 1; }

// Backtracking over node-simple paths from input ports to output ports whose
// interior nodes all satisfy `interior`.
class IoPathSearch {
public:
    IoPathSearch(const CyclicGraph& graph, std::function<bool(std::size_t)> interior, const Rational& d_r, int sign,
                 bool require_interior, const EnumerationLimits& limits)
        : graph_(graph), interior_(std::move(interior)), d_r_(d_r), sign_(sign), require_interior_(require_interior),
          limits_(limits), on_path_(graph.node_count(), false) {}

    std::optional<FeedforwardDepth> run() {
        for (std::size_t v = 0; v < graph_.node_count(); ++v) {
            if (graph_.node(v).kind != NodeKind::Input) continue;
            on_path_[v] = true;
            extend(v);
            on_path_[v] = false;
        }
        return best_;
    }

private:
    void extend(std::size_t v) {
        for (std::size_t e : graph_.out_edges(v)) {
            const std::size_t w = graph_.edge(e).to;
            if (on_path_[w]) continue;
            path_.push_back(e);
            const NodeKind kind = graph_.node(w).kind;
            if (kind == NodeKind::Output) {
                if (!require_interior_ || path_.size() >= 2) record();
            } else if (kind == NodeKind::Hidden && interior_(w)) {
                on_path_[w] = true;
                extend(w);
                on_path_[w] = false;
            }
            path_.pop_back();
        }
    }

    void record() {
        if (++visited_ > limits_.max_items) {
            throw Error(ErrorCode::CycleBudgetExceeded,
                        "more than " + std::to_string(limits_.max_items) + " simple input-output paths");
        }
        const auto length = static_cast<std::int64_t>(path_.size());
        const Rational value = Rational(length) - Rational(sign_ * sigma_sum(graph_, path_)) * d_r_;
        if (!best_ || value > best_->value) best_ = FeedforwardDepth{value, path_};
    }

    const CyclicGraph& graph_;
    std::function<bool(std::size_t)> interior_;
    Rational d_r_;
    int sign_;
    bool require_interior_;
    const EnumerationLimits& limits_;
    std::vector<bool> on_path_;
    EdgePath path_;
    std::size_t visited_ = 0;
    std::optional<FeedforwardDepth> best_;
};

ComponentReport measure_component(const CyclicGraph& graph, const std::vector<std::size_t>& members,
                                  std::span<const SimpleCycle> cycles, const EnumerationLimits& limits) {
    ComponentReport report;
    report.nodes = members;
    report.orientation = orientation_of(cycles);
    const Extremes ex = extremes_of(cycles);
    report.recurrent_depth = ex.max.value;
    report.witness_max_cycle = ex.max.witness;
    report.skip_reciprocal = ex.min.value;
    report.skip_coefficient = ex.min.value.reciprocal();
    report.witness_min_cycle = ex.min.witness;
    report.mild_assumption_dr = check_mild_assumption(graph, ex.max.witness);
    report.mild_assumption_s = check_mild_assumption(graph, ex.min.witness);

    std::vector<bool> in_component(graph.node_count(), false);
    for (std::size_t v : members) in_component[v] = true;
    auto path = IoPathSearch(graph, [&](std::size_t v) { return in_component[v]; }, report.recurrent_depth,
                             orientation_sign(report.orientation), true, limits)
                    .run();
    if (path) {
        report.feedforward_depth = path->value;
        report.witness_io_path = std::move(path->witness);
    }
    return report;
}

} // namespace

Rational cycle_ratio(const SimpleCycle& cycle) {
    if (cycle.sigma_sum == 0) {
        throw Error(ErrorCode::InvalidGraph, "cycle with zero sigma-sum has no ratio");
    }
    return Rational(cycle.length, std::abs(cycle.sigma_sum));
}

CycleRatio recurrent_depth(const CyclicGraph& graph, const EnumerationLimits& limits) {
    const auto cycles = unidirectional_cycles(graph, limits);
    return extremes_of(cycles).max;
}

SkipCoefficient skip_coefficient(const CyclicGraph& graph, const EnumerationLimits& limits) {
    const auto cycles = unidirectional_cycles(graph, limits);
    const CycleRatio min = extremes_of(cycles).min;
    return SkipCoefficient{min.value, min.value.reciprocal(), min.witness};
}

FeedforwardDepth feedforward_depth(const CyclicGraph& graph, const Rational& d_r, const EnumerationLimits& limits) {
    Orientation o = Orientation::Positive;
    unidirectional_cycles(graph, limits, &o);
    auto best = IoPathSearch(graph, [](std::size_t) { return true; }, d_r, orientation_sign(o), false, limits).run();
    if (!best) {
        throw Error(ErrorCode::NoInputOutputPath, "no directed path from an input node to an output node");
    }
    return *best;
}

std::vector<SimpleCycle> extremal_cycles(const CyclicGraph& graph, bool max, const EnumerationLimits& limits) {
    const auto cycles = unidirectional_cycles(graph, limits);
    const Extremes ex = extremes_of(cycles);
    const Rational target = max ? ex.max.value : ex.min.value;
    std::vector<SimpleCycle> out;
    std::copy_if(cycles.begin(), cycles.end(), std::back_inserter(out),
                 [&](const SimpleCycle& c) { return cycle_ratio(c) == target; });
    return out;
}

bool check_mild_assumption(const CyclicGraph& graph, const SimpleCycle& witness) {
    const std::int64_t total = std::abs(witness.sigma_sum);
    if (total == 0) return false;
    std::vector<bool> hit(static_cast<std::size_t>(total), false);
    std::int64_t prefix = 0;
    hit[0] = true;
    for (std::size_t e : witness.edges) {
        prefix += graph.edge(e).sigma;
        hit[static_cast<std::size_t>(((prefix % total) + total) % total)] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

MeasureReport measure(const CyclicGraph& graph, const EnumerationLimits& limits) {
    require_valid(graph, limits);
    MeasureReport report;
    report.minimal_period = minimal_period(graph);
    const auto cycles = enumerate_simple_cycles(graph, limits);
    report.orientation = orientation_of(cycles);

    if (report.orientation != Orientation::Bidirectional) {
        const Extremes ex = extremes_of(cycles);
        report.recurrent_depth = ex.max.value;
        report.witness_max_cycle = ex.max.witness;
        report.skip_reciprocal = ex.min.value;
        report.skip_coefficient = ex.min.value.reciprocal();
        report.witness_min_cycle = ex.min.witness;
        report.mild_assumption_dr = check_mild_assumption(graph, ex.max.witness);
        report.mild_assumption_s = check_mild_assumption(graph, ex.min.witness);
        FeedforwardDepth df = feedforward_depth(graph, report.recurrent_depth, limits);
        report.feedforward_depth = df.value;
        report.witness_io_path = std::move(df.witness);
        return report;
    }

    const auto component = component_ids(graph);
    const auto components = strongly_connected_components(graph);
    for (std::size_t c = 0; c < components.size(); ++c) {
        std::vector<SimpleCycle> own;
        std::copy_if(cycles.begin(), cycles.end(), std::back_inserter(own), [&](const SimpleCycle& cycle) {
            return component[graph.edge(cycle.edges.front()).from] == c;
        });
        if (own.empty()) continue;
        report.components.push_back(measure_component(graph, components[c], own, limits));
    }
    return report;
}

} // namespace archlab
