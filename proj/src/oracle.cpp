#include "archlab/oracle.hpp"

#include "archlab/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace archlab {

namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();

std::vector<PathLengths> compute_table(const CyclicGraph& graph, std::int64_t i, std::int64_t n_min,
                                       std::int64_t n_max, std::int64_t margin, const UnfoldOptions& unfold_options) {
    const UnfoldedWindow window = unfold(graph, i + n_min - margin, i + n_max + margin + 1, unfold_options);
    const auto& topo = window.topo_order();
    if (topo.size() != window.nodes().size()) {
        throw Error(ErrorCode::InvalidGraph, "unfolded window is not acyclic");
    }
    const std::size_t count = window.nodes().size();
    std::vector<std::int64_t> longest(count, kNone);
    std::vector<std::int64_t> longest_io(count, kNone);
    std::vector<std::int64_t> shortest(count, kNone);
    for (std::size_t v : window.nodes_at(i)) {
        longest[v] = 0;
        shortest[v] = 0;
        if (window.kind(v) == NodeKind::Input) longest_io[v] = 0;
    }
    for (std::size_t v : topo) {
        for (std::size_t e : window.out_edges(v)) {
            const std::size_t w = window.edges()[e].to;
            if (longest[v] != kNone) longest[w] = std::max(longest[w], longest[v] + 1);
            if (longest_io[v] != kNone) longest_io[w] = std::max(longest_io[w], longest_io[v] + 1);
            if (shortest[v] != kNone && (shortest[w] == kNone || shortest[v] + 1 < shortest[w])) {
                shortest[w] = shortest[v] + 1;
            }
        }
    }

    std::vector<PathLengths> values;
    values.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        PathLengths entry;
        for (std::size_t v : window.nodes_at(i + n)) {
            if (longest[v] != kNone) entry.longest_any = std::max(entry.longest_any.value_or(kNone), longest[v]);
            if (shortest[v] != kNone) {
                entry.shortest_any = entry.shortest_any ? std::min(*entry.shortest_any, shortest[v]) : shortest[v];
            }
            if (window.kind(v) == NodeKind::Output && longest_io[v] != kNone) {
                entry.longest_io = std::max(entry.longest_io.value_or(kNone), longest_io[v]);
            }
        }
        values.push_back(entry);
    }
    return values;
}

// Cycles sharing a node lie in one strongly connected component, so merging
// them by shared nodes recovers the components that carry cycles. Each
// component contributes the lcm of |sigma| over its own extremal cycles,
// since a base time may only reach components other than the global extreme.
std::int64_t component_stride(const CyclicGraph& graph, bool max) {
    const auto cycles = enumerate_simple_cycles(graph);
    std::vector<std::size_t> parent(graph.node_count());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<std::size_t> root_of(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const auto nodes = cycles[c].nodes(graph);
        for (std::size_t v : nodes) parent[find(v)] = find(nodes.front());
    }
    for (std::size_t c = 0; c < cycles.size(); ++c) root_of[c] = find(cycles[c].nodes(graph).front());

    std::map<std::size_t, std::pair<Rational, std::int64_t>> best;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const Rational ratio(cycles[c].length, std::abs(cycles[c].sigma_sum));
        const std::int64_t sigma = std::abs(cycles[c].sigma_sum);
        auto [it, fresh] = best.try_emplace(root_of[c], ratio, sigma);
        if (fresh) continue;
        auto& [value, lcm] = it->second;
        if (ratio == value) {
            lcm = std::lcm(lcm, sigma);
        } else if (max ? ratio > value : ratio < value) {
            value = ratio;
            lcm = sigma;
        }
    }
    std::int64_t out = 1;
    for (const auto& [root, entry] : best) out = std::lcm(out, entry.second);
    return out;
}

enum class Series { Longest, Shortest };

std::optional<std::int64_t> pick(const PathLengths& p, Series s) {
    return s == Series::Longest ? p.longest_any : p.shortest_any;
}

struct AffineFit {
    bool ok = false;
    std::int64_t onset = 0;
    Rational slope;
};

// Scans n downward from n_max - q and returns the smallest onset from which
// every residue satisfies v(n + q) = v(n) + delta_i, presence included. Each
// residue keeps its own delta_i; the slope is the largest (longest paths) or
// smallest (shortest paths) delta_i / q. `stride` restricts the scan to
// multiples of itself.
AffineFit fit_affine(std::span<const PathLengthTable> tables, Series series, std::int64_t q, std::int64_t stride) {
    AffineFit fit;
    if (tables.empty()) return fit;
    const std::int64_t n_min = tables.front().n_min();
    const std::int64_t n_max = tables.front().n_max();
    std::vector<std::optional<std::int64_t>> delta(tables.size());
    std::int64_t onset = n_max - q + 1;
    std::int64_t top = n_max - q;
    if (stride > 1) top -= ((top % stride) + stride) % stride;
    for (std::int64_t n = top; n >= n_min; n -= stride) {
        bool consistent = true;
        for (std::size_t r = 0; r < tables.size() && consistent; ++r) {
            const auto a = pick(tables[r].at(n), series);
            const auto b = pick(tables[r].at(n + q), series);
            if (a.has_value() != b.has_value()) {
                consistent = false;
            } else if (a) {
                const std::int64_t d = *b - *a;
                if (!delta[r]) delta[r] = d;
                consistent = d == *delta[r];
            }
        }
        if (!consistent) break;
        onset = n;
    }
    std::optional<std::int64_t> chosen;
    for (const auto& d : delta) {
        if (!d) continue;
        if (!chosen || (series == Series::Longest ? *d > *chosen : *d < *chosen)) chosen = *d;
    }
    // Demand at least one full stride of verified recurrence and some data.
    if (!chosen || onset > n_max - 2 * q) return fit;
    fit.ok = true;
    fit.onset = onset;
    fit.slope = Rational(*chosen, q);
    return fit;
}

std::vector<PathLengthTable> residue_tables(const CyclicGraph& graph, std::int64_t n_max, const OracleOptions& options) {
    std::vector<PathLengthTable> tables;
    for (std::int64_t i = 0; i < graph.period(); ++i) {
        tables.push_back(path_table(graph, i, n_max, options));
        if (!tables.back().stabilized()) {
            throw Error(ErrorCode::NotStabilized,
                        "path table for base time " + std::to_string(i) + " changed under margin doubling");
        }
    }
    return tables;
}

// The oracle always works forward in time.
CyclicGraph forward_graph(const CyclicGraph& graph, const MeasureReport& report) {
    if (!report.unidirectional()) {
        throw Error(ErrorCode::BidirectionalGraph, "oracle checks need a unidirectional graph");
    }
    return report.orientation == Orientation::Negative ? time_reversed(graph) : graph;
}

BoundCheck bound_check(std::span<const PathLengthTable> tables, const Rational& d_r, const Rational& d_f,
                       Rational* excess_max) {
    BoundCheck out;
    std::optional<Rational> best;
    for (const PathLengthTable& t : tables) {
        for (std::int64_t n = t.n_min(); n <= t.n_max(); ++n) {
            const auto& io = t.at(n).longest_io;
            if (!io) continue;
            const Rational excess = Rational(*io) - Rational(n) * d_r;
            if (!best || excess > *best) best = excess;
            if (excess > d_f) ++out.violations;
            if (excess == d_f) out.attained = true;
        }
    }
    if (excess_max != nullptr && best) *excess_max = *best;
    return out;
}

} // namespace

std::int64_t default_margin(const CyclicGraph& graph) {
    return static_cast<std::int64_t>(graph.node_count()) * graph.period() *
           std::max<std::int64_t>(1, graph.max_abs_sigma());
}

std::int64_t default_n_min(const CyclicGraph& graph) {
    if (!graph.has_negative_sigma()) return 0;
    return -static_cast<std::int64_t>(graph.node_count() - 1) * graph.max_abs_sigma();
}

std::int64_t default_horizon(const CyclicGraph& graph) {
    return 64 * graph.period() * std::max<std::int64_t>(1, graph.max_abs_sigma());
}

PathLengthTable path_table(const CyclicGraph& graph, std::int64_t base_time, std::int64_t n_max,
                           const OracleOptions& options) {
    if (n_max < 1) throw std::invalid_argument("path_table needs n_max >= 1");
    const std::int64_t n_min = options.n_min.value_or(default_n_min(graph));
    std::int64_t margin = std::max<std::int64_t>(1, options.margin.value_or(default_margin(graph)));
    auto values = compute_table(graph, base_time, n_min, n_max, margin, options.unfold);
    for (int round = 0; round < options.max_doublings; ++round) {
        auto wider = compute_table(graph, base_time, n_min, n_max, 2 * margin, options.unfold);
        if (wider == values) return PathLengthTable(base_time, n_min, std::move(values), margin, true);
        values = std::move(wider);
        margin *= 2;
    }
    return PathLengthTable(base_time, n_min, std::move(values), margin, false);
}

bool tables_match(const PathLengthTable& lhs, const PathLengthTable& rhs) {
    return lhs.n_min() == rhs.n_min() && lhs.values() == rhs.values();
}

ConvergenceReport convergence(const CyclicGraph& graph, const MeasureReport& report, std::int64_t n_max,
                              const OracleOptions& options) {
    const CyclicGraph g = forward_graph(graph, report);
    const auto tables = residue_tables(g, n_max, options);

    ConvergenceReport out;
    const std::int64_t m = g.period();
    out.period_q = m * component_stride(g, true);
    out.period_q_shortest = m * component_stride(g, false);

    AffineFit longest = fit_affine(tables, Series::Longest, out.period_q, 1);
    if (!longest.ok && !report.mild_assumption_dr) {
        longest = fit_affine(tables, Series::Longest, out.period_q, out.period_q);
        out.subsequence_only = out.subsequence_only || longest.ok;
    }
    AffineFit shortest = fit_affine(tables, Series::Shortest, out.period_q_shortest, 1);
    if (!shortest.ok && !report.mild_assumption_s) {
        shortest = fit_affine(tables, Series::Shortest, out.period_q_shortest, out.period_q_shortest);
        out.subsequence_only = out.subsequence_only || shortest.ok;
    }
    out.longest_verified = longest.ok;
    out.shortest_verified = shortest.ok;
    out.slope_longest = longest.slope;
    out.slope_shortest = shortest.slope;
    out.affine_onset = std::max(longest.onset, shortest.onset);

    const BoundCheck bounds = bound_check(tables, report.recurrent_depth, report.feedforward_depth, &out.df_max);
    out.bound_violations = bounds.violations;
    out.bound_attained = bounds.attained;
    return out;
}

bool periodicity_check(const CyclicGraph& graph, std::int64_t n_max, const OracleOptions& options) {
    const std::int64_t m = graph.period();
    for (std::int64_t i = 0; i < m; ++i) {
        if (!tables_match(path_table(graph, i, n_max, options), path_table(graph, i + m, n_max, options))) {
            return false;
        }
    }
    return true;
}

BoundCheck prop1_bound_check(const CyclicGraph& graph, const MeasureReport& report, std::int64_t n_max,
                             const OracleOptions& options) {
    const CyclicGraph g = forward_graph(graph, report);
    const auto tables = residue_tables(g, n_max, options);
    return bound_check(tables, report.recurrent_depth, report.feedforward_depth, nullptr);
}

} // namespace archlab
