#include "archlab/fixtures.hpp"

#include "archlab/error.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

namespace archlab {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 13> kFamilyNames{{
    {Family::Sh, "sh"},
    {Family::St, "st"},
    {Family::Bu, "bu"},
    {Family::Td, "td"},
    {Family::DepthGrid, "depth-grid"},
    {Family::Skip, "skip"},
    {Family::StackSkip, "stack-skip"},
    {Family::NegativeSh, "negative-sh"},
    {Family::DoubledSh, "doubled-sh"},
    {Family::Bidirectional, "bidirectional"},
    {Family::SkipOnly, "skip-only"},
    {Family::Clockwork, "clockwork"},
    {Family::Ring3, "ring3"},
}};

class Builder {
public:
    explicit Builder(std::int64_t period = 1) : period_(period) {}

    Builder& node(NodeKind kind, std::string label, std::int64_t time = 0) {
        nodes_.push_back(Node{NodeId{std::move(label), time}, kind});
        return *this;
    }
    Builder& input(std::string label, std::int64_t time = 0) { return node(NodeKind::Input, std::move(label), time); }
    Builder& hidden(std::string label, std::int64_t time = 0) { return node(NodeKind::Hidden, std::move(label), time); }
    Builder& output(std::string label, std::int64_t time = 0) { return node(NodeKind::Output, std::move(label), time); }

    Builder& edge(std::string from, std::string to, std::int64_t sigma = 0, std::int64_t from_time = 0,
                  std::int64_t to_time = 0) {
        edges_.push_back(EdgeSpec{NodeId{std::move(from), from_time}, NodeId{std::move(to), to_time}, sigma});
        return *this;
    }

    CyclicGraph build() const { return CyclicGraph(period_, nodes_, edges_); }

private:
    std::int64_t period_;
    std::vector<Node> nodes_;
    std::vector<EdgeSpec> edges_;
};

Builder stacked() {
    Builder b;
    b.input("x").hidden("h1").hidden("h2").output("y");
    b.edge("x", "h1").edge("h1", "h1", 1).edge("h1", "h2").edge("h2", "h2", 1).edge("h2", "y");
    return b;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw Error(ErrorCode::InvalidFixtureParams, message);
}

} // namespace

std::string_view family_name(Family family) {
    for (const auto& [f, name] : kFamilyNames) {
        if (f == family) return name;
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    for (const auto& [f, n] : kFamilyNames) {
        if (n == name) return f;
    }
    return std::nullopt;
}

CyclicGraph generate(const FixtureSpec& spec) {
    switch (spec.family) {
    case Family::Sh:
        return Builder().input("x").hidden("h").output("y").edge("x", "h").edge("h", "h", 1).edge("h", "y").build();
    case Family::NegativeSh:
        return Builder().input("x").hidden("h").output("y").edge("x", "h").edge("h", "h", -1).edge("h", "y").build();
    case Family::St:
        return stacked().build();
    case Family::Bu:
        return stacked().edge("h1", "h2", 1).build();
    case Family::Td:
        return stacked().edge("h2", "h1", 1).build();
    case Family::DepthGrid: {
        const std::int64_t r = spec.depth_r;
        const std::int64_t f = spec.depth_f;
        require(r >= 1 && f >= 2, "depth-grid needs d_r >= 1 and d_f >= 2");
        Builder b;
        b.input("x").output("y");
        for (std::int64_t i = 1; i < f; ++i) b.hidden("h" + std::to_string(i));
        for (std::int64_t i = 1; i < r; ++i) b.hidden("c" + std::to_string(i));
        b.edge("x", "h1");
        for (std::int64_t i = 1; i + 1 < f; ++i) b.edge("h" + std::to_string(i), "h" + std::to_string(i + 1));
        b.edge("h" + std::to_string(f - 1), "y");
        std::string previous = "h1";
        for (std::int64_t i = 1; i < r; ++i) {
            const std::string next = "c" + std::to_string(i);
            b.edge(previous, next);
            previous = next;
        }
        b.edge(previous, "h1", 1);
        return b.build();
    }
    case Family::Skip:
        require(spec.k >= 2, "skip needs k >= 2");
        return Builder()
            .input("x")
            .hidden("h")
            .output("y")
            .edge("x", "h")
            .edge("h", "h", 1)
            .edge("h", "h", spec.k)
            .edge("h", "y")
            .build();
    case Family::SkipOnly:
        require(spec.k >= 1, "skip-only needs k >= 1");
        return Builder().input("x").hidden("h").output("y").edge("x", "h").edge("h", "h", spec.k).edge("h", "y").build();
    case Family::StackSkip: {
        require(spec.k >= 2, "stack-skip needs k >= 2");
        require(spec.variant >= 1 && spec.variant <= 4, "stack-skip variant must be 1..4");
        Builder b = stacked();
        if (spec.variant == 2) b.edge("h1", "h2", spec.k);
        if (spec.variant == 3) b.edge("h2", "h1", spec.k);
        if (spec.variant == 4) b.edge("h2", "h2", spec.k);
        return b.build();
    }
    case Family::DoubledSh: {
        Builder b(2);
        for (std::int64_t t : {0, 1}) b.input("x", t).hidden("h", t).output("y", t);
        for (std::int64_t t : {0, 1}) b.edge("x", "h", 0, t, t).edge("h", "y", 0, t, t);
        b.edge("h", "h", 1, 0, 1).edge("h", "h", 1, 1, 0);
        return b.build();
    }
    case Family::Clockwork: {
        Builder b(2);
        b.input("x", 0).hidden("h", 0).hidden("h", 1).output("y", 1);
        b.edge("x", "h", 0, 0, 0).edge("h", "h", 1, 0, 1).edge("h", "h", 1, 1, 0).edge("h", "h", 2, 0, 0);
        b.edge("h", "y", 0, 1, 1);
        return b.build();
    }
    case Family::Ring3: {
        Builder b(3);
        b.input("x", 0).hidden("h", 0).hidden("h", 1).hidden("h", 2).output("y", 2);
        b.edge("x", "h", 0, 0, 0).edge("h", "h", 1, 0, 1).edge("h", "h", 1, 1, 2).edge("h", "h", 1, 2, 0);
        b.edge("h", "h", 3, 1, 1).edge("h", "y", 0, 2, 2);
        return b.build();
    }
    case Family::Bidirectional:
        return Builder()
            .input("x")
            .hidden("h1")
            .hidden("h2")
            .output("y")
            .edge("x", "h1")
            .edge("h1", "h1", 1)
            .edge("h2", "h2", -1)
            .edge("h1", "h2")
            .edge("h2", "y")
            .build();
    }
    throw Error(ErrorCode::InvalidFixtureParams, "unknown fixture family");
}

namespace {

std::int64_t floor_mod(std::int64_t value, std::int64_t modulus) {
    const std::int64_t r = value % modulus;
    return r < 0 ? r + modulus : r;
}

bool has_io_path(const CyclicGraph& g) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        if (g.node(v).kind == NodeKind::Input) {
            seen[v] = true;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        if (g.node(v).kind == NodeKind::Output) return true;
        for (std::size_t e : g.out_edges(v)) {
            const std::size_t w = g.edge(e).to;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return false;
}

struct Draft {
    std::int64_t period = 1;
    std::vector<Node> nodes;
    std::set<std::tuple<std::size_t, std::size_t, std::int64_t>> edges;
};

std::optional<CyclicGraph> draw(std::mt19937_64& rng, const RandomGraphOptions& options) {
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    Draft d;
    d.period = uniform(1, std::max<std::int64_t>(1, options.max_period));
    const auto max_nodes = static_cast<std::int64_t>(std::max<std::size_t>(options.max_nodes, 3));
    const std::int64_t inputs = uniform(1, std::min<std::int64_t>(2, max_nodes - 2));
    const std::int64_t outputs = uniform(1, std::min<std::int64_t>(2, max_nodes - inputs - 1));
    const std::int64_t hidden = uniform(1, max_nodes - inputs - outputs);

    std::vector<std::size_t> ins, hids, outs;
    auto add = [&](NodeKind kind, const std::string& prefix, std::int64_t count, std::vector<std::size_t>& into) {
        for (std::int64_t i = 0; i < count; ++i) {
            into.push_back(d.nodes.size());
            d.nodes.push_back(Node{NodeId{prefix + std::to_string(i), uniform(0, d.period - 1)}, kind});
        }
    };
    add(NodeKind::Input, "x", inputs, ins);
    add(NodeKind::Hidden, "h", hidden, hids);
    add(NodeKind::Output, "y", outputs, outs);

    // Sigma consistent with the period; biased toward forward delays.
    auto sigma_for = [&](std::size_t u, std::size_t v) -> std::optional<std::int64_t> {
        const std::int64_t base = d.nodes[v].id.time_index - d.nodes[u].id.time_index;
        std::vector<std::int64_t> forward, backward;
        for (std::int64_t s = -options.max_abs_sigma; s <= options.max_abs_sigma; ++s) {
            if (floor_mod(s - base, d.period) != 0) continue;
            (s >= 0 ? forward : backward).push_back(s);
        }
        const bool go_back = options.allow_negative_sigma && !backward.empty() && (forward.empty() || chance(0.25));
        const auto& pool = go_back ? backward : forward;
        if (pool.empty()) return std::nullopt;
        return pool[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
    };
    auto connect = [&](std::size_t u, std::size_t v) {
        if (auto s = sigma_for(u, v)) d.edges.emplace(u, v, *s);
    };
    auto pick = [&](const std::vector<std::size_t>& from) {
        return from[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(from.size()) - 1))];
    };

    if (options.connected_core) {
        std::vector<std::size_t> ring = hids;
        std::shuffle(ring.begin(), ring.end(), rng);
        for (std::size_t i = 0; i < ring.size(); ++i) connect(ring[i], ring[(i + 1) % ring.size()]);
        const std::int64_t extra = uniform(0, hidden);
        for (std::int64_t i = 0; i < extra; ++i) connect(pick(hids), pick(hids));
    } else {
        const std::int64_t count = uniform(1, 2 * hidden);
        for (std::int64_t i = 0; i < count; ++i) connect(pick(hids), pick(hids));
    }
    for (std::size_t x : ins) {
        const std::int64_t fan = uniform(1, 2);
        for (std::int64_t i = 0; i < fan; ++i) connect(x, pick(hids));
    }
    for (std::size_t y : outs) {
        const std::int64_t fan = uniform(1, 2);
        for (std::int64_t i = 0; i < fan; ++i) connect(pick(hids), y);
    }
    if (chance(0.1)) connect(pick(ins), pick(outs));
    // Patch hidden nodes left without an in- or out-edge.
    for (std::size_t h : hids) {
        const bool has_in = std::any_of(d.edges.begin(), d.edges.end(), [h](const auto& e) { return std::get<1>(e) == h; });
        const bool has_out = std::any_of(d.edges.begin(), d.edges.end(), [h](const auto& e) { return std::get<0>(e) == h; });
        if (!has_in) connect(pick(hids), h);
        if (!has_out) connect(h, pick(hids));
    }

    std::vector<EdgeSpec> edges;
    for (const auto& [u, v, s] : d.edges) edges.push_back(EdgeSpec{d.nodes[u].id, d.nodes[v].id, s});
    CyclicGraph graph(d.period, d.nodes, std::move(edges));
    if (!validate(graph).valid()) return std::nullopt;
    if (options.require_io_path && !has_io_path(graph)) return std::nullopt;
    if (options.unidirectional) {
        if (orientation(graph) == Orientation::Bidirectional) return std::nullopt;
        if (options.negative_orientation_rate > 0 && chance(options.negative_orientation_rate)) {
            return time_reversed(graph);
        }
    }
    return graph;
}

} // namespace

CyclicGraph random_valid_graph(std::mt19937_64& rng, const RandomGraphOptions& options) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        if (auto graph = draw(rng, options)) return *graph;
    }
    throw Error(ErrorCode::InvalidFixtureParams, "random graph options admit no valid graph in 100000 draws");
}

} // namespace archlab
