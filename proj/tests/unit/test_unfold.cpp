#include "archlab/unfold.hpp"

#include "support.hpp"

#include <set>
#include <tuple>

using namespace archlab;
using namespace archlab::test;

namespace {

std::set<std::string> edge_names(const UnfoldedWindow& w) {
    std::set<std::string> names;
    for (const UnfoldedEdge& e : w.edges()) {
        names.insert(w.label(e.from) + "@" + std::to_string(w.nodes()[e.from].time) + "->" + w.label(e.to) + "@" +
                     std::to_string(w.nodes()[e.to].time));
    }
    return names;
}

} // namespace

TEST_CASE("unfolding sh over three steps") {
    const UnfoldedWindow w = unfold(fixture(Family::Sh), 0, 3);
    CHECK(w.nodes().size() == 9);
    CHECK(w.edges().size() == 8);
    const std::set<std::string> expected{"x@0->h@0", "x@1->h@1", "x@2->h@2", "h@0->y@0", "h@1->y@1",
                                         "h@2->y@2", "h@0->h@1", "h@1->h@2"};
    CHECK(edge_names(w) == expected);
    CHECK(unfolded_node_count(fixture(Family::Sh), 0, 3) == 9);
}

TEST_CASE("a width-one window keeps only zero-delay edges") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const CyclicGraph g = random_valid_graph(rng);
        const UnfoldedWindow w = unfold(g, 4, 5);
        for (const UnfoldedEdge& e : w.edges()) CHECK(g.edge(e.cyclic).sigma == 0);
    }
}

TEST_CASE("td's top-down edge crosses one step") {
    const UnfoldedWindow w = unfold(fixture(Family::Td), 0, 2);
    CHECK(edge_names(w).count("h2@0->h1@1") == 1);
}

TEST_CASE("window node membership follows residues") {
    const CyclicGraph g = fixture(Family::Clockwork);
    const UnfoldedWindow w = unfold(g, -3, 4);
    for (std::size_t v = 0; v < w.nodes().size(); ++v) {
        const auto& n = w.nodes()[v];
        const std::int64_t residue = ((n.time % 2) + 2) % 2;
        CHECK(g.node(n.cyclic).id.time_index == residue);
        CHECK(w.find(n.time, n.cyclic) == v);
    }
    CHECK(w.nodes_at(-3).size() == 2); // h and y live at odd times
    CHECK(w.nodes_at(0).size() == 2);  // x and h at even times
    CHECK(w.nodes().size() == unfolded_node_count(g, -3, 4));
}

TEST_CASE("check_dag on valid and zero-sum graphs") {
    CHECK(check_dag(unfold(fixture(Family::Sh), 0, 10)));
    CHECK(check_dag(unfold(fixture(Family::Td), 0, 50)));
    const CyclicGraph zero(1, {in("x"), hid("A"), hid("B"), out("y")},
                           {edge("x", "A", 0), edge("A", "B", 1), edge("B", "A", -1), edge("B", "y", 0)});
    const UnfoldedWindow w = unfold(zero, 0, 3);
    CHECK_FALSE(check_dag(w));
    CHECK(w.topo_order().size() < w.nodes().size());
}

TEST_CASE("topological order respects edges and ties by time then label") {
    const UnfoldedWindow w = unfold(fixture(Family::St), 0, 3);
    REQUIRE(w.topo_order().size() == w.nodes().size());
    std::vector<std::size_t> position(w.nodes().size());
    for (std::size_t i = 0; i < w.topo_order().size(); ++i) position[w.topo_order()[i]] = i;
    for (const UnfoldedEdge& e : w.edges()) CHECK(position[e.from] < position[e.to]);
    CHECK(w.label(w.topo_order().front()) == "x");
    CHECK(w.nodes()[w.topo_order().front()].time == 0);
}

TEST_CASE("window size cap") {
    UnfoldOptions tiny;
    tiny.max_nodes = 10;
    CHECK(code_of([&] { unfold(fixture(Family::Sh), 0, 4, tiny); }) == ErrorCode::WindowTooLarge);
    CHECK_NOTHROW(unfold(fixture(Family::Sh), 0, 3, tiny));
}

TEST_CASE("shift invariance") {
    CHECK(check_shift_invariance(fixture(Family::Sh), 6));
    CHECK(check_shift_invariance(fixture(Family::Clockwork), 8));
    CHECK(check_shift_invariance(fixture(Family::DoubledSh), 8));

    const CyclicGraph g = fixture(Family::Sh);
    const UnfoldedWindow base = unfold(g, 0, 6);
    const UnfoldedWindow shifted = unfold(g, 1, 7);
    CHECK(shift_isomorphic(base, shifted, 1));
    CHECK_FALSE(shift_isomorphic(base.without_edge(0), shifted, 1));
    CHECK_FALSE(shift_isomorphic(base, shifted, 2));
}

TEST_CASE("acyclic windows and shift invariance on random graphs") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const CyclicGraph g = random_valid_graph(rng);
        const std::int64_t len = 4 * g.period();
        CHECK(check_dag(unfold(g, 0, len)));
        CHECK(check_shift_invariance(g, len));
    }
}

TEST_CASE("a window is the induced subgraph of any wider window") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const CyclicGraph g = random_valid_graph(rng);
        const std::int64_t a = static_cast<std::int64_t>(rng() % 5) - 2;
        const std::int64_t b = a + 1 + static_cast<std::int64_t>(rng() % 6);
        const UnfoldedWindow inner = unfold(g, a, b);
        const UnfoldedWindow outer = unfold(g, a - 1, b + 1);
        std::set<std::tuple<std::int64_t, std::size_t, std::int64_t, std::size_t, std::size_t>> expected;
        for (const UnfoldedEdge& e : outer.edges()) {
            const auto& u = outer.nodes()[e.from];
            const auto& v = outer.nodes()[e.to];
            if (u.time >= a && u.time < b && v.time >= a && v.time < b) {
                expected.emplace(u.time, u.cyclic, v.time, v.cyclic, e.cyclic);
            }
        }
        std::set<std::tuple<std::int64_t, std::size_t, std::int64_t, std::size_t, std::size_t>> actual;
        for (const UnfoldedEdge& e : inner.edges()) {
            const auto& u = inner.nodes()[e.from];
            const auto& v = inner.nodes()[e.to];
            actual.emplace(u.time, u.cyclic, v.time, v.cyclic, e.cyclic);
        }
        CHECK(actual == expected);
        std::size_t inner_nodes = 0;
        for (const UnfoldedNode& n : outer.nodes()) inner_nodes += (n.time >= a && n.time < b) ? 1 : 0;
        CHECK(inner.nodes().size() == inner_nodes);
    }
}

TEST_CASE("input-output reachability") {
    const auto sh = io_reachability(unfold(fixture(Family::Sh), 0, 4));
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) CHECK(sh[a][b] == (b >= a));
    }
    const auto skip = io_reachability(unfold(generate(FixtureSpec::skip_only(3)), 0, 10));
    for (std::size_t a = 0; a < 10; ++a) {
        for (std::size_t b = 0; b < 10; ++b) CHECK(skip[a][b] == (b >= a && (b - a) % 3 == 0));
    }
}
